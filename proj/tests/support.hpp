// support.hpp - seeded generators and brute-force oracles shared by the tests.
// Nothing here calls into the library's own linear algebra.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace testsupport {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
    double normal() { return normal_(eng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

    Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
        Matrix g(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index j = 0; j < cols; ++j) g(i, j) = cplx(normal(), normal()) / std::sqrt(2.0);
        return g;
    }

    Matrix hermitian(Eigen::Index d) {
        const Matrix g = gaussian(d, d);
        return (g + g.adjoint()) / 2.0;
    }

    /// Density matrix of rank `rank` (full rank when 0).
    Matrix density(Eigen::Index d, Eigen::Index rank = 0) {
        const Matrix g = gaussian(d, rank > 0 ? rank : d);
        Matrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        return (rho + rho.adjoint()) / 2.0;
    }

    Vector ket(Eigen::Index d) {
        Vector v = gaussian(d, 1).col(0);
        return v / v.norm();
    }

    Matrix unitary(Eigen::Index d) {
        const Matrix g = gaussian(d, d);
        Eigen::HouseholderQR<Matrix> qr(g);
        Matrix q = qr.householderQ();
        const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index j = 0; j < d; ++j) {
            const double a = std::abs(r(j, j));
            if (a > 0) q.col(j) *= r(j, j) / a;
        }
        return q;
    }

private:
    std::mt19937_64 eng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Kronecker product by an explicit four-index loop.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    Matrix out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            for (Eigen::Index k = 0; k < rb; ++k)
                for (Eigen::Index l = 0; l < cb; ++l) out(i * rb + k, j * cb + l) = a(i, j) * b(k, l);
    return out;
}

/// Reduced state of a two-factor dA x dB matrix by direct index summation.
inline Matrix trace_out_second(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    Matrix out = Matrix::Zero(dA, dA);
    for (Eigen::Index i = 0; i < dA; ++i)
        for (Eigen::Index j = 0; j < dA; ++j)
            for (Eigen::Index k = 0; k < dB; ++k) out(i, j) += rho(i * dB + k, j * dB + k);
    return out;
}

inline Matrix trace_out_first(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    Matrix out = Matrix::Zero(dB, dB);
    for (Eigen::Index k = 0; k < dB; ++k)
        for (Eigen::Index l = 0; l < dB; ++l)
            for (Eigen::Index i = 0; i < dA; ++i) out(k, l) += rho(i * dB + k, i * dB + l);
    return out;
}

inline double shannon(const std::vector<double>& p) {
    double s = 0.0;
    for (double x : p)
        if (x > 0) s -= x * std::log(x);
    return s;
}

inline double entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> p;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) p.push_back(std::max(0.0, es.eigenvalues()(i)));
    return shannon(p);
}

inline double mutual_information(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    return entropy(trace_out_second(rho, dA, dB)) + entropy(trace_out_first(rho, dA, dB)) - entropy(rho);
}

/// exp(-i h t) by Taylor series with scaling and squaring.
inline Matrix expm_taylor(const Matrix& h, double t) {
    const Matrix a = cplx(0.0, -t) * h;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::pow(2.0, squarings) > 0.25) ++squarings;
    const Matrix b = a / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(h.rows(), h.cols());
    Matrix sum = term;
    for (int k = 1; k < 30; ++k) {
        term = term * b / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

/// Boltzmann weights exp(-beta e) / Z for a list of energies.
inline std::vector<double> boltzmann(const std::vector<double>& e, double beta) {
    std::vector<double> w;
    double z = 0.0;
    for (double x : e) {
        w.push_back(std::exp(-beta * x));
        z += w.back();
    }
    for (double& x : w) x /= z;
    return w;
}

}  // namespace testsupport

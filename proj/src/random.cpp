#include "landauer/random.hpp"

#include <Eigen/QR>

#include <cmath>

namespace landauer::rnd {

using qcore::cplx;
using qcore::Matrix;

Matrix ginibre(Engine& eng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> g(0.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const double re = g(eng);
            const double im = g(eng);
            m(i, j) = cplx(re, im);
        }
    return m;
}

qcore::QuantumState random_state(Engine& eng, const qcore::FactorShape& shape, std::size_t rank) {
    const std::size_t d = shape.total();
    const Matrix g = ginibre(eng, d, rank == 0 ? d : rank);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return qcore::QuantumState(qcore::hermitian_part(rho), shape);
}

qcore::QuantumState random_pure(Engine& eng, const qcore::FactorShape& shape) {
    return random_state(eng, shape, 1);
}

qcore::UnitaryOp random_unitary(Engine& eng, const qcore::FactorShape& shape) {
    const std::size_t d = shape.total();
    const Matrix g = ginibre(eng, d, d);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(g.rows(), g.cols());
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const cplx diag = r(j, j);
        const double a = std::abs(diag);
        if (a > 0.0) q.col(j) *= diag / a;
    }
    return qcore::UnitaryOp(q, shape);
}

qcore::Observable random_hamiltonian(Engine& eng, const qcore::FactorShape& shape, qcore::Unit unit) {
    const std::size_t d = shape.total();
    const Matrix g = ginibre(eng, d, d);
    return qcore::Observable(0.5 * (g + g.adjoint()), shape, unit);
}

double uniform(Engine& eng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(eng);
}

}  // namespace landauer::rnd

#include "landauer/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace landauer::ops {

namespace {
Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
}  // namespace

Matrix identity(std::size_t d) { return Matrix::Identity(idx(d), idx(d)); }

Matrix sigma_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0,
         1.0, 0.0;
    return m;
}

Matrix sigma_y() {
    Matrix m(2, 2);
    m << 0.0, qcore::cplx(0.0, -1.0),
         qcore::cplx(0.0, 1.0), 0.0;
    return m;
}

Matrix sigma_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0,
         0.0, -1.0;
    return m;
}

Matrix sigma_minus() { return outer(2, 0, 1); }
Matrix sigma_plus() { return outer(2, 1, 0); }

Matrix qutrit_x() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = m(1, 0) = 1.0;
    m(1, 2) = m(2, 1) = 1.0;
    return m;
}

Matrix qutrit_z() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(2, 2) = -1.0;
    return m;
}

// a|n> = sqrt(n)|n-1>
Matrix annihilation(std::size_t n) {
    if (n == 0) throw std::invalid_argument("annihilation: zero levels");
    Matrix m = Matrix::Zero(idx(n), idx(n));
    for (std::size_t k = 1; k < n; ++k) m(idx(k - 1), idx(k)) = std::sqrt(static_cast<double>(k));
    return m;
}

Matrix creation(std::size_t n) { return annihilation(n).adjoint(); }

Matrix number(std::size_t n) {
    Matrix m = Matrix::Zero(idx(n), idx(n));
    for (std::size_t k = 0; k < n; ++k) m(idx(k), idx(k)) = static_cast<double>(k);
    return m;
}

Matrix outer(std::size_t d, std::size_t i, std::size_t j) {
    if (i >= d || j >= d) throw std::out_of_range("outer: index out of range");
    Matrix m = Matrix::Zero(idx(d), idx(d));
    m(idx(i), idx(j)) = 1.0;
    return m;
}

Vector basis_ket(std::size_t d, std::size_t index) {
    if (index >= d) throw std::out_of_range("basis_ket: index out of range");
    Vector v = Vector::Zero(idx(d));
    v(idx(index)) = 1.0;
    return v;
}

Vector ghz(std::size_t n_qubits) {
    const std::size_t d = std::size_t{1} << n_qubits;
    Vector v = Vector::Zero(idx(d));
    v(0) = v(idx(d - 1)) = 1.0 / std::sqrt(2.0);
    return v;
}

Vector w_state(std::size_t n_qubits) {
    const std::size_t d = std::size_t{1} << n_qubits;
    Vector v = Vector::Zero(idx(d));
    const double amp = 1.0 / std::sqrt(static_cast<double>(n_qubits));
    for (std::size_t q = 0; q < n_qubits; ++q) v(idx(std::size_t{1} << q)) = amp;
    return v;
}

}  // namespace landauer::ops

#include "landauer/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace landauer::qcore {

namespace {

void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
}

void require_shape(const Matrix& m, const FactorShape& shape, const char* what) {
    if (static_cast<std::size_t>(m.rows()) != shape.total())
        throw std::invalid_argument(std::string(what) + ": matrix dimension does not match factor shape");
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    k = Eigen::kroneckerProduct(a, b);
    return k;
}

}  // namespace

// -- FactorShape ------------------------------------------------------------

FactorShape::FactorShape(std::vector<std::size_t> d, std::vector<std::string> l)
    : dims(std::move(d)), labels(std::move(l)) {
    if (dims.empty()) throw std::invalid_argument("FactorShape: no factors");
    for (auto x : dims)
        if (x == 0) throw std::invalid_argument("FactorShape: zero dimension");
    if (!labels.empty() && labels.size() != dims.size())
        throw std::invalid_argument("FactorShape: label count mismatch");
}

FactorShape FactorShape::single(std::size_t d, std::string label) {
    if (label.empty()) return FactorShape({d});
    return FactorShape({d}, {std::move(label)});
}

std::size_t FactorShape::total() const {
    return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

FactorShape FactorShape::concat(const FactorShape& other) const {
    std::vector<std::size_t> d = dims;
    d.insert(d.end(), other.dims.begin(), other.dims.end());
    std::vector<std::string> l;
    if (!labels.empty() || !other.labels.empty()) {
        for (std::size_t i = 0; i < dims.size(); ++i) l.push_back(labels.empty() ? std::string{} : labels[i]);
        for (std::size_t i = 0; i < other.dims.size(); ++i)
            l.push_back(other.labels.empty() ? std::string{} : other.labels[i]);
    }
    return FactorShape(std::move(d), std::move(l));
}

FactorShape FactorShape::select(const std::vector<std::size_t>& keep) const {
    std::vector<std::size_t> d;
    std::vector<std::string> l;
    for (auto k : keep) {
        if (k >= dims.size()) throw std::out_of_range("FactorShape::select: invalid factor index");
        d.push_back(dims[k]);
        if (!labels.empty()) l.push_back(labels[k]);
    }
    return FactorShape(std::move(d), std::move(l));
}

// -- predicates -------------------------------------------------------------

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return max_abs(m - m.adjoint()) <= tol * std::max(1.0, max_abs(m));
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

// -- QuantumState -----------------------------------------------------------

QuantumState::QuantumState(Matrix m, FactorShape shape, trusted_tag)
    : m_(std::move(m)), shape_(std::move(shape)) {}

QuantumState::QuantumState(Matrix m, FactorShape shape) : m_(std::move(m)), shape_(std::move(shape)) {
    require_square(m_, "QuantumState");
    require_shape(m_, shape_, "QuantumState");
    if (!is_hermitian(m_)) throw std::invalid_argument("QuantumState: matrix is not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > tol_trace || std::abs(m_.trace().imag()) > tol_trace)
        throw std::invalid_argument("QuantumState: trace is not 1");
    m_ = hermitian_part(m_);
    Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol_psd)
        throw std::invalid_argument("QuantumState: matrix is not positive semidefinite");
}

QuantumState::QuantumState(Matrix m) : QuantumState(m, FactorShape::single(static_cast<std::size_t>(m.rows()))) {}

QuantumState QuantumState::trusted(Matrix m, FactorShape shape) {
    return QuantumState(std::move(m), std::move(shape), trusted_tag{});
}

QuantumState QuantumState::pure(const Vector& psi, FactorShape shape) {
    const double n = psi.norm();
    if (n == 0.0) throw std::invalid_argument("QuantumState::pure: zero vector");
    Vector v = psi / n;
    return QuantumState(v * v.adjoint(), std::move(shape));
}

QuantumState QuantumState::maximally_mixed(FactorShape shape) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return QuantumState(Matrix::Identity(d, d) / static_cast<double>(d), std::move(shape), trusted_tag{});
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw std::out_of_range("QuantumState::basis: index out of range");
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
    return QuantumState(std::move(m), FactorShape::single(dim), trusted_tag{});
}

QuantumState QuantumState::mix(const QuantumState& a, const QuantumState& b, double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("QuantumState::mix: weight outside [0,1]");
    if (a.dim() != b.dim()) throw std::invalid_argument("QuantumState::mix: dimension mismatch");
    return QuantumState((1.0 - p) * a.matrix() + p * b.matrix(), a.shape(), trusted_tag{});
}

// -- Observable -------------------------------------------------------------

Observable::Observable(Matrix m, FactorShape shape, Unit unit)
    : m_(std::move(m)), shape_(std::move(shape)), unit_(unit) {
    require_square(m_, "Observable");
    require_shape(m_, shape_, "Observable");
    if (!is_hermitian(m_)) throw std::invalid_argument("Observable: matrix is not Hermitian");
    m_ = hermitian_part(m_);
}

Observable::Observable(Matrix m, Unit unit)
    : Observable(m, FactorShape::single(static_cast<std::size_t>(m.rows())), unit) {}

Observable Observable::zero(FactorShape shape, Unit unit) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return Observable(Matrix::Zero(d, d), std::move(shape), unit);
}

Observable Observable::identity(FactorShape shape, Unit unit) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return Observable(Matrix::Identity(d, d), std::move(shape), unit);
}

double Observable::expectation(const QuantumState& rho) const {
    if (rho.dim() != dim()) throw std::invalid_argument("Observable::expectation: dimension mismatch");
    // tr(rho O) = sum_ij rho_ij O_ji
    return (rho.matrix().transpose().cwiseProduct(m_)).sum().real();
}

Observable Observable::operator+(const Observable& o) const {
    if (o.dim() != dim()) throw std::invalid_argument("Observable::operator+: dimension mismatch");
    return Observable(m_ + o.m_, shape_, unit_);
}

Observable Observable::operator*(double s) const { return Observable(m_ * s, shape_, unit_); }

// -- UnitaryOp --------------------------------------------------------------

UnitaryOp::UnitaryOp(Matrix m, FactorShape shape, trusted_tag) : m_(std::move(m)), shape_(std::move(shape)) {}

UnitaryOp::UnitaryOp(Matrix m, FactorShape shape) : m_(std::move(m)), shape_(std::move(shape)) {
    require_square(m_, "UnitaryOp");
    require_shape(m_, shape_, "UnitaryOp");
    const Matrix defect = m_ * m_.adjoint() - Matrix::Identity(m_.rows(), m_.cols());
    if (max_abs(defect) > tol_unitary) throw std::invalid_argument("UnitaryOp: matrix is not unitary");
}

UnitaryOp UnitaryOp::identity(FactorShape shape) {
    const auto d = static_cast<Eigen::Index>(shape.total());
    return UnitaryOp(Matrix::Identity(d, d), std::move(shape), trusted_tag{});
}

UnitaryOp UnitaryOp::operator*(const UnitaryOp& o) const {
    if (o.m_.rows() != m_.rows()) throw std::invalid_argument("UnitaryOp::operator*: dimension mismatch");
    return UnitaryOp(m_ * o.m_, shape_, trusted_tag{});
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(m_.adjoint(), shape_, trusted_tag{}); }

// -- operations -------------------------------------------------------------

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
    return QuantumState::trusted(kron(a.matrix(), b.matrix()), a.shape().concat(b.shape()));
}

Observable tensor(const Observable& a, const Observable& b) {
    const Unit unit = (a.unit() == Unit::energy || b.unit() == Unit::energy) ? Unit::energy : Unit::dimensionless;
    return Observable(kron(a.matrix(), b.matrix()), a.shape().concat(b.shape()), unit);
}

UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b) {
    return UnitaryOp(kron(a.matrix(), b.matrix()), a.shape().concat(b.shape()), UnitaryOp::trusted_tag{});
}

std::vector<std::size_t> complement(const std::vector<std::size_t>& keep, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.push_back(i);
    return out;
}

QuantumState partial_trace(const QuantumState& rho, std::vector<std::size_t> keep) {
    const FactorShape& shape = rho.shape();
    const std::size_t nf = shape.factors();
    if (keep.empty()) throw std::invalid_argument("partial_trace: nothing to keep");
    std::sort(keep.begin(), keep.end());
    if (std::adjacent_find(keep.begin(), keep.end()) != keep.end())
        throw std::invalid_argument("partial_trace: repeated factor index");
    if (keep.back() >= nf) throw std::out_of_range("partial_trace: invalid factor index");

    const std::vector<std::size_t> traced = complement(keep, nf);
    const std::size_t total = shape.total();

    // Split each full index into (kept, traced) multi-indices.
    std::vector<std::size_t> kept_idx(total), traced_idx(total);
    std::vector<std::size_t> digits(nf);
    for (std::size_t n = 0; n < total; ++n) {
        std::size_t rem = n;
        for (std::size_t f = nf; f-- > 0;) {
            digits[f] = rem % shape.dims[f];
            rem /= shape.dims[f];
        }
        std::size_t k = 0, t = 0;
        for (auto f : keep) k = k * shape.dims[f] + digits[f];
        for (auto f : traced) t = t * shape.dims[f] + digits[f];
        kept_idx[n] = k;
        traced_idx[n] = t;
    }

    FactorShape out_shape = shape.select(keep);
    const std::size_t dk = out_shape.total();
    const std::size_t dt = total / dk;
    std::vector<std::vector<std::size_t>> by_traced(dt);
    for (std::size_t n = 0; n < total; ++n) by_traced[traced_idx[n]].push_back(n);

    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
    const Matrix& m = rho.matrix();
    for (const auto& group : by_traced)
        for (auto a : group)
            for (auto b : group)
                out(static_cast<Eigen::Index>(kept_idx[a]), static_cast<Eigen::Index>(kept_idx[b])) +=
                    m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    return QuantumState::trusted(hermitian_part(out), std::move(out_shape));
}

EigenDecomposition eigh(const Matrix& m) {
    require_square(m, "eigh");
    if (!is_hermitian(m)) throw std::invalid_argument("eigh: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m));
    if (es.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

EigenDecomposition eigh(const Observable& o) { return eigh(o.matrix()); }
EigenDecomposition eigh(const QuantumState& rho) { return eigh(rho.matrix()); }

UnitaryOp unitary_from_hamiltonian(const Observable& h, double t) { return Propagator(h).at(t); }

QuantumState evolve(const QuantumState& rho, const UnitaryOp& u) {
    if (rho.dim() != static_cast<std::size_t>(u.matrix().rows()))
        throw std::invalid_argument("evolve: dimension mismatch");
    return QuantumState::trusted(hermitian_part(u.matrix() * rho.matrix() * u.matrix().adjoint()), rho.shape());
}

Propagator::Propagator(const Observable& h) : ed_(eigh(h)), shape_(h.shape()) {}

UnitaryOp Propagator::at(double t) const {
    Vector phases(ed_.values.size());
    for (Eigen::Index i = 0; i < phases.size(); ++i) phases(i) = std::polar(1.0, -ed_.values(i) * t);
    return UnitaryOp(ed_.vectors * phases.asDiagonal() * ed_.vectors.adjoint(), shape_, UnitaryOp::trusted_tag{});
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix embed(const Matrix& op, const FactorShape& shape, std::size_t site) {
    if (site >= shape.factors()) throw std::out_of_range("embed: invalid site");
    if (static_cast<std::size_t>(op.rows()) != shape.dims[site])
        throw std::invalid_argument("embed: operator dimension does not match factor");
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t f = 0; f < shape.factors(); ++f) {
        const auto d = static_cast<Eigen::Index>(shape.dims[f]);
        out = kron(out, f == site ? op : Matrix::Identity(d, d));
    }
    return out;
}

}  // namespace landauer::qcore

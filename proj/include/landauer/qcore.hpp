// qcore.hpp - dense complex linear algebra for composite finite-dimensional
// quantum systems: validated states/observables/unitaries, Kronecker
// composition, partial trace, Hermitian eigendecomposition and propagators.
//
// Units: hbar = k_B = 1 everywhere.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace landauer::qcore {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double tol_herm = 1e-10;
inline constexpr double tol_trace = 1e-10;
inline constexpr double tol_psd = 1e-9;
inline constexpr double tol_unitary = 1e-9;
inline constexpr double tol_supp = 1e-10;

/// Local Hilbert-space dimensions of a composite system, first factor most
/// significant in the Kronecker ordering.
struct FactorShape {
    std::vector<std::size_t> dims;
    std::vector<std::string> labels;  // empty or one per factor

    FactorShape() = default;
    explicit FactorShape(std::vector<std::size_t> d, std::vector<std::string> l = {});

    static FactorShape single(std::size_t d, std::string label = {});

    [[nodiscard]] std::size_t total() const;
    [[nodiscard]] std::size_t factors() const { return dims.size(); }
    [[nodiscard]] FactorShape concat(const FactorShape& other) const;
    [[nodiscard]] FactorShape select(const std::vector<std::size_t>& keep) const;

    friend bool operator==(const FactorShape& a, const FactorShape& b) { return a.dims == b.dims; }
};

enum class Unit { energy, dimensionless };

class QuantumState {
public:
    /// Validates Hermiticity, unit trace and positivity; throws std::invalid_argument.
    QuantumState(Matrix m, FactorShape shape);
    explicit QuantumState(Matrix m);

    /// Skips validation. Only for results of operations that preserve validity.
    static QuantumState trusted(Matrix m, FactorShape shape);

    static QuantumState pure(const Vector& psi, FactorShape shape);
    static QuantumState maximally_mixed(FactorShape shape);
    static QuantumState basis(std::size_t dim, std::size_t index);

    [[nodiscard]] const Matrix& matrix() const { return m_; }
    [[nodiscard]] const FactorShape& shape() const { return shape_; }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

    /// Convex combination (1-p)*a + p*b.
    static QuantumState mix(const QuantumState& a, const QuantumState& b, double p);

private:
    struct trusted_tag {};
    QuantumState(Matrix m, FactorShape shape, trusted_tag);

    Matrix m_;
    FactorShape shape_;
};

class Observable {
public:
    Observable(Matrix m, FactorShape shape, Unit unit = Unit::energy);
    explicit Observable(Matrix m, Unit unit = Unit::energy);

    static Observable zero(FactorShape shape, Unit unit = Unit::energy);
    static Observable identity(FactorShape shape, Unit unit = Unit::dimensionless);

    [[nodiscard]] const Matrix& matrix() const { return m_; }
    [[nodiscard]] const FactorShape& shape() const { return shape_; }
    [[nodiscard]] Unit unit() const { return unit_; }
    [[nodiscard]] std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

    /// Expectation value tr(rho * O), real part.
    [[nodiscard]] double expectation(const QuantumState& rho) const;

    Observable operator+(const Observable& o) const;
    Observable operator*(double s) const;

private:
    Matrix m_;
    FactorShape shape_;
    Unit unit_;
};

class UnitaryOp {
public:
    UnitaryOp(Matrix m, FactorShape shape);
    static UnitaryOp identity(FactorShape shape);

    [[nodiscard]] const Matrix& matrix() const { return m_; }
    [[nodiscard]] const FactorShape& shape() const { return shape_; }
    [[nodiscard]] UnitaryOp operator*(const UnitaryOp& o) const;
    [[nodiscard]] UnitaryOp adjoint() const;

private:
    struct trusted_tag {};
    UnitaryOp(Matrix m, FactorShape shape, trusted_tag);
    friend class Propagator;
    friend UnitaryOp tensor(const UnitaryOp&, const UnitaryOp&);

    Matrix m_;
    FactorShape shape_;
};

struct EigenDecomposition {
    RealVector values;  // ascending
    Matrix vectors;     // columns are eigenvectors
};

// -- predicates -------------------------------------------------------------

[[nodiscard]] double max_abs(const Matrix& m);
[[nodiscard]] bool is_hermitian(const Matrix& m, double tol = tol_herm);
[[nodiscard]] Matrix hermitian_part(const Matrix& m);

// -- operations -------------------------------------------------------------

QuantumState tensor(const QuantumState& a, const QuantumState& b);
Observable tensor(const Observable& a, const Observable& b);
UnitaryOp tensor(const UnitaryOp& a, const UnitaryOp& b);

/// Reduced state on the factors listed in `keep` (original factor order is kept).
QuantumState partial_trace(const QuantumState& rho, std::vector<std::size_t> keep);

/// Complementary factor indices of `keep` within `n` factors.
std::vector<std::size_t> complement(const std::vector<std::size_t>& keep, std::size_t n);

EigenDecomposition eigh(const Matrix& m);
EigenDecomposition eigh(const Observable& o);
EigenDecomposition eigh(const QuantumState& rho);

/// f(m) for Hermitian m through its spectrum.
template <typename F>
Matrix hermitian_function(const EigenDecomposition& ed, F&& f) {
    RealVector fv(ed.values.size());
    for (Eigen::Index i = 0; i < ed.values.size(); ++i) fv(i) = f(ed.values(i));
    return ed.vectors * fv.cast<cplx>().asDiagonal() * ed.vectors.adjoint();
}

/// exp(-i h t) via eigh.
UnitaryOp unitary_from_hamiltonian(const Observable& h, double t);

QuantumState evolve(const QuantumState& rho, const UnitaryOp& u);

/// Caches the spectrum of a Hamiltonian so that U(t) = exp(-i h t) for many
/// times costs one diagonal phase and two products each.
class Propagator {
public:
    explicit Propagator(const Observable& h);
    [[nodiscard]] UnitaryOp at(double t) const;
    [[nodiscard]] const EigenDecomposition& spectrum() const { return ed_; }

private:
    EigenDecomposition ed_;
    FactorShape shape_;
};

/// [a, b] = ab - ba.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Embeds a single-factor operator at position `site` of `shape`.
Matrix embed(const Matrix& op, const FactorShape& shape, std::size_t site);

}  // namespace landauer::qcore

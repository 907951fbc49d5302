// bounds.hpp - Landauer-type bookkeeping for a system S coupled to an
// environment E through a joint unitary.
//
// The central object is BoundLedger. It evaluates, for one initial state and
// one unitary, the entropy production
//
//     sigma_old = dS_S + sum_k mu_k dC_E^k
//
// together with the relative-entropy and mutual-information budget it must
// equal:
//
//     sigma_old = D(rho_E^f||Gamma) + I(rho_SE^f) - D(rho_E^i||Gamma) - I(rho_SE^i).
//
// That equality holds for any state, unitary and finite ensemble Gamma. Every
// ledger checks it on construction and throws IdentityViolation when the
// residual exceeds identity_tol. The modified bound sigma_mod = sigma_old +
// sigma0_initial is then the nonnegative quantity D_final + I_final.
//
// FiniteTimeLedger covers a product initial state rho_S(0) (x) rho_E(0)
// evolving under exp(-i H_SE tau). The Gibbs state of the system at the
// environment's estimated inverse temperature is pushed through the same
// reduced map, and the correction K(tau) = tr[rho_S(tau)(ln gamma(tau) -
// ln gamma(0))] restores nonnegativity through data processing.

#pragma once

#include "landauer/qcore.hpp"
#include "landauer/thermo.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace landauer::bounds {

using qcore::Matrix;
using qcore::Observable;
using qcore::QuantumState;
using qcore::UnitaryOp;
using thermo::Bipartition;
using thermo::ReferenceEnsemble;

inline constexpr double identity_tol = 1e-8;
inline constexpr double bound_tol = 1e-9;

class IdentityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BoundLedger {
    double beta_tilde = 0.0;           // potential of the energy term (0 if none)
    double delta_S = 0.0;              // S(rho_S^f) - S(rho_S^i)
    thermo::FlowRecord flows;
    double beta_dQ_E = 0.0;            // beta~ * dQ_E
    double weighted_charge_sum = 0.0;  // sum over non-energy terms of mu_k dC^k
    double D_initial = 0.0;
    double D_final = 0.0;
    double I_initial = 0.0;
    double I_final = 0.0;
    double sigma0_initial = 0.0;
    double sigma0_final = 0.0;
    double sigma_old = 0.0;
    double sigma_mod = 0.0;
    double identity_residual = 0.0;
    double work = 0.0;               // (-dS + sigma0_f - sigma0_i)/beta~, NaN without a finite energy potential
    double free_energy_delta = 0.0;  // beta~ dF_E
    double mi_delta = 0.0;           // I_final - I_initial
    bool heat_only = false;
};

/// Precomputes everything that depends only on the initial state, so that
/// ledgers for many unitaries share the work.
class LedgerBuilder {
public:
    LedgerBuilder(QuantumState rho_initial, ReferenceEnsemble ens, Bipartition system);

    [[nodiscard]] BoundLedger at(const UnitaryOp& u) const;
    [[nodiscard]] BoundLedger from_final(const QuantumState& rho_final) const;

    [[nodiscard]] const QuantumState& initial() const { return rho_i_; }
    [[nodiscard]] const QuantumState& reference() const { return gamma_; }
    [[nodiscard]] const QuantumState& env_initial() const { return env_i_; }

private:
    QuantumState rho_i_;
    ReferenceEnsemble ens_;
    Bipartition system_;
    std::vector<std::size_t> env_factors_;
    QuantumState gamma_;
    QuantumState env_i_;
    double s_sys_i_ = 0.0;
    double d_i_ = 0.0;
    double i_i_ = 0.0;
};

BoundLedger ledger(const QuantumState& rho_initial, const UnitaryOp& u, const ReferenceEnsemble& ens,
                   const Bipartition& system);

/// Throws IdentityViolation unless |identity_residual| <= identity_tol.
void verify_identity(const BoundLedger& l);

/// Slack of the upper bound beta~ dQ_E <= -dS + sigma0_final. Heat-only ledgers.
double upper_bound_check(const BoundLedger& l);

struct AthermalProductForm {
    double free_energy_term;  // beta~ dF_E
    double mi_final;
    double total;
};

struct CorrelatedThermalForm {
    double relent_final;
    double mi_delta;
    double total;
};

/// Requires I_initial = 0 within bound_tol.
AthermalProductForm special_case_athermal_product(const BoundLedger& l);
/// Requires D_initial = 0 within bound_tol.
CorrelatedThermalForm special_case_correlated_thermal(const BoundLedger& l);

/// Product initial state whose environment marginal is exactly gamma_E^beta
/// while S and E are correlated: sum_jk l_j l_k |psi_j><psi_k| (x) |e_j><e_k|,
/// l_j^2 = <e_j|gamma|e_j>, with psi_j the computational basis of S.
QuantumState correlated_thermal_state(const Observable& h_E, double beta, std::size_t dim_S);

// -- finite time --------------------------------------------------------------

struct FiniteTimeLedger {
    double tau = 0.0;
    double delta_S = 0.0;
    double delta_Q_S = 0.0;    // tr[(rho_S(tau) - rho_S(0)) H_S], positive into the system
    double delta_Q_E = 0.0;    // positive into the environment
    double delta_Q_int = 0.0;  // [tr(rho_SE H_int)]_0^tau
    double K_term = 0.0;       // NaN when !K_defined
    bool K_defined = true;
    double sigma_tau = 0.0;            // dS - beta~ dQ_S + K
    double sigma_tau_environment = 0.0;  // dS + beta~ dQ_E + beta~ dQ_int + K
    double sigma_tau_conserving = 0.0;   // dS + beta~ dQ_E + K (meaningful when energy_conserving)
    bool energy_conserving = false;
    double relent_drop = 0.0;  // D(rho_S(0)||gamma(0)) - D(rho_S(tau)||gamma(tau))
    double log_gibbs_heat = 0.0;  // tr[(rho_S(tau) - rho_S(0)) ln gamma(0)], equals -beta~ dQ_S
    double clipped_mass = 0.0;
};

class FiniteTimeProblem {
public:
    FiniteTimeProblem(QuantumState rho_S0, QuantumState rho_E0, Observable h_S, Observable h_E, Observable h_int,
                      double beta_tilde);

    [[nodiscard]] FiniteTimeLedger at(double tau) const;
    [[nodiscard]] QuantumState joint_at(double tau) const;
    [[nodiscard]] const Observable& total_hamiltonian() const { return h_total_; }
    [[nodiscard]] bool energy_conserving() const { return conserving_; }
    [[nodiscard]] const QuantumState& initial_joint() const { return rho0_; }

private:
    QuantumState rho_S0_, rho_E0_;
    Observable h_S_, h_E_, h_int_, h_total_;
    double beta_;
    QuantumState rho0_, gamma_joint0_;
    QuantumState gamma0_;
    Matrix log_gamma0_;
    qcore::Propagator prop_;
    bool conserving_;
    double d0_;
    double e_int0_;
};

FiniteTimeLedger finite_time_ledger(const QuantumState& rho_S0, const QuantumState& rho_E0, const Observable& h_S,
                                    const Observable& h_E, const Observable& h_int, double tau, double beta_tilde);

/// True when ||[H_int, H_S (x) 1 + 1 (x) H_E]||_max is negligible.
bool conserves_free_energy(const Observable& h_S, const Observable& h_E, const Observable& h_int);

// -- weak coupling --------------------------------------------------------------

/// First-order expansion in epsilon of exp(-i(H_free + eps H_int)t) through the
/// n-step product formula.
struct TrotterExpansion {
    double epsilon = 0.0;
    double t = 0.0;
    int n = 1;
    Matrix free;         // U_f(t)
    Matrix first_order;  // -(i t/n) sum_k U_f((k+1)t/n) H_int U_f((n-k-1)t/n)
    Matrix x_n;          // sum_k U_f(k t/n) H_int U_f((n-k-1)t/n)

    [[nodiscard]] Matrix approx() const { return free + epsilon * first_order; }
    /// (i t/n)(U_f rho X_n^dag - X_n rho U_f^dag)
    [[nodiscard]] Matrix chi(const QuantumState& rho0) const;
    /// U_f rho U_f^dag + eps chi(rho); not positive in general.
    [[nodiscard]] Matrix evolved_state(const QuantumState& rho0) const;
};

inline constexpr int default_trotter_steps = 400;

TrotterExpansion trotter_first_order(const Observable& h_free, const Observable& h_int, double epsilon, double t,
                                     int n = default_trotter_steps);

struct WeakCouplingResult {
    double value = 0.0;  // dS + beta~ dQ_E + beta~ eps dQ_int^f + K
    double delta_S = 0.0;
    double delta_Q_E = 0.0;
    double delta_Q_int_free = 0.0;  // [tr(rho_S^f(t) (x) rho_E^f(t) H_int)]_0^tau
    double K_term = 0.0;
    bool K_defined = true;
    double coupling_strength = 0.0;   // eps ||H_int|| tau
    double first_order_error = 0.0;   // ||rho_exact(tau) - (free + eps chi_n)||_max
    double n_convergence = 0.0;       // eps ||chi_n - chi_2n||_max
};

WeakCouplingResult weak_coupling_bound(const QuantumState& rho_S0, const QuantumState& rho_E0, const Observable& h_S,
                                       const Observable& h_E, const Observable& h_int, double epsilon, double tau,
                                       int n, double beta_tilde);

}  // namespace landauer::bounds

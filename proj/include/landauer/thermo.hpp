// thermo.hpp - entropies, divergences, Gibbs ensembles and flows.
//
// Natural logarithms throughout; entropies are dimensionless.

#pragma once

#include "landauer/qcore.hpp"

#include <string>
#include <vector>

namespace landauer::thermo {

using qcore::Observable;
using qcore::QuantumState;

/// One (observable, potential) pair of a generalized Gibbs ensemble.
struct EnsembleTerm {
    Observable observable;
    double potential;
    std::string name;
};

/// exp(-sum_k mu_k C^k) / Z. The energy term, if any, is the first term whose
/// observable carries Unit::energy.
class ReferenceEnsemble {
public:
    explicit ReferenceEnsemble(std::vector<EnsembleTerm> terms);

    static ReferenceEnsemble heat_only(const Observable& h, double beta);

    [[nodiscard]] const std::vector<EnsembleTerm>& terms() const { return terms_; }
    [[nodiscard]] const qcore::FactorShape& shape() const { return terms_.front().observable.shape(); }
    [[nodiscard]] std::size_t dim() const { return terms_.front().observable.dim(); }
    /// Index of the energy term or -1.
    [[nodiscard]] int energy_index() const { return energy_index_; }
    [[nodiscard]] bool heat_only() const { return energy_index_ >= 0 && terms_.size() == 1; }
    [[nodiscard]] double energy_potential() const;

private:
    std::vector<EnsembleTerm> terms_;
    int energy_index_ = -1;
};

/// Change of every ensemble observable in the environment.
struct FlowRecord {
    double delta_Q = 0.0;                // energy flow into the environment
    std::vector<double> delta_charges;   // non-energy terms, in ensemble order
    std::vector<double> per_term;        // every term, in ensemble order
};

double von_neumann_entropy(const QuantumState& rho);

/// D(rho||sigma) = tr(rho ln rho) - tr(rho ln sigma). Infinite when more than
/// tol_supp of the weight of rho sits on the numerical kernel of sigma
/// (eigenvalues at roundoff level).
double relative_entropy(const QuantumState& rho, const QuantumState& sigma);

/// D(rho||gamma^beta) through ln gamma = -beta h - ln Z, without
/// diagonalizing gamma. Stays accurate when beta times the spectral span is
/// large enough that the Gibbs tail falls below double precision.
double relative_entropy_to_gibbs(const QuantumState& rho, const Observable& h, double beta);

/// A bipartition is given by the factor indices of its first part; the
/// second part is the complement.
struct Bipartition {
    std::vector<std::size_t> first;
};

double mutual_information(const QuantumState& rho, const Bipartition& cut);

QuantumState gibbs_state(const Observable& h, double beta);

/// ln tr exp(-beta h), evaluated with the max-shift.
double log_partition(const Observable& h, double beta);

/// Mean energy tr(gamma^beta h) from the spectrum of h.
double gibbs_energy(const qcore::RealVector& spectrum, double beta);

QuantumState generalized_gibbs(const ReferenceEnsemble& ens);

FlowRecord flows(const QuantumState& env_initial, const QuantumState& env_final, const ReferenceEnsemble& ens);

/// F = tr(H rho) - S(rho)/beta. Cross-checked against D(rho||gamma)/beta + F_eq;
/// throws std::logic_error if the two routes disagree.
double noneq_free_energy(const QuantumState& rho, const Observable& h, double beta);

/// The divergence route on its own: D(rho||gamma^beta)/beta - ln(Z)/beta.
double noneq_free_energy_via_divergence(const QuantumState& rho, const Observable& h, double beta);

}  // namespace landauer::thermo

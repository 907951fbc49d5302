#include "landauer/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace landauer::thermo {

using qcore::Matrix;
using qcore::RealVector;

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Boltzmann weights exp(-beta*e) normalized, with the exponent shifted so the
// largest weight is 1.
RealVector boltzmann(const RealVector& e, double beta) {
    const double shift = beta >= 0.0 ? e.minCoeff() : e.maxCoeff();
    RealVector w(e.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) w(i) = std::exp(-beta * (e(i) - shift));
    return w / w.sum();
}

QuantumState diagonal_in(const qcore::EigenDecomposition& ed, const RealVector& w, const qcore::FactorShape& shape) {
    Matrix m = ed.vectors * w.cast<qcore::cplx>().asDiagonal() * ed.vectors.adjoint();
    return QuantumState::trusted(qcore::hermitian_part(m), shape);
}

}  // namespace

// -- ReferenceEnsemble ------------------------------------------------------

ReferenceEnsemble::ReferenceEnsemble(std::vector<EnsembleTerm> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("ReferenceEnsemble: no terms");
    for (std::size_t k = 0; k < terms_.size(); ++k) {
        const auto& t = terms_[k];
        if (!(t.observable.shape() == terms_.front().observable.shape()))
            throw std::invalid_argument("ReferenceEnsemble: observables must share one factor shape");
        if (!std::isfinite(t.potential)) throw std::invalid_argument("ReferenceEnsemble: non-finite potential");
        if (energy_index_ < 0 && t.observable.unit() == qcore::Unit::energy) energy_index_ = static_cast<int>(k);
    }
}

ReferenceEnsemble ReferenceEnsemble::heat_only(const Observable& h, double beta) {
    if (h.unit() != qcore::Unit::energy) throw std::invalid_argument("heat_only: observable must carry energy units");
    return ReferenceEnsemble({EnsembleTerm{h, beta, "H"}});
}

double ReferenceEnsemble::energy_potential() const {
    return energy_index_ >= 0 ? terms_[static_cast<std::size_t>(energy_index_)].potential : 0.0;
}

// -- functionals ------------------------------------------------------------

double von_neumann_entropy(const QuantumState& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) s -= xlogx(es.eigenvalues()(i));
    return std::max(s, 0.0);
}

double relative_entropy(const QuantumState& rho, const QuantumState& sigma) {
    if (rho.dim() != sigma.dim()) throw std::invalid_argument("relative_entropy: dimension mismatch");
    const auto es = qcore::eigh(sigma);
    // Populations of rho in the eigenbasis of sigma.
    const Matrix rot = es.vectors.adjoint() * rho.matrix() * es.vectors;
    // Eigenvalues of sigma at roundoff level form its numerical kernel. Small
    // but resolvable eigenvalues (deep Gibbs tails) stay in the support.
    const double zero_floor = 16.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(rho.dim());
    double outside = 0.0;
    double cross = 0.0;
    for (Eigen::Index j = 0; j < es.values.size(); ++j) {
        const double p = rot(j, j).real();
        const double lam = es.values(j);
        if (lam > zero_floor)
            cross += p * std::log(lam);
        else
            outside += p;
    }
    if (outside > qcore::tol_supp) return std::numeric_limits<double>::infinity();
    const double d = -von_neumann_entropy(rho) - cross;
    return d;
}

double mutual_information(const QuantumState& rho, const Bipartition& cut) {
    const std::size_t nf = rho.shape().factors();
    if (cut.first.empty() || cut.first.size() >= nf)
        throw std::invalid_argument("mutual_information: cut must split the factors into two nonempty parts");
    for (auto f : cut.first)
        if (f >= nf) throw std::out_of_range("mutual_information: invalid factor index");
    const auto second = qcore::complement(cut.first, nf);
    const double sa = von_neumann_entropy(qcore::partial_trace(rho, cut.first));
    const double sb = von_neumann_entropy(qcore::partial_trace(rho, second));
    return sa + sb - von_neumann_entropy(rho);
}

QuantumState gibbs_state(const Observable& h, double beta) {
    if (!std::isfinite(beta)) throw std::invalid_argument("gibbs_state: non-finite beta");
    const auto ed = qcore::eigh(h);
    return diagonal_in(ed, boltzmann(ed.values, beta), h.shape());
}

double log_partition(const Observable& h, double beta) {
    const auto ed = qcore::eigh(h);
    const RealVector& e = ed.values;
    const double shift = beta >= 0.0 ? e.minCoeff() : e.maxCoeff();
    double z = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) z += std::exp(-beta * (e(i) - shift));
    return std::log(z) - beta * shift;
}

double gibbs_energy(const RealVector& spectrum, double beta) {
    const RealVector w = boltzmann(spectrum, beta);
    return w.dot(spectrum);
}

QuantumState generalized_gibbs(const ReferenceEnsemble& ens) {
    const auto d = static_cast<Eigen::Index>(ens.dim());
    Matrix exponent = Matrix::Zero(d, d);
    for (const auto& t : ens.terms()) exponent += t.potential * t.observable.matrix();
    const auto ed = qcore::eigh(exponent);
    return diagonal_in(ed, boltzmann(ed.values, 1.0), ens.shape());
}

FlowRecord flows(const QuantumState& env_initial, const QuantumState& env_final, const ReferenceEnsemble& ens) {
    if (env_initial.dim() != ens.dim() || env_final.dim() != ens.dim())
        throw std::invalid_argument("flows: dimension mismatch with ensemble");
    FlowRecord out;
    for (std::size_t k = 0; k < ens.terms().size(); ++k) {
        const auto& obs = ens.terms()[k].observable;
        const double delta = obs.expectation(env_final) - obs.expectation(env_initial);
        out.per_term.push_back(delta);
        if (static_cast<int>(k) == ens.energy_index())
            out.delta_Q = delta;
        else
            out.delta_charges.push_back(delta);
    }
    return out;
}

double relative_entropy_to_gibbs(const QuantumState& rho, const Observable& h, double beta) {
    if (rho.dim() != h.dim()) throw std::invalid_argument("relative_entropy_to_gibbs: dimension mismatch");
    if (!std::isfinite(beta)) throw std::invalid_argument("relative_entropy_to_gibbs: non-finite beta");
    return -von_neumann_entropy(rho) + beta * h.expectation(rho) + log_partition(h, beta);
}

double noneq_free_energy_via_divergence(const QuantumState& rho, const Observable& h, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("noneq_free_energy: beta must be positive");
    const double d = relative_entropy_to_gibbs(rho, h, beta);
    return d / beta - log_partition(h, beta) / beta;
}

double noneq_free_energy(const QuantumState& rho, const Observable& h, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("noneq_free_energy: beta must be positive");
    const double f = h.expectation(rho) - von_neumann_entropy(rho) / beta;
    const double g = noneq_free_energy_via_divergence(rho, h, beta);
    if (std::abs(f - g) > 1e-9 * std::max(1.0, std::abs(f)))
        throw std::logic_error("noneq_free_energy: energy-entropy and divergence routes disagree");
    return f;
}

}  // namespace landauer::thermo

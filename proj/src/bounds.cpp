#include "landauer/bounds.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace landauer::bounds {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

double finite_or_throw(double d, const char* what) {
    if (!std::isfinite(d))
        throw std::domain_error(std::string(what) + ": relative entropy to the reference ensemble diverges");
    return d;
}

std::vector<std::size_t> iota_factors(std::size_t begin, std::size_t end) {
    std::vector<std::size_t> v(end - begin);
    std::iota(v.begin(), v.end(), begin);
    return v;
}

double trace_product(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum().real(); }

Matrix local_sum(const Observable& h_S, const Observable& h_E) {
    return qcore::tensor(h_S, Observable::identity(h_E.shape())).matrix() +
           qcore::tensor(Observable::identity(h_S.shape()), h_E).matrix();
}

}  // namespace

// -- ledger -------------------------------------------------------------------

LedgerBuilder::LedgerBuilder(QuantumState rho_initial, ReferenceEnsemble ens, Bipartition system)
    : rho_i_(std::move(rho_initial)),
      ens_(std::move(ens)),
      system_(std::move(system)),
      env_factors_(qcore::complement(system_.first, rho_i_.shape().factors())),
      gamma_(thermo::generalized_gibbs(ens_)),
      env_i_(QuantumState::maximally_mixed(qcore::FactorShape::single(1))) {
    const std::size_t nf = rho_i_.shape().factors();
    if (system_.first.empty() || system_.first.size() >= nf)
        throw std::invalid_argument("ledger: system part must be a proper nonempty subset of the factors");
    env_i_ = qcore::partial_trace(rho_i_, env_factors_);
    if (env_i_.dim() != ens_.dim()) throw std::invalid_argument("ledger: ensemble does not act on the environment");
    s_sys_i_ = thermo::von_neumann_entropy(qcore::partial_trace(rho_i_, system_.first));
    d_i_ = finite_or_throw(thermo::relative_entropy(env_i_, gamma_), "ledger");
    i_i_ = thermo::mutual_information(rho_i_, system_);
}

BoundLedger LedgerBuilder::at(const UnitaryOp& u) const { return from_final(qcore::evolve(rho_i_, u)); }

BoundLedger LedgerBuilder::from_final(const QuantumState& rho_f) const {
    if (rho_f.dim() != rho_i_.dim()) throw std::invalid_argument("ledger: final state dimension mismatch");
    const QuantumState sys_f = qcore::partial_trace(rho_f, system_.first);
    const QuantumState env_f = qcore::partial_trace(rho_f, env_factors_);
    const double s_sys_f = thermo::von_neumann_entropy(sys_f);
    const double s_env_f = thermo::von_neumann_entropy(env_f);

    BoundLedger l;
    l.heat_only = ens_.heat_only();
    l.beta_tilde = ens_.energy_potential();
    l.delta_S = s_sys_f - s_sys_i_;
    l.flows = thermo::flows(env_i_, env_f, ens_);
    for (std::size_t k = 0; k < ens_.terms().size(); ++k) {
        const double w = ens_.terms()[k].potential * l.flows.per_term[k];
        if (static_cast<int>(k) == ens_.energy_index())
            l.beta_dQ_E = w;
        else
            l.weighted_charge_sum += w;
    }
    l.D_initial = d_i_;
    l.D_final = finite_or_throw(thermo::relative_entropy(env_f, gamma_), "ledger");
    l.I_initial = i_i_;
    l.I_final = s_sys_f + s_env_f - thermo::von_neumann_entropy(rho_f);
    l.sigma0_initial = l.D_initial + l.I_initial;
    l.sigma0_final = l.D_final + l.I_final;
    l.sigma_old = l.delta_S + l.beta_dQ_E + l.weighted_charge_sum;
    l.sigma_mod = l.sigma_old + l.sigma0_initial;
    l.identity_residual = l.sigma_old - (l.sigma0_final - l.sigma0_initial);
    l.mi_delta = l.I_final - l.I_initial;
    l.work = (ens_.energy_index() >= 0 && l.beta_tilde != 0.0)
                 ? (-l.delta_S + l.sigma0_final - l.sigma0_initial) / l.beta_tilde
                 : nan;
    if (l.heat_only && l.beta_tilde > 0.0) {
        const auto& h = ens_.terms().front().observable;
        l.free_energy_delta = l.beta_tilde * (thermo::noneq_free_energy(env_f, h, l.beta_tilde) -
                                              thermo::noneq_free_energy(env_i_, h, l.beta_tilde));
    } else {
        l.free_energy_delta = l.D_final - l.D_initial;
    }
    verify_identity(l);
    return l;
}

BoundLedger ledger(const QuantumState& rho_initial, const UnitaryOp& u, const ReferenceEnsemble& ens,
                   const Bipartition& system) {
    return LedgerBuilder(rho_initial, ens, system).at(u);
}

void verify_identity(const BoundLedger& l) {
    if (!(std::abs(l.identity_residual) <= identity_tol)) {
        std::ostringstream os;
        os << "entropy-production identity violated: residual " << l.identity_residual;
        throw IdentityViolation(os.str());
    }
}

double upper_bound_check(const BoundLedger& l) {
    if (!l.heat_only) throw std::invalid_argument("upper_bound_check: requires a heat-only ensemble");
    return (-l.delta_S + l.sigma0_final) - l.beta_dQ_E;
}

AthermalProductForm special_case_athermal_product(const BoundLedger& l) {
    if (std::abs(l.I_initial) > bound_tol)
        throw std::invalid_argument("special_case_athermal_product: initial state is correlated");
    AthermalProductForm f{l.free_energy_delta, l.I_final, l.free_energy_delta + l.I_final};
    if (std::abs(f.total - l.sigma_old) > identity_tol)
        throw std::logic_error("special_case_athermal_product: decomposition does not match sigma_old");
    return f;
}

CorrelatedThermalForm special_case_correlated_thermal(const BoundLedger& l) {
    if (std::abs(l.D_initial) > bound_tol)
        throw std::invalid_argument("special_case_correlated_thermal: initial environment is not the reference state");
    CorrelatedThermalForm f{l.D_final, l.mi_delta, l.D_final + l.mi_delta};
    if (std::abs(f.total - l.sigma_old) > identity_tol)
        throw std::logic_error("special_case_correlated_thermal: decomposition does not match sigma_old");
    return f;
}

QuantumState correlated_thermal_state(const Observable& h_E, double beta, std::size_t dim_S) {
    const std::size_t dE = h_E.dim();
    if (dim_S != dE) throw std::invalid_argument("correlated_thermal_state: system and environment dimensions differ");
    const auto ed = qcore::eigh(h_E);
    const QuantumState gamma = thermo::gibbs_state(h_E, beta);
    // psi = sum_j l_j |j>_S (x) |e_j>_E
    qcore::Vector psi = qcore::Vector::Zero(static_cast<Eigen::Index>(dim_S * dE));
    for (std::size_t j = 0; j < dE; ++j) {
        const qcore::Vector e = ed.vectors.col(static_cast<Eigen::Index>(j));
        const double lj = std::sqrt(std::max(0.0, (e.adjoint() * gamma.matrix() * e)(0, 0).real()));
        psi.segment(static_cast<Eigen::Index>(j * dE), static_cast<Eigen::Index>(dE)) += lj * e;
    }
    return QuantumState::pure(psi, qcore::FactorShape::single(dim_S, "S").concat(h_E.shape()));
}

// -- finite time ----------------------------------------------------------------

bool conserves_free_energy(const Observable& h_S, const Observable& h_E, const Observable& h_int) {
    const Matrix free = local_sum(h_S, h_E);
    const Matrix c = qcore::commutator(h_int.matrix(), free);
    const double scale = std::max(1.0, qcore::max_abs(h_int.matrix()) * qcore::max_abs(free));
    return qcore::max_abs(c) <= 1e-12 * scale;
}

namespace {

Observable joint_hamiltonian(const Observable& h_S, const Observable& h_E, const Observable& h_int) {
    const auto shape = h_S.shape().concat(h_E.shape());
    if (!(h_int.shape() == shape)) throw std::invalid_argument("finite_time: interaction shape must be S (x) E");
    return Observable(local_sum(h_S, h_E) + h_int.matrix(), shape);
}

}  // namespace

FiniteTimeProblem::FiniteTimeProblem(QuantumState rho_S0, QuantumState rho_E0, Observable h_S, Observable h_E,
                                     Observable h_int, double beta_tilde)
    : rho_S0_(std::move(rho_S0)),
      rho_E0_(std::move(rho_E0)),
      h_S_(std::move(h_S)),
      h_E_(std::move(h_E)),
      h_int_(std::move(h_int)),
      h_total_(joint_hamiltonian(h_S_, h_E_, h_int_)),
      beta_(beta_tilde),
      rho0_(qcore::tensor(rho_S0_, rho_E0_)),
      gamma_joint0_(qcore::tensor(thermo::gibbs_state(h_S_, beta_tilde), rho_E0_)),
      gamma0_(thermo::gibbs_state(h_S_, beta_tilde)),
      log_gamma0_(qcore::hermitian_function(qcore::eigh(gamma0_), [](double x) { return std::log(x); })),
      prop_(h_total_),
      conserving_(conserves_free_energy(h_S_, h_E_, h_int_)),
      d0_(thermo::relative_entropy(rho_S0_, gamma0_)),
      e_int0_(h_int_.expectation(rho0_)) {
    if (rho_S0_.dim() != h_S_.dim() || rho_E0_.dim() != h_E_.dim())
        throw std::invalid_argument("finite_time: state and Hamiltonian dimensions differ");
    if (!std::isfinite(beta_tilde)) throw std::invalid_argument("finite_time: non-finite beta");
}

QuantumState FiniteTimeProblem::joint_at(double tau) const { return qcore::evolve(rho0_, prop_.at(tau)); }

FiniteTimeLedger FiniteTimeProblem::at(double tau) const {
    const auto sys = iota_factors(0, rho_S0_.shape().factors());
    const auto env = iota_factors(rho_S0_.shape().factors(), rho0_.shape().factors());
    const UnitaryOp u = prop_.at(tau);
    const QuantumState rho_t = qcore::evolve(rho0_, u);
    const QuantumState rho_S = qcore::partial_trace(rho_t, sys);
    const QuantumState rho_E = qcore::partial_trace(rho_t, env);
    const QuantumState gamma_t = qcore::partial_trace(qcore::evolve(gamma_joint0_, u), sys);

    FiniteTimeLedger l;
    l.tau = tau;
    l.energy_conserving = conserving_;
    l.delta_S = thermo::von_neumann_entropy(rho_S) - thermo::von_neumann_entropy(rho_S0_);
    l.delta_Q_S = h_S_.expectation(rho_S) - h_S_.expectation(rho_S0_);
    l.delta_Q_E = h_E_.expectation(rho_E) - h_E_.expectation(rho_E0_);
    l.delta_Q_int = h_int_.expectation(rho_t) - e_int0_;

    // ln gamma(tau) with eigenvalues clipped at tol_supp; the rho_S weight on
    // the clipped subspace decides whether K is meaningful.
    const auto eg = qcore::eigh(gamma_t);
    const Matrix rot = eg.vectors.adjoint() * rho_S.matrix() * eg.vectors;
    qcore::RealVector logs(eg.values.size());
    for (Eigen::Index j = 0; j < eg.values.size(); ++j) {
        double v = eg.values(j);
        if (v < qcore::tol_supp) {
            l.clipped_mass += rot(j, j).real();
            v = qcore::tol_supp;
        }
        logs(j) = std::log(v);
    }
    const Matrix log_gamma_t = eg.vectors * logs.cast<qcore::cplx>().asDiagonal() * eg.vectors.adjoint();
    l.K_defined = l.clipped_mass <= 1e-8;
    l.K_term = l.K_defined ? trace_product(rho_S.matrix(), log_gamma_t - log_gamma0_) : nan;

    l.log_gibbs_heat = trace_product(rho_S.matrix() - rho_S0_.matrix(), log_gamma0_);
    l.sigma_tau = l.delta_S - beta_ * l.delta_Q_S + l.K_term;
    l.sigma_tau_environment = l.delta_S + beta_ * l.delta_Q_E + beta_ * l.delta_Q_int + l.K_term;
    l.sigma_tau_conserving = l.delta_S + beta_ * l.delta_Q_E + l.K_term;
    l.relent_drop = d0_ - thermo::relative_entropy(rho_S, gamma_t);
    return l;
}

FiniteTimeLedger finite_time_ledger(const QuantumState& rho_S0, const QuantumState& rho_E0, const Observable& h_S,
                                    const Observable& h_E, const Observable& h_int, double tau, double beta_tilde) {
    return FiniteTimeProblem(rho_S0, rho_E0, h_S, h_E, h_int, beta_tilde).at(tau);
}

// -- weak coupling --------------------------------------------------------------

Matrix TrotterExpansion::chi(const QuantumState& rho0) const {
    const qcore::cplx pre(0.0, t / static_cast<double>(n));
    const Matrix& r = rho0.matrix();
    return pre * (free * r * x_n.adjoint() - x_n * r * free.adjoint());
}

Matrix TrotterExpansion::evolved_state(const QuantumState& rho0) const {
    return free * rho0.matrix() * free.adjoint() + epsilon * chi(rho0);
}

TrotterExpansion trotter_first_order(const Observable& h_free, const Observable& h_int, double epsilon, double t,
                                     int n) {
    if (n < 1) throw std::invalid_argument("trotter_first_order: n must be at least 1");
    if (!(epsilon >= 0.0)) throw std::invalid_argument("trotter_first_order: epsilon must be nonnegative");
    if (h_free.dim() != h_int.dim()) throw std::invalid_argument("trotter_first_order: dimension mismatch");

    const auto ed = qcore::eigh(h_free);
    const Matrix& v = ed.vectors;
    const Matrix hp = v.adjoint() * h_int.matrix() * v;
    const auto d = hp.rows();
    const double dt = t / static_cast<double>(n);

    // In the eigenbasis of h_free, U_f(a) H U_f(b) has entries
    // exp(-i(l_j a + l_k b)) H'_jk.
    Matrix right = Matrix::Zero(d, d);  // left times (k+1) dt
    Matrix left = Matrix::Zero(d, d);   // left times k dt
    for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index k = 0; k < d; ++k) {
            qcore::cplx s_right = 0.0, s_left = 0.0;
            for (int step = 0; step < n; ++step) {
                const double b = static_cast<double>(n - step - 1) * dt;
                const double a_right = static_cast<double>(step + 1) * dt;
                const double a_left = static_cast<double>(step) * dt;
                s_right += std::polar(1.0, -(ed.values(j) * a_right + ed.values(k) * b));
                s_left += std::polar(1.0, -(ed.values(j) * a_left + ed.values(k) * b));
            }
            right(j, k) = s_right * hp(j, k);
            left(j, k) = s_left * hp(j, k);
        }
    }

    TrotterExpansion out;
    out.epsilon = epsilon;
    out.t = t;
    out.n = n;
    out.free = qcore::Propagator(h_free).at(t).matrix();
    out.first_order = qcore::cplx(0.0, -dt) * (v * right * v.adjoint());
    out.x_n = v * left * v.adjoint();
    return out;
}

WeakCouplingResult weak_coupling_bound(const QuantumState& rho_S0, const QuantumState& rho_E0, const Observable& h_S,
                                       const Observable& h_E, const Observable& h_int, double epsilon, double tau,
                                       int n, double beta_tilde) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("weak_coupling_bound: epsilon must be nonnegative");
    const FiniteTimeProblem exact(rho_S0, rho_E0, h_S, h_E, h_int * epsilon, beta_tilde);
    const FiniteTimeLedger fl = exact.at(tau);

    const QuantumState s_free = qcore::evolve(rho_S0, qcore::unitary_from_hamiltonian(h_S, tau));
    const QuantumState e_free = qcore::evolve(rho_E0, qcore::unitary_from_hamiltonian(h_E, tau));
    const double q_int_free =
        h_int.expectation(qcore::tensor(s_free, e_free)) - h_int.expectation(qcore::tensor(rho_S0, rho_E0));

    WeakCouplingResult r;
    r.delta_S = fl.delta_S;
    r.delta_Q_E = fl.delta_Q_E;
    r.delta_Q_int_free = q_int_free;
    r.K_term = fl.K_term;
    r.K_defined = fl.K_defined;
    r.value = fl.delta_S + beta_tilde * fl.delta_Q_E + beta_tilde * epsilon * q_int_free + fl.K_term;

    const Observable h_free(local_sum(h_S, h_E), h_S.shape().concat(h_E.shape()));
    const auto ev = qcore::eigh(h_int);
    r.coupling_strength = epsilon * ev.values.cwiseAbs().maxCoeff() * std::abs(tau);
    const QuantumState rho0 = exact.initial_joint();
    const TrotterExpansion tn = trotter_first_order(h_free, h_int, epsilon, tau, n);
    const TrotterExpansion t2n = trotter_first_order(h_free, h_int, epsilon, tau, 2 * n);
    r.first_order_error = qcore::max_abs(exact.joint_at(tau).matrix() - tn.evolved_state(rho0));
    r.n_convergence = epsilon * qcore::max_abs(tn.chi(rho0) - t2n.chi(rho0));
    return r;
}

}  // namespace landauer::bounds

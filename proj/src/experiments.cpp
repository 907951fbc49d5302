#include "landauer/experiments.hpp"

#include "landauer/operators.hpp"
#include "landauer/random.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace landauer::experiments {

using qcore::FactorShape;
using qcore::Matrix;

namespace {

void require_unit_interval(double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

Matrix two_site(const Matrix& a, std::size_t i, const Matrix& b, std::size_t j, const FactorShape& shape) {
    return qcore::embed(a, shape, i) * qcore::embed(b, shape, j);
}

QuantumState mixed_system(std::size_t d) { return QuantumState::maximally_mixed(FactorShape::single(d, "S")); }

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

int as_int(double v, const char* key) {
    if (v != std::floor(v)) throw std::invalid_argument(std::string("parameter ") + key + " must be an integer");
    return static_cast<int>(v);
}

std::vector<double> sweep_or_default(const GridOptions& g, Example e) {
    return g.sweep_values.empty() ? default_sweep(e) : g.sweep_values;
}

void fill_grid(Scenario& s, const GridOptions& g, Example e) {
    s.time_grid = uniform_grid(g.t_max.value_or(default_t_max(e)), g.points);
    s.sweep_values = sweep_or_default(g, e);
    s.estimator = g.estimator;
}

}  // namespace

std::string to_string(Example e) {
    switch (e) {
        case Example::example1: return "example1";
        case Example::example2: return "example2";
        case Example::example3: return "example3";
        case Example::example4: return "example4";
        case Example::example5: return "example5";
    }
    return "unknown";
}

Example example_from_string(const std::string& s) {
    for (auto e : {Example::example1, Example::example2, Example::example3, Example::example4, Example::example5})
        if (to_string(e) == s) return e;
    throw std::invalid_argument("unknown scenario: " + s);
}

std::string to_string(StateKind k) { return k == StateKind::ghz ? "GHZ" : "W"; }

StateKind state_kind_from_string(const std::string& s) {
    if (s == "GHZ" || s == "ghz") return StateKind::ghz;
    if (s == "W" || s == "w") return StateKind::w;
    throw std::invalid_argument("unknown state kind: " + s);
}

std::vector<double> uniform_grid(double t_max, int points) {
    if (points < 0) throw std::invalid_argument("uniform_grid: negative point count");
    if (!std::isfinite(t_max) || t_max < 0.0) throw std::invalid_argument("uniform_grid: t_max must be finite and >= 0");
    std::vector<double> g(static_cast<std::size_t>(points), 0.0);
    if (points > 1)
        for (int k = 0; k < points; ++k) g[static_cast<std::size_t>(k)] = t_max * k / (points - 1);
    return g;
}

double default_t_max(Example e) {
    return e == Example::example2 || e == Example::example3 ? 50.0 : 10.0;
}

std::vector<double> default_sweep(Example e) {
    switch (e) {
        case Example::example1: return {0.0, 0.1, 0.2, 0.3};
        case Example::example2: return {0.0, 0.1, 0.22};
        case Example::example3: return {0.2, 0.5, 0.8, 1.0};
        case Example::example4: return {0.0, 0.2, 0.4};
        case Example::example5: return {0.0, 0.25, 0.5, 0.75};
    }
    return {};
}

// -- Example 1: qubit system, qutrit environment ---------------------------------

namespace {

Observable ex1_h_E(const Example1Params& p) {
    return Observable(p.K * p.omega2 * ops::qutrit_z(), FactorShape::single(3, "E"));
}

}  // namespace

double example1_seed_beta(const Example1Params& p, Method estimator) {
    const Observable h_E = ex1_h_E(p);
    return temperature::calibrate_seed_beta(
        estimator, [&](double b) { return thermo::gibbs_state(h_E, b); }, h_E, p.T_x);
}

QuantumState example1_state(const Example1Params& p, double seed_beta, double mix) {
    require_unit_interval(mix, "example1: p");
    const FactorShape shape({2, 3}, {"S", "E"});
    const QuantumState thermal = qcore::tensor(mixed_system(2), thermo::gibbs_state(ex1_h_E(p), seed_beta));
    qcore::Vector phi = qcore::Vector::Zero(6);
    phi(0) = phi(4) = 1.0 / std::sqrt(2.0);
    return QuantumState::mix(thermal, QuantumState::pure(phi, shape), mix);
}

Scenario example1(const Example1Params& p, const GridOptions& g) {
    const FactorShape shape({2, 3}, {"S", "E"});
    const Observable h_E = ex1_h_E(p);
    const Matrix h = p.K * (p.omega1 * qcore::embed(ops::sigma_z(), shape, 0) +
                            p.omega2 * qcore::embed(ops::qutrit_z(), shape, 1) +
                            p.J * two_site(ops::sigma_x(), 0, ops::qutrit_x(), 1, shape));
    const double seed_beta = example1_seed_beta(p, g.estimator);

    Scenario s;
    s.name = "example1";
    s.initial_state = [p, seed_beta](double mix) { return example1_state(p, seed_beta, mix); };
    s.system = {{0}};
    s.hamiltonian = Observable(h, shape);
    s.ensemble = {EnsembleSpec{"H_E", h_E, {0}, h_E}};
    fill_grid(s, g, Example::example1);
    for (double v : s.sweep_values) require_unit_interval(v, "example1: p");
    return s;
}

// -- Example 2: qubit coupled to the end of an XY chain ------------------------

namespace {

FactorShape chain_shape(int n_sites, bool with_system) {
    std::vector<std::size_t> dims;
    std::vector<std::string> labels;
    if (with_system) {
        dims.push_back(2);
        labels.emplace_back("S");
    }
    for (int i = 1; i <= n_sites; ++i) {
        dims.push_back(2);
        labels.push_back("E" + std::to_string(i));
    }
    return FactorShape(dims, labels);
}

Observable ex2_h_E(const Example2Params& p) {
    const FactorShape shape = chain_shape(p.N, false);
    const auto d = static_cast<Eigen::Index>(shape.total());
    Matrix h = Matrix::Zero(d, d);
    for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(p.N); ++i)
        h += p.Jp * (two_site(ops::sigma_x(), i, ops::sigma_x(), i + 1, shape) +
                     two_site(ops::sigma_y(), i, ops::sigma_y(), i + 1, shape));
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.N); ++i) h += p.B * qcore::embed(ops::sigma_z(), shape, i);
    return Observable(h, shape);
}

}  // namespace

QuantumState example2_state(const Example2Params& p, double mix) {
    require_unit_interval(mix, "example2: p");
    if (p.N < 2) throw std::invalid_argument("example2: N must be at least 2");
    const auto n_qubits = static_cast<std::size_t>(p.N + 1);
    const QuantumState thermal = qcore::tensor(mixed_system(2), thermo::gibbs_state(ex2_h_E(p), p.beta));
    const qcore::Vector psi = p.kind == StateKind::ghz ? ops::ghz(n_qubits) : ops::w_state(n_qubits);
    return QuantumState::mix(thermal, QuantumState::pure(psi, chain_shape(p.N, true)), mix);
}

Scenario example2(const Example2Params& p, const GridOptions& g) {
    if (p.N < 2) throw std::invalid_argument("example2: N must be at least 2");
    const FactorShape shape = chain_shape(p.N, true);
    const Observable h_E = ex2_h_E(p);
    const Matrix h = p.B0 * qcore::embed(ops::sigma_z(), shape, 0) +
                     qcore::tensor(Observable::identity(FactorShape::single(2)), h_E).matrix() +
                     p.J0 * (two_site(ops::sigma_x(), 0, ops::sigma_x(), 1, shape) +
                             two_site(ops::sigma_y(), 0, ops::sigma_y(), 1, shape));

    Scenario s;
    s.name = "example2";
    s.initial_state = [p](double mix) { return example2_state(p, mix); };
    s.system = {{0}};
    s.hamiltonian = Observable(h, shape);
    std::vector<std::size_t> all_env(static_cast<std::size_t>(p.N));
    for (std::size_t i = 0; i < all_env.size(); ++i) all_env[i] = i;
    s.ensemble = {EnsembleSpec{"H_E", h_E, all_env, h_E}};
    fill_grid(s, g, Example::example2);
    for (double v : s.sweep_values) {
        require_unit_interval(v, "example2: p");
        if (v > 0.23) s.warnings.push_back("example2: p = " + fmt(v) + " exceeds the studied range [0, 0.23]");
    }
    return s;
}

// -- Example 3: two qutrits ------------------------------------------------------

namespace {

Observable ex3_h_E(const Example3Params& p) {
    return Observable(p.Kp * p.omega2 * ops::qutrit_z(), FactorShape::single(3, "E"));
}

}  // namespace

QuantumState example3_state(const Example3Params& p, double mix) {
    require_unit_interval(mix, "example3: p'");
    const QuantumState excited = QuantumState::basis(3, 1);
    const QuantumState env = QuantumState::mix(excited, thermo::gibbs_state(ex3_h_E(p), p.beta), mix);
    return qcore::tensor(mixed_system(3), QuantumState::trusted(env.matrix(), FactorShape::single(3, "E")));
}

Scenario example3(const Example3Params& p, const GridOptions& g) {
    const FactorShape shape({3, 3}, {"S", "E"});
    const Observable h_E = ex3_h_E(p);
    const Matrix h = p.Kp * (p.omega1 * qcore::embed(ops::qutrit_z(), shape, 0) +
                             p.omega2 * qcore::embed(ops::qutrit_z(), shape, 1) +
                             p.epsilon * two_site(ops::qutrit_x(), 0, ops::qutrit_x(), 1, shape));
    Scenario s;
    s.name = "example3";
    s.initial_state = [p](double mix) { return example3_state(p, mix); };
    s.system = {{0}};
    s.hamiltonian = Observable(h, shape);
    s.ensemble = {EnsembleSpec{"H_E", h_E, {0}, h_E}};
    fill_grid(s, g, Example::example3);
    for (double v : s.sweep_values) require_unit_interval(v, "example3: p'");
    return s;
}

// -- Example 4: heat bath and spin bath ------------------------------------------

namespace {

const FactorShape ex4_shape({2, 2, 2}, {"S", "E1", "E2"});

Matrix projector_one() { return ops::outer(2, 1, 1); }

}  // namespace

QuantumState example4_state(const Example4Params& p, double mix) {
    require_unit_interval(mix, "example4: q");
    const Observable h_E1(p.J * projector_one(), FactorShape::single(2, "E1"));
    const Observable s_z(ops::sigma_z(), FactorShape::single(2, "E2"), qcore::Unit::dimensionless);
    const QuantumState thermal = qcore::tensor(
        qcore::tensor(mixed_system(2), thermo::gibbs_state(h_E1, p.beta)), thermo::gibbs_state(s_z, p.alpha));
    const qcore::Vector psi = p.kind == StateKind::ghz ? ops::ghz(3) : ops::w_state(3);
    return QuantumState::mix(thermal, QuantumState::pure(psi, ex4_shape), mix);
}

Scenario example4(const Example4Params& p, const GridOptions& g) {
    const FactorShape env_shape({2, 2}, {"E1", "E2"});
    const Observable h_E1(p.J * projector_one(), FactorShape::single(2, "E1"));
    const Observable s_z(ops::sigma_z(), FactorShape::single(2, "E2"), qcore::Unit::dimensionless);
    const Matrix h = p.J_S1 * two_site(ops::sigma_x(), 0, ops::sigma_x(), 1, ex4_shape) +
                     p.J_S2 * two_site(ops::sigma_x(), 0, ops::sigma_x(), 2, ex4_shape);

    Scenario s;
    s.name = "example4";
    s.initial_state = [p](double mix) { return example4_state(p, mix); };
    s.system = {{0}};
    s.hamiltonian = Observable(h, ex4_shape);
    s.ensemble = {
        EnsembleSpec{"H_E1", Observable(qcore::embed(h_E1.matrix(), env_shape, 0), env_shape), {0}, h_E1},
        EnsembleSpec{"S_z_E2",
                     Observable(qcore::embed(s_z.matrix(), env_shape, 1), env_shape, qcore::Unit::dimensionless),
                     {1},
                     s_z}};
    fill_grid(s, g, Example::example4);
    for (double v : s.sweep_values) require_unit_interval(v, "example4: q");
    return s;
}

// -- Example 5: qubit and truncated oscillator -------------------------------------

std::pair<QuantumState, QuantumState> example5_state(const Example5Params& p, double mix) {
    require_unit_interval(mix, "example5: q1");
    if (p.n_fock < 5) throw std::invalid_argument("example5: n_fock must be at least 5");
    const auto n = static_cast<std::size_t>(p.n_fock);
    const Observable h_E(p.Omega * ops::number(n), FactorShape::single(n, "E"));
    const QuantumState env =
        QuantumState::mix(thermo::gibbs_state(h_E, p.beta), QuantumState::basis(n, 2), mix);
    return {mixed_system(2), QuantumState::trusted(env.matrix(), FactorShape::single(n, "E"))};
}

Scenario example5(const Example5Params& p, const GridOptions& g) {
    if (p.n_fock < 5) throw std::invalid_argument("example5: n_fock must be at least 5");
    const auto n = static_cast<std::size_t>(p.n_fock);
    const FactorShape shape({2, n}, {"S", "E"});
    const Observable h_S(p.Omega * projector_one(), FactorShape::single(2, "S"));
    const Observable h_E(p.Omega * ops::number(n), FactorShape::single(n, "E"));
    const Matrix a = ops::annihilation(n);
    const Observable h_int(
        p.kappa * (two_site(ops::sigma_minus(), 0, a.adjoint(), 1, shape) +
                   two_site(ops::sigma_plus(), 0, a, 1, shape)),
        shape);

    Scenario s;
    s.name = "example5";
    s.initial_state = [p](double mix) {
        auto [rs, re] = example5_state(p, mix);
        return qcore::tensor(rs, re);
    };
    s.system = {{0}};
    s.hamiltonian = Observable(qcore::embed(h_S.matrix(), shape, 0) + qcore::embed(h_E.matrix(), shape, 1) +
                                   h_int.matrix(),
                               shape);
    s.ensemble = {EnsembleSpec{"H_E", h_E, {0}, h_E}};
    s.finite_time = FiniteTimeSpec{h_S, h_E, h_int, [p](double mix) { return example5_state(p, mix); }};
    s.leakage = LeakageGuard{Observable(ops::outer(n, n - 2, n - 2) + ops::outer(n, n - 1, n - 1),
                                        FactorShape::single(n, "E"), qcore::Unit::dimensionless),
                             p.leakage_limit};
    fill_grid(s, g, Example::example5);
    for (double v : s.sweep_values) require_unit_interval(v, "example5: q1");
    return s;
}

// -- driver --------------------------------------------------------------------

SweepResult run_sweep(const Scenario& s) {
    SweepResult out;
    out.scenario = s.name;
    out.notes = s.warnings;
    if (s.time_grid.empty()) return out;

    const qcore::Propagator prop(s.hamiltonian);
    for (double v : s.sweep_values) {
        const QuantumState rho = s.initial_state(v);
        const auto env_factors = qcore::complement(s.system.first, rho.shape().factors());
        const QuantumState env = qcore::partial_trace(rho, env_factors);

        std::vector<temperature::TemperatureEstimate> temps;
        std::vector<thermo::EnsembleTerm> terms;
        for (const auto& spec : s.ensemble) {
            const QuantumState marginal = qcore::partial_trace(env, spec.marginal);
            auto est = temperature::estimate(s.estimator, marginal, spec.local);
            if (!est.defined)
                throw std::domain_error(s.name + ": temperature estimate undefined for " + spec.name + " at " +
                                        fmt(v));
            terms.push_back({spec.env_observable, est.inverse_temperature, spec.name});
            temps.push_back(std::move(est));
        }
        const bounds::LedgerBuilder builder(rho, thermo::ReferenceEnsemble(terms), s.system);

        std::optional<bounds::FiniteTimeProblem> problem;
        if (s.finite_time) {
            auto [rs, re] = s.finite_time->product_state(v);
            problem.emplace(rs, re, s.finite_time->h_S, s.finite_time->h_E, s.finite_time->h_int,
                            terms.front().potential);
        }

        for (double t : s.time_grid) {
            SweepRow row;
            row.sweep_value = v;
            row.time = t;
            row.temperatures = temps;
            const QuantumState rho_t = problem ? problem->joint_at(t) : qcore::evolve(rho, prop.at(t));
            row.ledger = builder.from_final(rho_t);
            if (problem) row.finite = problem->at(t);
            if (s.leakage) {
                row.leakage = s.leakage->projector.expectation(qcore::partial_trace(rho_t, env_factors));
                out.max_leakage = std::max(out.max_leakage, row.leakage);
                if (row.leakage > s.leakage->limit)
                    throw LeakageError(s.name + ": truncation leakage " + fmt(row.leakage) + " at sweep value " +
                                           fmt(v) + ", t = " + fmt(t) + " exceeds " + fmt(s.leakage->limit),
                                       row.leakage);
            }
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

SweepResult run_example5_guarded(Example5Params p, const GridOptions& g, int step, int max_fock) {
    if (step < 1) throw std::invalid_argument("run_example5_guarded: step must be positive");
    for (;;) {
        try {
            SweepResult r = run_sweep(example5(p, g));
            r.notes.push_back("n_fock=" + std::to_string(p.n_fock));
            return r;
        } catch (const LeakageError&) {
            if (p.n_fock + step > max_fock) throw;
            p.n_fock += step;
        }
    }
}

// -- string-keyed parameters -----------------------------------------------------

std::map<std::string, double> default_parameters(Example e) {
    switch (e) {
        case Example::example1: {
            const Example1Params d;
            return {{"K", d.K}, {"J", d.J}, {"omega1", d.omega1}, {"omega2", d.omega2}, {"T_x", d.T_x}};
        }
        case Example::example2: {
            const Example2Params d;
            return {{"N", d.N}, {"Jp", d.Jp}, {"B", d.B}, {"J0", d.J0}, {"B0", d.B0}, {"beta", d.beta}};
        }
        case Example::example3: {
            const Example3Params d;
            return {{"Kp", d.Kp}, {"omega1", d.omega1}, {"omega2", d.omega2}, {"epsilon", d.epsilon}, {"beta", d.beta}};
        }
        case Example::example4: {
            const Example4Params d;
            return {{"J", d.J}, {"J_S1", d.J_S1}, {"J_S2", d.J_S2}, {"beta", d.beta}, {"alpha", d.alpha}};
        }
        case Example::example5: {
            const Example5Params d;
            return {{"Omega", d.Omega},
                    {"kappa", d.kappa},
                    {"beta", d.beta},
                    {"n_fock", d.n_fock},
                    {"leakage_limit", d.leakage_limit}};
        }
    }
    return {};
}

namespace {

std::map<std::string, double> resolved(const BuildRequest& req) {
    auto values = default_parameters(req.example);
    for (const auto& [k, v] : req.parameters) {
        auto it = values.find(k);
        if (it == values.end()) throw std::invalid_argument("unknown parameter for " + to_string(req.example) + ": " + k);
        if (!std::isfinite(v)) throw std::invalid_argument("parameter " + k + " must be finite");
        it->second = v;
    }
    return values;
}

}  // namespace

Example5Params example5_params(const BuildRequest& req) {
    const auto v = resolved(req);
    Example5Params p;
    p.Omega = v.at("Omega");
    p.kappa = v.at("kappa");
    p.beta = v.at("beta");
    p.n_fock = as_int(v.at("n_fock"), "n_fock");
    p.leakage_limit = v.at("leakage_limit");
    return p;
}

Scenario build(const BuildRequest& req) {
    const auto v = resolved(req);
    if (req.kind && req.example != Example::example2 && req.example != Example::example4)
        throw std::invalid_argument("state kind applies to example2 and example4 only");
    switch (req.example) {
        case Example::example1: {
            Example1Params p;
            p.K = v.at("K");
            p.J = v.at("J");
            p.omega1 = v.at("omega1");
            p.omega2 = v.at("omega2");
            p.T_x = v.at("T_x");
            return example1(p, req.grid);
        }
        case Example::example2: {
            Example2Params p;
            p.kind = req.kind.value_or(StateKind::ghz);
            p.N = as_int(v.at("N"), "N");
            p.Jp = v.at("Jp");
            p.B = v.at("B");
            p.J0 = v.at("J0");
            p.B0 = v.at("B0");
            p.beta = v.at("beta");
            return example2(p, req.grid);
        }
        case Example::example3: {
            Example3Params p;
            p.Kp = v.at("Kp");
            p.omega1 = v.at("omega1");
            p.omega2 = v.at("omega2");
            p.epsilon = v.at("epsilon");
            p.beta = v.at("beta");
            return example3(p, req.grid);
        }
        case Example::example4: {
            Example4Params p;
            p.kind = req.kind.value_or(StateKind::ghz);
            p.J = v.at("J");
            p.J_S1 = v.at("J_S1");
            p.J_S2 = v.at("J_S2");
            p.beta = v.at("beta");
            p.alpha = v.at("alpha");
            return example4(p, req.grid);
        }
        case Example::example5: return example5(example5_params(req), req.grid);
    }
    throw std::invalid_argument("build: unknown example");
}

// -- checks --------------------------------------------------------------------

CheckReport check(const SweepResult& r) {
    CheckReport c;
    c.rows = r.rows.size();
    c.min_sigma_mod = r.rows.empty() ? 0.0 : r.rows.front().ledger.sigma_mod;
    for (const auto& row : r.rows) {
        const auto& l = row.ledger;
        const double res = std::abs(l.identity_residual);
        c.max_identity_residual = std::max(c.max_identity_residual, std::isnan(res) ? INFINITY : res);
        if (!(res <= bounds::identity_tol)) ++c.identity_failures;
        c.min_sigma_mod = std::min(c.min_sigma_mod, l.sigma_mod);
        if (!(l.sigma_mod >= -bounds::bound_tol)) ++c.modified_bound_failures;
        if (row.finite) {
            const auto& f = *row.finite;
            const bool good = f.K_defined && f.sigma_tau >= -bounds::identity_tol &&
                              std::abs(f.sigma_tau - f.relent_drop) <= bounds::identity_tol;
            if (!good) ++c.finite_time_failures;
        }
    }
    return c;
}

// -- randomized audit ----------------------------------------------------------

AuditSample random_audit_sample(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    rnd::Engine eng(seq);
    static const std::size_t dims[3][2] = {{2, 2}, {2, 3}, {3, 3}};
    const auto& d = dims[eng() % 3];
    const FactorShape shape({d[0], d[1]}, {"S", "E"});
    const FactorShape env_shape = FactorShape::single(d[1], "E");

    const std::size_t rank = 1 + eng() % shape.total();
    QuantumState rho = rnd::random_state(eng, shape, rank);
    qcore::UnitaryOp u = rnd::random_unitary(eng, shape);

    const std::size_t n_terms = 1 + eng() % 3;
    std::vector<thermo::EnsembleTerm> terms;
    for (std::size_t k = 0; k < n_terms; ++k) {
        const auto unit = k == 0 ? qcore::Unit::energy : qcore::Unit::dimensionless;
        terms.push_back({rnd::random_hamiltonian(eng, env_shape, unit), rnd::uniform(eng, -2.0, 2.0),
                         k == 0 ? "H" : "C" + std::to_string(k)});
    }
    return AuditSample{std::move(rho), std::move(u), thermo::ReferenceEnsemble(std::move(terms)), {{0}}};
}

SweepResult random_audit(std::uint64_t seed, std::size_t samples) {
    SweepResult out;
    out.scenario = "random-audit";
    out.rows.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const AuditSample a = random_audit_sample(seed, i);
        SweepRow row;
        row.sweep_value = static_cast<double>(i);
        row.time = 0.0;
        row.ledger = bounds::ledger(a.rho, a.u, a.ensemble, a.system);
        out.rows.push_back(std::move(row));
    }
    return out;
}

}  // namespace landauer::experiments

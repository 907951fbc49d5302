// experiments.hpp - scenario builders for the five worked examples and the
// sweep driver that turns a scenario into ledger rows.
//
// Every scenario evolves its initial state under exp(-i H t) for the points
// of its time grid. For each sweep value the environment temperatures are
// estimated once from the initial reduced environment state and frozen into
// the reference ensemble.

#pragma once

#include "landauer/bounds.hpp"
#include "landauer/qcore.hpp"
#include "landauer/temperature.hpp"
#include "landauer/thermo.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace landauer::experiments {

using qcore::Observable;
using qcore::QuantumState;
using temperature::Method;

enum class Example { example1, example2, example3, example4, example5 };

std::string to_string(Example e);
Example example_from_string(const std::string& s);

enum class StateKind { ghz, w };

std::string to_string(StateKind k);
StateKind state_kind_from_string(const std::string& s);

/// One term of the reference ensemble. The potential is estimated from the
/// marginal of the initial environment state on `marginal` (indices into the
/// environment factors) with `local` playing the role of the Hamiltonian.
struct EnsembleSpec {
    std::string name;
    Observable env_observable;
    std::vector<std::size_t> marginal;
    Observable local;
};

struct FiniteTimeSpec {
    Observable h_S, h_E, h_int;
    std::function<std::pair<QuantumState, QuantumState>(double)> product_state;
};

/// Projector on the environment whose population must stay below `limit`.
struct LeakageGuard {
    Observable projector;
    double limit = 1e-8;
};

struct Scenario {
    std::string name;
    std::function<QuantumState(double)> initial_state;
    thermo::Bipartition system;
    Observable hamiltonian = Observable::zero(qcore::FactorShape::single(1));
    std::vector<EnsembleSpec> ensemble;
    Method estimator = Method::spectral;
    std::vector<double> time_grid;
    std::vector<double> sweep_values;
    std::optional<FiniteTimeSpec> finite_time;
    std::optional<LeakageGuard> leakage;
    std::vector<std::string> warnings;
};

struct SweepRow {
    double sweep_value = 0.0;
    double time = 0.0;
    bounds::BoundLedger ledger;
    std::optional<bounds::FiniteTimeLedger> finite;
    std::vector<temperature::TemperatureEstimate> temperatures;  // one per ensemble term
    double leakage = 0.0;
};

struct SweepResult {
    std::string scenario;
    std::vector<SweepRow> rows;
    double max_leakage = 0.0;
    std::vector<std::string> notes;
};

class LeakageError : public std::runtime_error {
public:
    LeakageError(const std::string& what, double leakage) : std::runtime_error(what), leakage_(leakage) {}
    [[nodiscard]] double leakage() const { return leakage_; }

private:
    double leakage_;
};

/// n uniform points on [0, t_max], endpoints included.
std::vector<double> uniform_grid(double t_max, int points);

inline constexpr int default_points = 200;

struct Example1Params {
    double K = 1.0, J = 1.0, omega1 = 1.0, omega2 = 1.0;
    double T_x = 1.0;  // calibrated temperature of the p = 0 environment
};
struct Example2Params {
    StateKind kind = StateKind::ghz;
    int N = 5;
    double Jp = 1.0, B = 1.0, J0 = 1.0, B0 = 0.5;
    double beta = 1.0;
};
struct Example3Params {
    double Kp = 1.0, omega1 = 1.0, omega2 = 1.0, epsilon = 0.1;
    double beta = 1.0;
};
struct Example4Params {
    StateKind kind = StateKind::ghz;
    double J = 1.0, J_S1 = 1.7, J_S2 = 1.7;
    double beta = 1.0, alpha = 1.0;
};
struct Example5Params {
    double Omega = 1.0, kappa = 1.7, beta = 1.0;
    int n_fock = 20;
    double leakage_limit = 1e-8;
};

struct GridOptions {
    std::vector<double> sweep_values;
    std::optional<double> t_max;  // default_t_max(example) when unset
    int points = default_points;
    Method estimator = Method::spectral;
};

Scenario example1(const Example1Params& p, const GridOptions& g);
Scenario example2(const Example2Params& p, const GridOptions& g);
Scenario example3(const Example3Params& p, const GridOptions& g);
Scenario example4(const Example4Params& p, const GridOptions& g);
Scenario example5(const Example5Params& p, const GridOptions& g);

/// Initial states alone, for tests and audits.
QuantumState example1_state(const Example1Params& p, double seed_beta, double mix);
QuantumState example2_state(const Example2Params& p, double mix);
QuantumState example3_state(const Example3Params& p, double mix);
QuantumState example4_state(const Example4Params& p, double mix);
std::pair<QuantumState, QuantumState> example5_state(const Example5Params& p, double mix);

/// Seed inverse temperature of Example 1 after calibration.
double example1_seed_beta(const Example1Params& p, Method estimator);

/// Throws LeakageError if the guard trips.
SweepResult run_sweep(const Scenario& s);

/// Example 5 with the leakage guard resolved by raising n_fock in steps of
/// `step` up to `max_fock`. The final n_fock is reported in the notes.
SweepResult run_example5_guarded(Example5Params p, const GridOptions& g, int step = 5, int max_fock = 80);

// -- string-keyed parameters for the command line --------------------------------

/// Numeric parameter keys accepted by each example with their defaults.
std::map<std::string, double> default_parameters(Example e);

struct BuildRequest {
    Example example = Example::example1;
    std::map<std::string, double> parameters;  // subset of default_parameters(example)
    std::optional<StateKind> kind;              // examples 2 and 4
    GridOptions grid;
};

/// Length of the default time window. Examples 2 and 3 evolve slowly (weak
/// coupling, long chain) and use [0, 50]; the others use [0, 10].
double default_t_max(Example e);

/// Default sweep values of each example.
std::vector<double> default_sweep(Example e);

Scenario build(const BuildRequest& req);
Example5Params example5_params(const BuildRequest& req);

// -- invariant checks ------------------------------------------------------------

struct CheckReport {
    std::size_t rows = 0;
    std::size_t identity_failures = 0;
    std::size_t modified_bound_failures = 0;
    std::size_t finite_time_failures = 0;
    double max_identity_residual = 0.0;
    double min_sigma_mod = 0.0;
    [[nodiscard]] bool ok() const {
        return identity_failures == 0 && modified_bound_failures == 0 && finite_time_failures == 0;
    }
};

CheckReport check(const SweepResult& r);

// -- randomized audit ----------------------------------------------------------

struct AuditSample {
    QuantumState rho;
    qcore::UnitaryOp u;
    thermo::ReferenceEnsemble ensemble;
    thermo::Bipartition system;
};

/// Random state, unitary and 1-3 term ensemble on 2x2, 2x3 or 3x3.
AuditSample random_audit_sample(std::uint64_t seed, std::size_t index);

/// One row per sample; sweep_value is the sample index and time is 0.
SweepResult random_audit(std::uint64_t seed, std::size_t samples);

}  // namespace landauer::experiments

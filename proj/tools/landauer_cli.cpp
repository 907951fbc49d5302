// landauer - run the worked examples and the randomized identity audit.
//
// Exit codes: 0 ok, 1 invariant failure, 2 usage error.

#include "cli_support.hpp"

#include "landauer/bounds.hpp"
#include "landauer/experiments.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace landauer;
using cli::UsageError;

constexpr int exit_ok = 0;
constexpr int exit_invariant = 1;
constexpr int exit_usage = 2;

struct ExampleFlags {
    std::optional<std::string> p, t_max, points, estimator, kind, n_fock, output, format;
    std::optional<std::string> config;
    std::vector<std::string> assignments;
    bool check = false;
    bool temperatures = false;
    bool fixed_fock = false;
    bool inject_fault = false;
};

struct AuditFlags {
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    std::string output;
    std::string format = "csv";
    bool check = false;
    bool inject_fault = false;
};

struct WeakFlags {
    double q1 = 0.0;
    double eps = 0.05;
    double t_max = 5.0;
    int points = 11;
    int trotter_n = bounds::default_trotter_steps;
    int n_fock = 20;
    std::string output;
};

void add_example_options(CLI::App* sub, ExampleFlags& f, experiments::Example e) {
    sub->add_option("--p", f.p, "Sweep values, comma separated");
    sub->add_option("--t-max", f.t_max, "End of the time window");
    sub->add_option("--points", f.points, "Number of time points");
    sub->add_option("--estimator", f.estimator, "Temperature estimator: spectral, cold, hot or energy");
    if (e == experiments::Example::example2 || e == experiments::Example::example4)
        sub->add_option("--kind", f.kind, "Entangled admixture: GHZ or W");
    if (e == experiments::Example::example5) {
        sub->add_option("--n-fock", f.n_fock, "Oscillator truncation");
        sub->add_flag("--fixed-fock", f.fixed_fock, "Fail instead of raising n_fock when the leakage guard trips");
    }
    sub->add_option("--config", f.config, "INI file with [scenario] and per-example sections");
    sub->add_option("--set", f.assignments, "Override key=value (repeatable)");
    sub->add_option("--output,-o", f.output, "Output path (stdout if omitted)");
    sub->add_option("--format", f.format, "csv or json");
    sub->add_flag("--check", f.check, "Verify invariants on every row and exit 1 on failure");
    sub->add_flag("--temperatures", f.temperatures, "Append the estimated ensemble potentials");
    sub->add_flag("--inject-fault", f.inject_fault)->group("");
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write output file: " + path);
    f << text;
    if (!f) throw UsageError("failed writing output file: " + path);
}

void corrupt(experiments::SweepResult& r) {
    if (r.rows.empty()) return;
    r.rows.front().ledger.sigma_mod = -1.0;
    r.rows.front().ledger.identity_residual = 1.0;
}

int report(const experiments::SweepResult& r, bool check) {
    for (const auto& n : r.notes) std::cerr << "note: " << n << '\n';
    if (!check) return exit_ok;
    const auto c = experiments::check(r);
    std::cerr << "check: rows=" << c.rows << " identity_failures=" << c.identity_failures
              << " modified_bound_failures=" << c.modified_bound_failures
              << " finite_time_failures=" << c.finite_time_failures
              << " max_identity_residual=" << cli::format_double(c.max_identity_residual)
              << " min_sigma_mod=" << cli::format_double(c.min_sigma_mod) << '\n';
    return c.ok() ? exit_ok : exit_invariant;
}

int run_example(experiments::Example e, const ExampleFlags& f) {
    cli::KeyValues dedicated;
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) dedicated[key] = *v;
    };
    put("p", f.p);
    put("t_max", f.t_max);
    put("points", f.points);
    put("estimator", f.estimator);
    put("kind", f.kind);
    put("n_fock", f.n_fock);
    put("output", f.output);
    put("format", f.format);
    const auto flags = cli::merge_flags(dedicated, cli::parse_assignments(f.assignments));
    const auto file = f.config ? cli::read_ini(*f.config, experiments::to_string(e)) : cli::KeyValues{};
    cli::RunConfig cfg = cli::resolve(e, file, flags);
    cfg.check = f.check;
    cfg.temperatures = f.temperatures;
    cfg.raise_fock = !f.fixed_fock;

    experiments::SweepResult result;
    try {
        if (e == experiments::Example::example5 && cfg.raise_fock) {
            result = experiments::run_example5_guarded(experiments::example5_params(cfg.request), cfg.request.grid);
        } else {
            result = experiments::run_sweep(experiments::build(cfg.request));
        }
    } catch (const std::invalid_argument& ex) {
        throw UsageError(ex.what());
    }
    if (f.inject_fault) corrupt(result);
    write_output(cfg.output_path, cfg.format == cli::Format::csv ? cli::to_csv(result, cfg.temperatures)
                                                                 : cli::to_json(result, cfg.temperatures));
    return report(result, cfg.check);
}

int run_audit(const AuditFlags& f) {
    const auto format = cli::parse_format(f.format);
    auto result = experiments::random_audit(f.seed, f.samples);
    if (f.inject_fault) corrupt(result);
    write_output(f.output, format == cli::Format::csv ? cli::to_csv(result, false) : cli::to_json(result, false));
    return report(result, f.check);
}

int run_weak(const WeakFlags& f) {
    experiments::Example5Params p;
    p.n_fock = f.n_fock;
    if (f.trotter_n < 1) throw UsageError("--trotter-n must be positive");
    write_output(f.output, cli::weak_coupling_csv(p, f.q1, f.eps, f.t_max, f.points, f.trotter_n));
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entropy production and Landauer-type bounds for system-environment unitaries"};
    app.require_subcommand(1);

    using experiments::Example;
    std::map<Example, ExampleFlags> flags;
    std::map<Example, CLI::App*> subs;
    for (auto e : {Example::example1, Example::example2, Example::example3, Example::example4, Example::example5}) {
        auto* sub = app.add_subcommand(experiments::to_string(e), "Run the " + experiments::to_string(e) + " sweep");
        add_example_options(sub, flags[e], e);
        subs[e] = sub;
    }

    AuditFlags audit;
    auto* audit_cmd = app.add_subcommand("random-audit", "Randomized identity and bound audit");
    audit_cmd->add_option("--seed", audit.seed, "RNG seed");
    audit_cmd->add_option("--samples", audit.samples, "Number of random instances");
    audit_cmd->add_option("--output,-o", audit.output, "Output path (stdout if omitted)");
    audit_cmd->add_option("--format", audit.format, "csv or json");
    audit_cmd->add_flag("--check", audit.check, "Verify invariants and exit 1 on failure");
    audit_cmd->add_flag("--inject-fault", audit.inject_fault)->group("");

    WeakFlags weak;
    auto* weak_cmd = app.add_subcommand("weak-coupling", "Weak-coupling bound on the qubit-oscillator model");
    weak_cmd->add_option("--q1", weak.q1, "Fock-state admixture of the oscillator");
    weak_cmd->add_option("--eps", weak.eps, "Coupling strength");
    weak_cmd->add_option("--t-max", weak.t_max, "End of the time window");
    weak_cmd->add_option("--points", weak.points, "Number of time points");
    weak_cmd->add_option("--trotter-n", weak.trotter_n, "Steps of the first-order product formula");
    weak_cmd->add_option("--n-fock", weak.n_fock, "Oscillator truncation");
    weak_cmd->add_option("--output,-o", weak.output, "Output path (stdout if omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        for (const auto& [e, sub] : subs)
            if (sub->parsed()) return run_example(e, flags[e]);
        if (audit_cmd->parsed()) return run_audit(audit);
        if (weak_cmd->parsed()) return run_weak(weak);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const bounds::IdentityViolation& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return exit_invariant;
    } catch (const experiments::LeakageError& e) {
        std::cerr << "invariant failure: " << e.what() << '\n';
        return exit_invariant;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return exit_invariant;
    }
    return exit_usage;
}

#include "cli_support.hpp"

#include "landauer/temperature.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace landauer::cli {

using experiments::Example;

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool has_kind(Example e) { return e == Example::example2 || e == Example::example4; }

}  // namespace

KeyValues parse_ini(const std::string& text, const std::string& scenario) {
    KeyValues common, specific;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw UsageError("config line " + std::to_string(lineno) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        if (section == scenario)
            specific[key] = value;
        else if (section == "scenario")
            common[key] = value;
    }
    for (auto& [k, v] : specific) common[k] = v;
    return common;
}

KeyValues read_ini(const std::string& path, const std::string& scenario) {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot read config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_ini(ss.str(), scenario);
}

KeyValues parse_assignments(const std::vector<std::string>& items) {
    KeyValues out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--set expects key=value, got: " + item);
        const std::string key = trim(item.substr(0, eq));
        if (!out.emplace(key, trim(item.substr(eq + 1))).second)
            throw UsageError("--set gives key twice: " + key);
    }
    return out;
}

KeyValues merge_flags(const KeyValues& dedicated, const KeyValues& assignments) {
    KeyValues out = dedicated;
    for (const auto& [k, v] : assignments) {
        if (out.count(k)) throw UsageError("conflicting values for '" + k + "' from a flag and --set");
        out[k] = v;
    }
    return out;
}

std::vector<std::string> accepted_keys(Example e) {
    std::vector<std::string> keys;
    for (const auto& [k, v] : experiments::default_parameters(e)) keys.push_back(k);
    for (const char* k : {"p", "t_max", "points", "estimator", "output", "format"}) keys.emplace_back(k);
    if (has_kind(e)) keys.emplace_back("kind");
    return keys;
}

double parse_number(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
        throw UsageError("malformed number for '" + key + "': " + text);
    if (!std::isfinite(v)) throw UsageError("value for '" + key + "' must be finite");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) out.push_back(parse_number(key, item));
    if (out.empty()) throw UsageError("empty list for '" + key + "'");
    return out;
}

Format parse_format(const std::string& s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw UsageError("unknown format: " + s);
}

RunConfig resolve(Example e, const KeyValues& file, const KeyValues& flags) {
    const auto keys = accepted_keys(e);
    KeyValues merged;
    for (const auto* src : {&file, &flags}) {
        for (const auto& [k, v] : *src) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end())
                throw UsageError("unknown key for " + experiments::to_string(e) + ": " + k);
            merged[k] = v;
        }
    }

    RunConfig cfg;
    cfg.example = e;
    cfg.request.example = e;
    const auto params = experiments::default_parameters(e);
    for (const auto& [k, v] : merged) {
        if (params.count(k)) {
            cfg.request.parameters[k] = parse_number(k, v);
        } else if (k == "p") {
            cfg.request.grid.sweep_values = parse_list(k, v);
        } else if (k == "t_max") {
            cfg.request.grid.t_max = parse_number(k, v);
        } else if (k == "points") {
            const double n = parse_number(k, v);
            if (n < 0 || n != std::floor(n) || n > 1e7) throw UsageError("points must be a nonnegative integer");
            cfg.request.grid.points = static_cast<int>(n);
        } else if (k == "estimator") {
            try {
                cfg.request.grid.estimator = temperature::method_from_string(v);
            } catch (const std::invalid_argument& ex) {
                throw UsageError(ex.what());
            }
        } else if (k == "kind") {
            try {
                cfg.request.kind = experiments::state_kind_from_string(v);
            } catch (const std::invalid_argument& ex) {
                throw UsageError(ex.what());
            }
        } else if (k == "output") {
            cfg.output_path = v;
        } else if (k == "format") {
            cfg.format = parse_format(v);
        }
    }
    return cfg;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, ptr);
}

namespace {

struct Column {
    std::string name;
    double value;
};

std::vector<Column> row_columns(const experiments::SweepRow& row, bool finite, bool temperatures) {
    const auto& l = row.ledger;
    std::vector<Column> c{{"sweep_value", row.sweep_value},
                          {"time", row.time},
                          {"delta_S", l.delta_S},
                          {"beta_dQ_E", l.beta_dQ_E},
                          {"weighted_charge_sum", l.weighted_charge_sum},
                          {"sigma_old", l.sigma_old},
                          {"sigma_mod", l.sigma_mod},
                          {"D_initial", l.D_initial},
                          {"D_final", l.D_final},
                          {"I_initial", l.I_initial},
                          {"I_final", l.I_final},
                          {"work", l.work},
                          {"identity_residual", l.identity_residual},
                          {"sigma0_initial", l.sigma0_initial},
                          {"sigma0_final", l.sigma0_final}};
    if (finite) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const auto* f = row.finite ? &*row.finite : nullptr;
        c.push_back({"delta_Q_S", f ? f->delta_Q_S : nan});
        c.push_back({"delta_Q_int", f ? f->delta_Q_int : nan});
        c.push_back({"K_term", f ? f->K_term : nan});
        c.push_back({"sigma_tau", f ? f->sigma_tau : nan});
        c.push_back({"relent_drop", f ? f->relent_drop : nan});
    }
    if (temperatures) {
        for (std::size_t k = 0; k < row.temperatures.size(); ++k)
            c.push_back({"potential_" + std::to_string(k), row.temperatures[k].inverse_temperature});
    }
    return c;
}

bool any_finite(const experiments::SweepResult& r) {
    return std::any_of(r.rows.begin(), r.rows.end(), [](const auto& row) { return row.finite.has_value(); });
}

}  // namespace

std::vector<std::string> csv_columns(const experiments::SweepResult& r, bool temperatures) {
    experiments::SweepRow probe;
    if (!r.rows.empty()) probe = r.rows.front();
    std::vector<std::string> names;
    for (const auto& c : row_columns(probe, any_finite(r), temperatures)) names.push_back(c.name);
    return names;
}

std::string to_csv(const experiments::SweepResult& r, bool temperatures) {
    std::string out;
    const auto names = csv_columns(r, temperatures);
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? "," : "") + names[i];
    out += '\n';
    const bool finite = any_finite(r);
    for (const auto& row : r.rows) {
        const auto cols = row_columns(row, finite, temperatures);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out += ',';
            out += format_double(cols[i].value);
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const experiments::SweepResult& r, bool temperatures) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    const bool finite = any_finite(r);
    for (const auto& row : r.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (const auto& c : row_columns(row, finite, temperatures)) {
            if (std::isfinite(c.value))
                obj[c.name] = c.value;
            else
                obj[c.name] = nullptr;
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(1) + "\n";
}

std::string weak_coupling_csv(const experiments::Example5Params& p, double q1, double eps, double t_max, int points,
                              int trotter_n) {
    experiments::GridOptions g;
    g.sweep_values = {q1};
    g.points = 1;
    const auto s = experiments::example5(p, g);
    const auto& ft = *s.finite_time;
    const auto [rho_S0, rho_E0] = ft.product_state(q1);
    const qcore::Observable unit_coupling = ft.h_int * (1.0 / p.kappa);
    const double beta_tilde = temperature::spectral_temperature(rho_E0, ft.h_E).inverse_temperature;

    std::string out =
        "tau,value,delta_S,delta_Q_E,delta_Q_int_free,K_term,coupling_strength,first_order_error,n_convergence\n";
    for (double tau : experiments::uniform_grid(t_max, points)) {
        const auto w = bounds::weak_coupling_bound(rho_S0, rho_E0, ft.h_S, ft.h_E, unit_coupling, eps, tau, trotter_n,
                                                   beta_tilde);
        for (double v : {tau, w.value, w.delta_S, w.delta_Q_E, w.delta_Q_int_free, w.K_term, w.coupling_strength,
                         w.first_order_error})
            out += format_double(v) + ",";
        out += format_double(w.n_convergence) + "\n";
    }
    return out;
}

}  // namespace landauer::cli

#include "landauer/temperature.hpp"

#include "landauer/thermo.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace landauer::temperature {

namespace {

// Populations below this are numerical zeros and get floored to w_floor.
constexpr double w_zero = 1e-14;

std::vector<double> populations_in(const qcore::EigenDecomposition& ed, const QuantumState& rho) {
    const qcore::Matrix rot = ed.vectors.adjoint() * rho.matrix() * ed.vectors;
    std::vector<double> p(static_cast<std::size_t>(rot.rows()));
    for (Eigen::Index i = 0; i < rot.rows(); ++i) p[static_cast<std::size_t>(i)] = rot(i, i).real();
    return p;
}

void require_match(const QuantumState& rho, const Observable& h, const char* what) {
    if (rho.dim() != h.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

std::string note(const std::string& key, double v) {
    std::ostringstream os;
    os << key << '=' << v;
    return os.str();
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::spectral: return "spectral";
        case Method::cold: return "cold";
        case Method::hot: return "hot";
        case Method::energy_matched: return "energy";
    }
    return "unknown";
}

Method method_from_string(const std::string& s) {
    if (s == "spectral") return Method::spectral;
    if (s == "cold") return Method::cold;
    if (s == "hot") return Method::hot;
    if (s == "energy" || s == "energy_matched") return Method::energy_matched;
    throw std::invalid_argument("unknown temperature estimator: " + s);
}

double TemperatureEstimate::temperature() const {
    if (!defined) return std::numeric_limits<double>::quiet_NaN();
    if (inverse_temperature == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / inverse_temperature;
}

double default_group_tol(const Observable& h) {
    const auto ed = qcore::eigh(h);
    return 1e-8 * (ed.values.maxCoeff() - ed.values.minCoeff());
}

SpectrumDecomposition decompose_spectrum(const QuantumState& rho, const Observable& h, double group_tol) {
    require_match(rho, h, "decompose_spectrum");
    const auto ed = qcore::eigh(h);
    const auto pops = populations_in(ed, rho);

    SpectrumDecomposition out{{}, group_tol};
    double energy_sum = 0.0;
    for (Eigen::Index k = 0; k < ed.values.size(); ++k) {
        const double e = ed.values(k);
        const bool new_level = out.levels.empty() || e - ed.values(k - 1) > group_tol;
        if (new_level) {
            if (!out.levels.empty()) out.levels.back().energy = energy_sum / static_cast<double>(out.levels.back().degeneracy);
            out.levels.push_back({e, 0, 0.0});
            energy_sum = 0.0;
        }
        auto& lvl = out.levels.back();
        lvl.degeneracy += 1;
        lvl.population += pops[static_cast<std::size_t>(k)];
        energy_sum += e;
    }
    out.levels.back().energy = energy_sum / static_cast<double>(out.levels.back().degeneracy);
    return out;
}

SpectrumDecomposition decompose_spectrum(const QuantumState& rho, const Observable& h) {
    return decompose_spectrum(rho, h, default_group_tol(h));
}

TemperatureEstimate spectral_temperature(const QuantumState& rho, const Observable& h) {
    const auto spec = decompose_spectrum(rho, h);
    const auto& lv = spec.levels;
    if (lv.size() < 2) throw std::invalid_argument("spectral_temperature: Hamiltonian has a single energy level");

    TemperatureEstimate est{Method::spectral, 0.0, true, {}};
    est.diagnostics.push_back(note("levels", static_cast<double>(lv.size())));

    const double denom = 1.0 - 0.5 * (lv.front().population + lv.back().population);
    if (!(denom > 0.0)) {
        est.defined = false;
        est.diagnostics.emplace_back("normalization diverges: all population on the extreme levels");
        return est;
    }
    const double norm = -1.0 / denom;

    std::size_t floored = 0;
    std::vector<double> w(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) {
        w[i] = lv[i].population;
        if (w[i] < w_zero) {
            w[i] = w_floor;
            ++floored;
        }
    }
    if (floored > 0) est.diagnostics.push_back(note("degenerate: floored levels", static_cast<double>(floored)));

    double sum = 0.0;
    for (std::size_t i = 1; i < lv.size(); ++i) {
        const double slope = (std::log(w[i] / static_cast<double>(lv[i].degeneracy)) -
                              std::log(w[i - 1] / static_cast<double>(lv[i - 1].degeneracy))) /
                             (lv[i].energy - lv[i - 1].energy);
        sum += 0.5 * (lv[i].population + lv[i - 1].population) * slope;
    }
    est.inverse_temperature = norm * sum;
    return est;
}

std::pair<TemperatureEstimate, TemperatureEstimate> cold_hot_temperature(const QuantumState& rho, const Observable& h,
                                                                         ColdHotOptions opts) {
    require_match(rho, h, "cold_hot_temperature");
    if (rho.dim() < 2) throw std::invalid_argument("cold_hot_temperature: dimension must be at least 2");
    const auto ed = qcore::eigh(h);
    const auto p = populations_in(ed, rho);
    const double gtol = 1e-8 * (ed.values.maxCoeff() - ed.values.minCoeff());

    double t_min = std::numeric_limits<double>::infinity();
    double t_max = -std::numeric_limits<double>::infinity();
    std::size_t admitted = 0, degenerate = 0, unsupported = 0, infinite = 0, negative = 0;
    const std::size_t d = p.size();
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const double gap = ed.values(static_cast<Eigen::Index>(j)) - ed.values(static_cast<Eigen::Index>(i));
            if (gap <= gtol) {
                ++degenerate;
                continue;
            }
            if (p[i] <= qcore::tol_supp || p[j] <= qcore::tol_supp) {
                ++unsupported;
                continue;
            }
            const double lr = std::log(p[i] / p[j]);
            const double t = gap / lr;
            if (lr == 0.0 || !std::isfinite(t)) {
                ++infinite;
                continue;
            }
            if (t < 0.0) {
                ++negative;
                if (!opts.admit_negative) continue;
            }
            ++admitted;
            t_min = std::min(t_min, t);
            t_max = std::max(t_max, t);
        }
    }
    if (admitted == 0) throw std::domain_error("cold_hot_temperature: no admissible level pair");

    std::vector<std::string> diag{note("pairs", static_cast<double>(admitted)),
                                  note("excluded_degenerate", static_cast<double>(degenerate)),
                                  note("excluded_support", static_cast<double>(unsupported)),
                                  note("excluded_infinite", static_cast<double>(infinite)),
                                  note("negative", static_cast<double>(negative))};
    TemperatureEstimate cold{Method::cold, 1.0 / t_min, true, diag};
    TemperatureEstimate hot{Method::hot, 1.0 / t_max, true, diag};
    return {cold, hot};
}

TemperatureEstimate energy_matched_temperature(const QuantumState& rho, const Observable& h) {
    require_match(rho, h, "energy_matched_temperature");
    const auto ed = qcore::eigh(h);
    const qcore::RealVector& e = ed.values;
    const double lo_e = e.minCoeff();
    const double hi_e = e.maxCoeff();
    const double span = hi_e - lo_e;
    if (!(span > 0.0)) throw std::invalid_argument("energy_matched_temperature: Hamiltonian has a single energy level");

    const double target = h.expectation(rho);
    const double edge = 1e-12 * span;
    if (!(target > lo_e + edge && target < hi_e - edge))
        throw std::domain_error("energy_matched_temperature: target energy outside the open spectral interval");

    const double beta_max = 1e4 / span;
    auto f = [&](double b) { return thermo::gibbs_energy(e, b) - target; };
    double lo = -beta_max, hi = beta_max;
    double f_lo = f(lo), f_hi = f(hi);
    if (!(f_lo > 0.0 && f_hi < 0.0))
        throw std::domain_error("energy_matched_temperature: target energy not bracketed on the search interval");

    const double slack = 1e-14 * span;
    int iterations = 0;
    double mid = 0.0, f_mid = 0.0;
    for (; iterations < 400; ++iterations) {
        mid = 0.5 * (lo + hi);
        f_mid = f(mid);
        if (f_mid > f_lo + slack || f_mid < f_hi - slack)
            throw std::logic_error("energy_matched_temperature: Gibbs energy is not monotone in beta");
        if (f_mid == 0.0) break;
        if (f_mid > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) break;
    }

    TemperatureEstimate est{Method::energy_matched, mid, true, {}};
    est.diagnostics.push_back(note("bisection iterations", iterations));
    est.diagnostics.push_back(note("residual", std::abs(f_mid)));
    if (std::abs(f_mid) > 1e-10 * span) {
        est.defined = false;
        est.diagnostics.emplace_back("residual above 1e-10 of the spectral span");
    }
    return est;
}

TemperatureEstimate estimate(Method method, const QuantumState& rho, const Observable& h) {
    switch (method) {
        case Method::spectral: return spectral_temperature(rho, h);
        case Method::cold: return cold_hot_temperature(rho, h).first;
        case Method::hot: return cold_hot_temperature(rho, h).second;
        case Method::energy_matched: return energy_matched_temperature(rho, h);
    }
    throw std::invalid_argument("estimate: unknown method");
}

double calibrate_seed_beta(Method method, const std::function<QuantumState(double)>& seed, const Observable& h,
                           double target_T) {
    if (!(target_T > 0.0) || !std::isfinite(target_T))
        throw std::invalid_argument("calibrate_seed_beta: target temperature must be positive and finite");
    const double target_beta = 1.0 / target_T;
    auto g = [&](double log_beta) {
        const auto est = estimate(method, seed(std::exp(log_beta)), h);
        if (!est.defined) throw std::domain_error("calibrate_seed_beta: estimator undefined at trial seed");
        return est.inverse_temperature - target_beta;
    };
    // Widen the bracket by factors of two in beta, at most a factor 1e3 either way.
    const double center = std::log(target_beta);
    const double reach = std::log(1e3);
    const double step = std::log(2.0);
    double lo = center, hi = center;
    double g_lo = g(lo), g_hi = g_lo;
    if (g_lo == 0.0) return target_beta;
    while (g_lo >= 0.0 && center - lo < reach) g_lo = g(lo -= step);
    while (g_hi <= 0.0 && hi - center < reach) g_hi = g(hi += step);
    if (!(g_lo < 0.0 && g_hi > 0.0)) throw std::domain_error("calibrate_seed_beta: target not bracketed");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (gm == 0.0) return std::exp(mid);
        if (gm < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double beta = std::exp(0.5 * (lo + hi));
    if (std::abs(g(0.5 * (lo + hi))) > 1e-9 * std::max(1.0, target_beta))
        throw std::domain_error("calibrate_seed_beta: estimator is discontinuous at the target temperature");
    return beta;
}

}  // namespace landauer::temperature

// temperature.hpp - non-equilibrium temperature estimators for athermal
// environment states: spectral, cold/hot pair extremes and energy matching.

#pragma once

#include "landauer/qcore.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace landauer::temperature {

using qcore::Observable;
using qcore::QuantumState;

struct Level {
    double energy;
    std::size_t degeneracy;
    double population;
};

struct SpectrumDecomposition {
    std::vector<Level> levels;  // strictly ascending in energy
    double group_tol;
};

enum class Method { spectral, cold, hot, energy_matched };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

struct TemperatureEstimate {
    Method method;
    /// 1/T; zero encodes infinite temperature. Meaningless when !defined.
    double inverse_temperature = 0.0;
    bool defined = true;
    std::vector<std::string> diagnostics;

    /// T = 1/beta, +inf at beta = 0, NaN when undefined.
    [[nodiscard]] double temperature() const;
};

inline constexpr double w_floor = 1e-300;

/// Default grouping tolerance: 1e-8 of the spectral span of h.
double default_group_tol(const Observable& h);

SpectrumDecomposition decompose_spectrum(const QuantumState& rho, const Observable& h, double group_tol);
SpectrumDecomposition decompose_spectrum(const QuantumState& rho, const Observable& h);

/// Degeneracy-weighted average of log-population slopes between adjacent
/// energy levels. Throws std::invalid_argument for a single-level h.
TemperatureEstimate spectral_temperature(const QuantumState& rho, const Observable& h);

struct ColdHotOptions {
    bool admit_negative = false;
};

/// Min and max of the two-level temperatures T_ij over admissible level
/// pairs. Throws std::domain_error if no pair is admissible.
std::pair<TemperatureEstimate, TemperatureEstimate> cold_hot_temperature(const QuantumState& rho, const Observable& h,
                                                                         ColdHotOptions opts = {});

/// beta* such that the Gibbs state of h at beta* has the mean energy of rho.
TemperatureEstimate energy_matched_temperature(const QuantumState& rho, const Observable& h);

/// Dispatch on `method`; cold/hot select the respective member of the pair.
TemperatureEstimate estimate(Method method, const QuantumState& rho, const Observable& h);

/// Seed inverse temperature beta such that estimate(method, seed(beta), h)
/// reports temperature `target_T`, found by bisection in log(beta).
double calibrate_seed_beta(Method method, const std::function<QuantumState(double)>& seed, const Observable& h,
                           double target_T);

}  // namespace landauer::temperature

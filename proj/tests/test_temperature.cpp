#include "doctest.h"

#include "landauer/experiments.hpp"
#include "landauer/operators.hpp"
#include "landauer/temperature.hpp"
#include "landauer/thermo.hpp"
#include "support.hpp"

#include <cmath>

using namespace landauer;
using qcore::FactorShape;
using qcore::Matrix;
using qcore::Observable;
using qcore::QuantumState;
using temperature::Method;
using testsupport::Gen;

namespace {

Matrix diag(std::initializer_list<double> v) {
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) m(i, i) = x, ++i;
    return m;
}

/// Random Hamiltonian rescaled to unit spectral span.
Observable unit_span_hamiltonian(Gen& g, Eigen::Index d) {
    const Matrix h = g.hermitian(d);
    Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
    const double span = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
    return Observable(Matrix(h / span));
}

}  // namespace

TEST_CASE("spectrum decomposition groups degenerate levels") {
    const Observable h(diag({0.0, 1.0, 1.0, 2.0}));
    const auto rho = QuantumState::maximally_mixed(FactorShape({4}));
    const auto s = temperature::decompose_spectrum(rho, h, 1e-8);
    REQUIRE(s.levels.size() == 3);
    CHECK(s.levels[0].energy == doctest::Approx(0.0));
    CHECK(s.levels[0].degeneracy == 1);
    CHECK(s.levels[1].energy == doctest::Approx(1.0));
    CHECK(s.levels[1].degeneracy == 2);
    CHECK(s.levels[2].degeneracy == 1);
    CHECK(s.levels[0].population == doctest::Approx(0.25));
    CHECK(s.levels[1].population == doctest::Approx(0.5));
    CHECK(s.levels[2].population == doctest::Approx(0.25));
    CHECK_THROWS_AS(temperature::decompose_spectrum(QuantumState::basis(3, 0), h), std::invalid_argument);
}

TEST_CASE("spectrum decomposition is normalized") {
    Gen g(51);
    for (int rep = 0; rep < 100; ++rep) {
        const auto d = static_cast<std::size_t>(g.integer(2, 8));
        const QuantumState rho(g.density(d), FactorShape({d}));
        const auto s = temperature::decompose_spectrum(rho, Observable(g.hermitian(d)));
        double total = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < s.levels.size(); ++i) {
            total += s.levels[i].population;
            count += s.levels[i].degeneracy;
            if (i > 0) CHECK(s.levels[i].energy > s.levels[i - 1].energy);
        }
        CHECK(std::abs(total - 1.0) <= 1e-10);
        CHECK(count == d);
    }
}

TEST_CASE("spectral temperature") {
    const Observable h(diag({0.0, 1.0, 2.0}));
    const auto est = temperature::spectral_temperature(thermo::gibbs_state(h, 1.0), h);
    CHECK(est.defined);
    CHECK(std::abs(est.inverse_temperature - 1.0) <= 1e-9);

    const auto flat = temperature::spectral_temperature(QuantumState::maximally_mixed(FactorShape({3})), h);
    CHECK(std::abs(flat.inverse_temperature) < 1e-15);
    CHECK(flat.temperature() == std::numeric_limits<double>::infinity());

    const Observable q(diag({0.0, 1.0}));
    const auto inv = temperature::spectral_temperature(QuantumState(diag({0.3, 0.7})), q);
    const double norm = -1.0 / (1.0 - (0.3 + 0.7) / 2.0);
    const double expect = norm * 0.5 * (0.3 + 0.7) * std::log(0.7 / 0.3);
    CHECK(expect < 0.0);
    CHECK(inv.inverse_temperature == doctest::Approx(expect).epsilon(1e-13));
    CHECK(inv.inverse_temperature == doctest::Approx(std::log(3.0 / 7.0)).epsilon(1e-13));

    CHECK_THROWS_AS(temperature::spectral_temperature(QuantumState::basis(2, 0), Observable(Matrix::Identity(2, 2))),
                    std::invalid_argument);
}

TEST_CASE("spectral temperature floors empty interior levels") {
    const Observable h(diag({0.0, 1.0, 2.0}));
    const auto hole = temperature::spectral_temperature(QuantumState(diag({0.6, 0.0, 0.4})), h);
    CHECK(hole.defined);
    CHECK(std::isfinite(hole.inverse_temperature));
    bool flagged = false;
    for (const auto& d : hole.diagnostics) flagged = flagged || d.find("degenerate") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("cold and hot temperatures") {
    Gen g(52);
    const Observable h(g.hermitian(4));
    const auto [cold, hot] = temperature::cold_hot_temperature(thermo::gibbs_state(h, 0.8), h);
    CHECK(cold.temperature() == doctest::Approx(1.25).epsilon(1e-9));
    CHECK(hot.temperature() == doctest::Approx(1.25).epsilon(1e-9));

    // Equal populations on levels 0 and 1 make that pair infinite; the others stay.
    const Observable h3(diag({0.0, 1.0, 2.0}));
    const auto [c3, h3t] = temperature::cold_hot_temperature(QuantumState(diag({0.4, 0.4, 0.2})), h3);
    const double t02 = 2.0 / std::log(0.4 / 0.2), t12 = 1.0 / std::log(0.4 / 0.2);
    CHECK(c3.temperature() == doctest::Approx(std::min(t02, t12)));
    CHECK(h3t.temperature() == doctest::Approx(std::max(t02, t12)));
    bool excluded = false;
    for (const auto& d : c3.diagnostics) excluded = excluded || d == "excluded_infinite=1";
    CHECK(excluded);

    // Full inversion: only negative pairs, admitted on request.
    const Observable q(diag({0.0, 1.0}));
    const QuantumState inverted(diag({0.3, 0.7}));
    CHECK_THROWS_AS(temperature::cold_hot_temperature(inverted, q), std::domain_error);
    temperature::ColdHotOptions opts;
    opts.admit_negative = true;
    const auto [cn, hn] = temperature::cold_hot_temperature(inverted, q, opts);
    CHECK(cn.temperature() == doctest::Approx(1.0 / std::log(0.3 / 0.7)));
}

TEST_CASE("energy matched temperature") {
    Gen g(53);
    const Observable h(g.hermitian(5));
    const auto est = temperature::energy_matched_temperature(thermo::gibbs_state(h, 2.0), h);
    CHECK(std::abs(est.inverse_temperature - 2.0) <= 1e-8);
    const auto flat = temperature::energy_matched_temperature(QuantumState::maximally_mixed(FactorShape({5})), h);
    CHECK(std::abs(flat.inverse_temperature) <= 1e-10);
    const Observable q(diag({0.0, 1.0}));
    CHECK_THROWS_AS(temperature::energy_matched_temperature(QuantumState::basis(2, 0), q), std::domain_error);
    const auto negative = temperature::energy_matched_temperature(QuantumState(diag({0.3, 0.7})), q);
    CHECK(negative.inverse_temperature == doctest::Approx(std::log(0.3 / 0.7)).epsilon(1e-10));
}

TEST_CASE("energy matched temperature of the qutrit environment matches a grid scan") {
    experiments::Example3Params p;
    const auto env = qcore::partial_trace(experiments::example3_state(p, 0.5), {1});
    const std::vector<double> levels{-1.0, 0.0, 1.0};
    const Observable h(ops::qutrit_z());
    const double target = h.expectation(env);
    auto energy = [&](double beta) {
        const auto w = testsupport::boltzmann(levels, beta);
        return w[0] * levels[0] + w[1] * levels[1] + w[2] * levels[2];
    };
    double oracle = std::nan("");
    const double step = 1e-4;
    for (double b = -10.0; b < 10.0; b += step) {
        const double e0 = energy(b) - target, e1 = energy(b + step) - target;
        if (e0 >= 0.0 && e1 < 0.0) {
            oracle = b + step * e0 / (e0 - e1);
            break;
        }
    }
    REQUIRE(std::isfinite(oracle));
    const auto est = temperature::energy_matched_temperature(env, h);
    CHECK(std::abs(est.inverse_temperature - oracle) <= 1e-6);
}

TEST_CASE("estimator dispatch and names") {
    for (auto m : {Method::spectral, Method::cold, Method::hot, Method::energy_matched})
        CHECK(temperature::method_from_string(temperature::to_string(m)) == m);
    CHECK(temperature::method_from_string("energy") == Method::energy_matched);
    CHECK_THROWS_AS(temperature::method_from_string("warm"), std::invalid_argument);
}

TEST_CASE("seed calibration reaches the requested temperature") {
    const Observable h(ops::qutrit_z());
    auto gibbs_seed = [&](double beta) { return thermo::gibbs_state(h, beta); };
    auto mixed_seed = [&](double beta) {
        return QuantumState::mix(thermo::gibbs_state(h, beta), QuantumState::maximally_mixed(FactorShape({3})), 0.2);
    };
    for (auto m : {Method::spectral, Method::cold, Method::hot, Method::energy_matched}) {
        CHECK(temperature::calibrate_seed_beta(m, gibbs_seed, h, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
        try {
            const double b = temperature::calibrate_seed_beta(m, mixed_seed, h, 1.0);
            CHECK(temperature::estimate(m, mixed_seed(b), h).temperature() == doctest::Approx(1.0).epsilon(1e-9));
        } catch (const std::domain_error&) {
            // The pair extremes jump when two populations cross; calibration must say so.
            CHECK((m == Method::cold || m == Method::hot));
        }
    }
    CHECK_THROWS_AS(temperature::calibrate_seed_beta(Method::spectral, gibbs_seed, h, -1.0), std::invalid_argument);
}

TEST_CASE("property: all estimators recover the canonical temperature of Gibbs states") {
    Gen g(54);
    for (int rep = 0; rep < 50; ++rep) {
        const auto d = g.integer(2, 10);
        const Observable h = unit_span_hamiltonian(g, d);
        for (double beta : {0.1, 1.0, 10.0}) {
            const auto gs = thermo::gibbs_state(h, beta);
            const auto spectral = temperature::spectral_temperature(gs, h);
            const auto [cold, hot] = temperature::cold_hot_temperature(gs, h);
            const auto matched = temperature::energy_matched_temperature(gs, h);
            CHECK(std::abs(spectral.inverse_temperature - beta) <= 1e-8);
            CHECK(std::abs(cold.inverse_temperature - beta) <= 1e-8);
            CHECK(std::abs(hot.inverse_temperature - beta) <= 1e-8);
            CHECK(std::abs(matched.inverse_temperature - beta) <= 1e-8);
            CHECK(cold.temperature() <= hot.temperature());
        }
    }
}

TEST_CASE("property: cold never exceeds hot on random states") {
    Gen g(55);
    for (int rep = 0; rep < 300; ++rep) {
        const auto d = static_cast<std::size_t>(g.integer(2, 6));
        const Observable h(g.hermitian(d));
        const QuantumState rho(g.density(d), FactorShape({d}));
        try {
            const auto [cold, hot] = temperature::cold_hot_temperature(rho, h);
            CHECK(cold.temperature() <= hot.temperature());
        } catch (const std::domain_error&) {
        }
    }
}

TEST_CASE("spectral temperature is continuous along the mixed Bell family") {
    const experiments::Example1Params p;
    const double seed = experiments::example1_seed_beta(p, Method::spectral);
    const Observable h(ops::qutrit_z());
    double last = std::nan("");
    for (int k = 0; k < 100; ++k) {
        const double mix = 0.3 * k / 99.0;
        const auto env = qcore::partial_trace(experiments::example1_state(p, seed, mix), {1});
        const auto est = temperature::spectral_temperature(env, h);
        REQUIRE(est.defined);
        CHECK(std::isfinite(est.inverse_temperature));
        if (k > 0) CHECK(std::abs(est.inverse_temperature - last) < 0.05);
        last = est.inverse_temperature;
    }
}

TEST_CASE("cold and hot bracket the spectral temperature along the mixed Bell family") {
    const experiments::Example1Params p;
    const double seed = experiments::example1_seed_beta(p, Method::spectral);
    const Observable h(ops::qutrit_z());
    for (double mix : {0.0, 0.1, 0.2, 0.3}) {
        const auto env = qcore::partial_trace(experiments::example1_state(p, seed, mix), {1});
        const auto [cold, hot] = temperature::cold_hot_temperature(env, h);
        const double ts = temperature::spectral_temperature(env, h).temperature();
        CHECK(cold.temperature() <= ts + 1e-9);
        CHECK(ts <= hot.temperature() + 1e-9);
    }
}

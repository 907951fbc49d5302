#include "doctest.h"

#include "landauer/operators.hpp"
#include "landauer/qcore.hpp"
#include "support.hpp"

#include <algorithm>
#include <numbers>

using namespace landauer;
using qcore::FactorShape;
using qcore::Matrix;
using qcore::Observable;
using qcore::QuantumState;
using qcore::UnitaryOp;
using testsupport::Gen;

namespace {

QuantumState state(const Matrix& m, std::vector<std::size_t> dims) { return QuantumState(m, FactorShape(dims)); }

}  // namespace

TEST_CASE("factor shapes validate and compose") {
    CHECK_THROWS_AS(FactorShape(std::vector<std::size_t>{}), std::invalid_argument);
    CHECK_THROWS_AS(FactorShape({2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(FactorShape({2, 3}, {"S"}), std::invalid_argument);
    const FactorShape s({2, 3, 4}, {"S", "E1", "E2"});
    CHECK(s.total() == 24);
    CHECK(s.select({0, 2}).dims == std::vector<std::size_t>{2, 4});
    CHECK(s.concat(FactorShape::single(5)).total() == 120);
    CHECK_THROWS_AS((void)s.select({3}), std::out_of_range);
}

TEST_CASE("states reject invalid matrices") {
    Matrix m = Matrix::Identity(2, 2) / 2.0;
    CHECK_NOTHROW(QuantumState{m});
    CHECK_THROWS_AS(QuantumState(Matrix::Identity(2, 2)), std::invalid_argument);
    Matrix nonherm = m;
    nonherm(0, 1) = 0.1;
    CHECK_THROWS_AS(QuantumState{nonherm}, std::invalid_argument);
    Matrix negative(2, 2);
    negative << 1.5, 0, 0, -0.5;
    CHECK_THROWS_AS(QuantumState{negative}, std::invalid_argument);
    CHECK_THROWS_AS(QuantumState(m, FactorShape({3})), std::invalid_argument);
    CHECK_THROWS_AS(QuantumState(Matrix(2, 3)), std::invalid_argument);
    Matrix nonherm_obs = Matrix::Zero(2, 2);
    nonherm_obs(0, 1) = 1.0;
    CHECK_THROWS_AS(Observable{nonherm_obs}, std::invalid_argument);
    CHECK_THROWS_AS(UnitaryOp(2.0 * Matrix::Identity(2, 2), FactorShape({2})), std::invalid_argument);
}

TEST_CASE("tensor of maximally mixed qubits") {
    const auto half = QuantumState::maximally_mixed(FactorShape({2}));
    const auto t = qcore::tensor(half, half);
    CHECK(t.shape().dims == std::vector<std::size_t>{2, 2});
    CHECK(qcore::max_abs(t.matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-15);
}

TEST_CASE("tensor of basis states") {
    const auto t = qcore::tensor(QuantumState::basis(2, 0), QuantumState::basis(2, 1));
    CHECK(qcore::max_abs(t.matrix() - ops::outer(4, 1, 1)) < 1e-15);
}

TEST_CASE("tensor matches the four-index oracle") {
    Gen g(11);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix a = g.density(2), b = g.density(3);
        const auto t = qcore::tensor(state(a, {2}), state(b, {3}));
        CHECK(qcore::max_abs(t.matrix() - testsupport::kron(a, b)) < 1e-15);
        const Observable oa(g.hermitian(3)), ob(g.hermitian(2), qcore::Unit::dimensionless);
        const auto to = qcore::tensor(oa, ob);
        CHECK(qcore::max_abs(to.matrix() - testsupport::kron(oa.matrix(), ob.matrix())) < 1e-14);
        CHECK(to.shape().dims == std::vector<std::size_t>{3, 2});
    }
}

TEST_CASE("partial trace of a product state") {
    Gen g(12);
    const Matrix a = g.density(2), b = g.density(3);
    const auto ab = qcore::tensor(state(a, {2}), state(b, {3}));
    CHECK(qcore::max_abs(qcore::partial_trace(ab, {0}).matrix() - a) < 1e-14);
    CHECK(qcore::max_abs(qcore::partial_trace(ab, {1}).matrix() - b) < 1e-14);
}

TEST_CASE("partial trace of a Bell state is maximally mixed") {
    qcore::Vector phi = qcore::Vector::Zero(4);
    phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
    const auto bell = QuantumState::pure(phi, FactorShape({2, 2}));
    CHECK(qcore::max_abs(qcore::partial_trace(bell, {0}).matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-15);
}

TEST_CASE("partial trace matches index summation") {
    Gen g(13);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix rho = g.density(6);
        const auto s = state(rho, {2, 3});
        CHECK(qcore::max_abs(qcore::partial_trace(s, {1}).matrix() - testsupport::trace_out_first(rho, 2, 3)) < 1e-12);
        CHECK(qcore::max_abs(qcore::partial_trace(s, {0}).matrix() - testsupport::trace_out_second(rho, 2, 3)) <
              1e-12);
    }
}

TEST_CASE("partial trace over three factors keeps the requested order") {
    Gen g(14);
    const Matrix a = g.density(2), b = g.density(3), c = g.density(2);
    const auto abc = qcore::tensor(qcore::tensor(state(a, {2}), state(b, {3})), state(c, {2}));
    const auto ac = qcore::partial_trace(abc, {2, 0});
    CHECK(ac.shape().dims == std::vector<std::size_t>{2, 2});
    CHECK(qcore::max_abs(ac.matrix() - testsupport::kron(a, c)) < 1e-14);
    CHECK_THROWS_AS(qcore::partial_trace(abc, {3}), std::out_of_range);
    CHECK_THROWS_AS(qcore::partial_trace(abc, {}), std::invalid_argument);
    CHECK_THROWS_AS(qcore::partial_trace(abc, {1, 1}), std::invalid_argument);
    CHECK(qcore::complement({0, 2}, 4) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("eigh on simple inputs") {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = 0;
    d(1, 1) = 1;
    d(2, 2) = 2;
    const auto ed = qcore::eigh(d);
    CHECK(ed.values(0) == doctest::Approx(0.0));
    CHECK(ed.values(1) == doctest::Approx(1.0));
    CHECK(ed.values(2) == doctest::Approx(2.0));
    CHECK(qcore::max_abs(ed.vectors.cwiseAbs() - Matrix::Identity(3, 3).cwiseAbs()) < 1e-14);
    const auto ex = qcore::eigh(ops::sigma_x());
    CHECK(ex.values(0) == doctest::Approx(-1.0));
    CHECK(ex.values(1) == doctest::Approx(1.0));
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(qcore::eigh(bad), std::invalid_argument);
}

TEST_CASE("eigh reconstructs random Hermitian matrices") {
    Gen g(15);
    for (int d : {2, 8, 32, 128}) {
        const Matrix h = g.hermitian(d);
        const auto ed = qcore::eigh(h);
        const Matrix back = ed.vectors * ed.values.cast<qcore::cplx>().asDiagonal() * ed.vectors.adjoint();
        CHECK(qcore::max_abs(back - h) <= 1e-10);
        for (Eigen::Index i = 1; i < ed.values.size(); ++i) CHECK(ed.values(i) >= ed.values(i - 1));
    }
}

TEST_CASE("unitary from Hamiltonian") {
    Matrix h = Matrix::Zero(2, 2);
    h(1, 1) = std::numbers::pi;
    const Observable obs(h);
    CHECK(qcore::max_abs(qcore::unitary_from_hamiltonian(obs, 0.0).matrix() - Matrix::Identity(2, 2)) < 1e-15);
    Matrix expect = Matrix::Zero(2, 2);
    expect(0, 0) = 1.0;
    expect(1, 1) = -1.0;
    CHECK(qcore::max_abs(qcore::unitary_from_hamiltonian(obs, 1.0).matrix() - expect) < 1e-14);

    Gen g(16);
    for (int rep = 0; rep < 10; ++rep) {
        const Observable r(g.hermitian(6));
        const auto u = qcore::unitary_from_hamiltonian(r, 0.7);
        const auto v = qcore::unitary_from_hamiltonian(r, -0.7);
        CHECK(qcore::max_abs((u * v).matrix() - Matrix::Identity(6, 6)) <= 1e-10);
        CHECK(qcore::max_abs(u.matrix() - testsupport::expm_taylor(r.matrix(), 0.7)) <= 1e-10);
    }
}

TEST_CASE("propagator agrees with direct exponentiation") {
    Gen g(17);
    const Observable h(g.hermitian(5));
    const qcore::Propagator prop(h);
    for (double t : {0.0, 0.3, 2.5, -1.1})
        CHECK(qcore::max_abs(prop.at(t).matrix() - qcore::unitary_from_hamiltonian(h, t).matrix()) < 1e-12);
}

TEST_CASE("evolve on simple inputs") {
    Gen g(18);
    const Matrix rho = g.density(3);
    const auto s = state(rho, {3});
    CHECK(qcore::max_abs(qcore::evolve(s, UnitaryOp::identity(FactorShape({3}))).matrix() - rho) < 1e-15);
    const auto flipped = qcore::evolve(QuantumState::basis(2, 0), UnitaryOp(ops::sigma_x(), FactorShape({2})));
    CHECK(qcore::max_abs(flipped.matrix() - ops::outer(2, 1, 1)) < 1e-15);
    CHECK_THROWS_AS(qcore::evolve(s, UnitaryOp::identity(FactorShape({2}))), std::invalid_argument);
}

TEST_CASE("evolve preserves the spectrum") {
    Gen g(19);
    for (int rep = 0; rep < 20; ++rep) {
        const Matrix rho = g.density(6);
        const UnitaryOp u(g.unitary(6), FactorShape({6}));
        const auto out = qcore::evolve(state(rho, {6}), u);
        Eigen::SelfAdjointEigenSolver<Matrix> a(rho), b(out.matrix());
        CHECK((a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff() <= 1e-10);
    }
}

TEST_CASE("embed places a local operator") {
    const FactorShape shape({2, 3, 2});
    const Matrix z = ops::sigma_z();
    const Matrix expect = testsupport::kron(testsupport::kron(Matrix::Identity(2, 2), Matrix::Identity(3, 3)), z);
    CHECK(qcore::max_abs(qcore::embed(z, shape, 2) - expect) == 0.0);
    CHECK_THROWS_AS(qcore::embed(z, shape, 1), std::invalid_argument);
    CHECK_THROWS_AS(qcore::embed(z, shape, 3), std::out_of_range);
}

TEST_CASE("property: trace survives chains of operations") {
    Gen g(20);
    for (int rep = 0; rep < 200; ++rep) {
        const auto dA = static_cast<std::size_t>(g.integer(2, 3));
        const auto dB = static_cast<std::size_t>(g.integer(2, 4));
        const auto a = state(g.density(dA), {dA});
        const auto b = state(g.density(dB), {dB});
        const UnitaryOp u(g.unitary(dA * dB), FactorShape({dA, dB}));
        const auto out = qcore::partial_trace(qcore::evolve(qcore::tensor(a, b), u), {1});
        CHECK(std::abs(out.matrix().trace().real() - 1.0) <= 1e-10);
        const auto ev = qcore::eigh(out);
        CHECK(ev.values.minCoeff() >= -1e-9);
        CHECK(ev.values.maxCoeff() <= 1.0 + 1e-9);
    }
}

TEST_CASE("property: local unitaries leave the complement untouched") {
    Gen g(21);
    for (int rep = 0; rep < 100; ++rep) {
        const auto rho = state(g.density(6), {2, 3});
        const UnitaryOp ua(g.unitary(2), FactorShape({2}));
        const auto u = qcore::tensor(ua, UnitaryOp::identity(FactorShape({3})));
        const auto before = qcore::partial_trace(rho, {1});
        const auto after = qcore::partial_trace(qcore::evolve(rho, u), {1});
        CHECK(qcore::max_abs(before.matrix() - after.matrix()) <= 1e-10);
    }
}

TEST_CASE("property: tensor then trace out the second factor is the identity") {
    Gen g(22);
    for (int rep = 0; rep < 100; ++rep) {
        const auto d = static_cast<std::size_t>(g.integer(2, 4));
        const Matrix a = g.density(d, g.integer(1, static_cast<int>(d)));
        const auto t = qcore::tensor(state(a, {d}), state(g.density(3), {3}));
        CHECK(qcore::max_abs(qcore::partial_trace(t, {0}).matrix() - a) <= 1e-12);
    }
}

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/spin_core.hpp"

using namespace spinlab;
using std::numbers::pi;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

QuantumState from_oracle(const oracle::Vec4& v) { return QuantumState(v[0], v[1], v[2], v[3]); }

oracle::Vec4 to_oracle(const QuantumState& s) { return s.amplitudes(); }

}  // namespace

TEST_CASE("energy_levels matches hand evaluation of the Ising Hamiltonian") {
    const auto e = energy_levels({10.0, 8.0, 1.0});
    CHECK(e.e00 == doctest::Approx(-9.5));
    CHECK(e.e01 == doctest::Approx(-0.5));
    CHECK(e.e10 == doctest::Approx(1.5));
    CHECK(e.e11 == doctest::Approx(8.5));
    CHECK(e.e11 - e.e10 == doctest::Approx(7.0));  // w2 - J

    const auto zero = energy_levels({0.0, 0.0, 0.0});
    for (double v : zero.as_array()) CHECK(v == 0.0);
}

TEST_CASE("transition_frequencies") {
    const auto f = transition_frequencies({10.0, 8.0, 1.0});
    CHECK(f.b_given_a0 == doctest::Approx(9.0));
    CHECK(f.b_given_a1 == doctest::Approx(7.0));
    CHECK(f.a_given_b0 == doctest::Approx(11.0));
    CHECK(f.a_given_b1 == doctest::Approx(9.0));

    const auto same = transition_frequencies({5.0, 5.0, 0.0});
    for (auto t : kAllTransitions) CHECK(same[t] == doctest::Approx(5.0));

    SUBCASE("level differences reproduce the table") {
        std::mt19937_64 rng(7);
        std::uniform_real_distribution<double> u(-300.0, 300.0);
        for (int n = 0; n < 200; ++n) {
            const SpinSystemParams p{u(rng), u(rng), u(rng) / 10.0};
            const auto e = energy_levels(p);
            const auto table = transition_frequencies(p);
            for (auto t : kAllTransitions) {
                const auto [lo, hi] = transition_levels(t);
                CHECK(std::abs(std::abs(e[hi] - e[lo]) - table[t]) <= 1e-12 * std::max(1.0, table[t]));
            }
            CHECK(std::abs(table.b_given_a1 - std::abs(p.omega2 - p.j_coupling)) <= 1e-12 * 300);
        }
    }
}

TEST_CASE("transition labels round-trip") {
    for (auto t : kAllTransitions) CHECK(parse_transition(to_string(t)) == t);
    CHECK_FALSE(parse_transition("b-given-a2").has_value());
}

TEST_CASE("observables of the initial product state") {
    const QuantumState s(kInvSqrt2, 0.0, Amplitude(0.0, -kInvSqrt2), 0.0);
    const auto o = observables_from_amplitudes(s);
    CHECK(o.i1x == doctest::Approx(0.0));
    CHECK(o.i1y == doctest::Approx(-0.5));
    CHECK(o.i1z == doctest::Approx(0.0));
    CHECK(o.i2x == doctest::Approx(0.0));
    CHECK(o.i2y == doctest::Approx(0.0));
    CHECK(o.i2z == doctest::Approx(0.5));
    CHECK(o.norm == doctest::Approx(1.0));
    REQUIRE(o.concurrence.has_value());
    CHECK(*o.concurrence == doctest::Approx(0.0));
}

TEST_CASE("observables and concurrence of the Bell state") {
    const QuantumState bell(kInvSqrt2, 0.0, 0.0, kInvSqrt2);
    const auto o = observables_from_amplitudes(bell);
    for (double v : o.components()) CHECK(std::abs(v) < 1e-15);
    CHECK(concurrence(bell) == doctest::Approx(1.0));
}

TEST_CASE("observables of basis and uniform states") {
    const auto up = observables_from_amplitudes(QuantumState(1.0, 0.0, 0.0, 0.0));
    CHECK(up.i1z == 0.5);
    CHECK(up.i2z == 0.5);
    CHECK(up.i1x == 0.0);
    CHECK(up.i2y == 0.0);
    CHECK(concurrence(QuantumState(0.5, 0.5, 0.5, 0.5)) == doctest::Approx(0.0));
}

TEST_CASE("unnormalized input is rejected") {
    CHECK_THROWS_AS(QuantumState(1.0, 1.0, 0.0, 0.0), InvalidArgument);
    const auto loose = QuantumState::unchecked({Amplitude(1.01), 0.0, 0.0, 0.0});
    CHECK_THROWS_AS(observables_from_amplitudes(loose), InvalidArgument);
    CHECK_THROWS_AS(concurrence(loose), InvalidArgument);
    const auto close = QuantumState::unchecked({Amplitude(1.0 + 1e-8), 0.0, 0.0, 0.0});
    CHECK_NOTHROW(observables_from_amplitudes(close));
}

TEST_CASE("observables agree with dense Pauli expectation values") {
    std::mt19937_64 rng(11);
    for (int n = 0; n < 200; ++n) {
        const auto v = oracle::random_state(rng);
        const auto o = observables_from_amplitudes(from_oracle(v));
        CHECK(std::abs(o.i1x - oracle::spin_average(1, 'x', v)) < 1e-14);
        CHECK(std::abs(o.i1y - oracle::spin_average(1, 'y', v)) < 1e-14);
        CHECK(std::abs(o.i1z - oracle::spin_average(1, 'z', v)) < 1e-14);
        CHECK(std::abs(o.i2x - oracle::spin_average(2, 'x', v)) < 1e-14);
        CHECK(std::abs(o.i2y - oracle::spin_average(2, 'y', v)) < 1e-14);
        CHECK(std::abs(o.i2z - oracle::spin_average(2, 'z', v)) < 1e-14);
        for (double c : o.components()) CHECK(std::abs(c) <= 0.5 + 1e-9);
        REQUIRE(o.concurrence.has_value());
        CHECK(*o.concurrence >= 0.0);
        CHECK(*o.concurrence <= 1.0 + 1e-9);
        CHECK(std::abs(*o.concurrence - oracle::concurrence_from_purity(v)) < 1e-7);
    }
}

TEST_CASE("product_state") {
    SUBCASE("spin 1 along -y, spin 2 up") {
        const auto s = product_state({pi / 2, -pi / 2}, {0.0, 0.0});
        CHECK(std::abs(s.c00() - Amplitude(kInvSqrt2)) < 1e-15);
        CHECK(std::abs(s.c10() - Amplitude(0.0, -kInvSqrt2)) < 1e-15);
        CHECK(std::abs(s.c01()) < 1e-15);
        CHECK(std::abs(s.c11()) < 1e-15);
    }
    SUBCASE("both up") { CHECK(product_state({0.0, 0.0}, {0.0, 0.0}).c00() == Amplitude(1.0)); }
    SUBCASE("both down") { CHECK(std::abs(product_state({pi, 0.0}, {pi, 0.0}).c11()) == doctest::Approx(1.0)); }
}

TEST_CASE("product states carry zero concurrence") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> angle(-2 * pi, 2 * pi);
    for (int n = 0; n < 500; ++n) {
        const auto s = product_state({angle(rng), angle(rng)}, {angle(rng), angle(rng)});
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-14);
        CHECK(concurrence(s) <= 1e-12);
    }
}

TEST_CASE("concurrence is invariant under local phase rotations") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-pi, pi);
    for (int n = 0; n < 200; ++n) {
        const auto v = oracle::random_state(rng);
        const double alpha = angle(rng), beta = angle(rng);
        oracle::Vec4 w;
        for (int k = 0; k < 4; ++k) {
            const auto [m1, m2] = projections(k);
            w[k] = std::polar(1.0, alpha * m1 + beta * m2) * v[k];
        }
        CHECK(std::abs(concurrence(from_oracle(v)) - concurrence(from_oracle(w))) <= 1e-12);
    }
}

TEST_CASE("classical initial conditions equal the quantum averages exactly") {
    const BlochAngles a{pi / 2, -pi / 2}, b{0.0, 0.0};
    const auto o = observables_from_amplitudes(product_state(a, b));
    const auto c = classical_from_product(a, b);
    CHECK(c.spin1.x == o.i1x);
    CHECK(c.spin1.y == o.i1y);
    CHECK(c.spin1.z == o.i1z);
    CHECK(c.spin2.x == o.i2x);
    CHECK(c.spin2.y == o.i2y);
    CHECK(c.spin2.z == o.i2z);
    CHECK(c.spin1.norm() == doctest::Approx(0.5));
    (void)to_oracle;
}

TEST_CASE("trajectory validation") {
    Trajectory t;
    t.times = {0.0, 0.1, 0.2};
    t.samples.resize(3);
    CHECK_NOTHROW(t.validate());
    t.times[2] = 0.25;
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
    t.times = {0.0, 0.1};
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
    t.times = {0.1, 0.2, 0.3};
    CHECK_THROWS_AS(t.validate(), InvalidArgument);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((PulseSpec{1.0, -0.1, 0.0, 1.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((PulseSpec{1.0, 0.1, 0.0, -1.0}.validate()), InvalidArgument);
    CHECK_THROWS_AS((SpinSystemParams{std::nan(""), 1.0, 0.0}.validate()), InvalidArgument);
    CHECK_NOTHROW((PulseSpec{1.0, 0.0, 0.0, 0.0}.validate()));
}

#include "spinlab/spin_core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

double level_energy(const SpinSystemParams& p, int k) noexcept {
    const auto [m1, m2] = projections(k);
    return -(p.omega1 * m1 + p.omega2 * m2 + 2.0 * p.j_coupling * m1 * m2);
}

void require_normalized(const QuantumState& state, const char* what) {
    const double deviation = std::abs(state.norm_squared() - 1.0);
    if (deviation > kObservableNormTolerance)
        throw InvalidArgument(std::string(what) + ": state is not normalized (|norm^2 - 1| = " +
                              std::to_string(deviation) + ")");
}

double raw_concurrence(const QuantumState& s) noexcept {
    return std::min(1.0, 2.0 * std::abs(s.c00() * s.c11() - s.c01() * s.c10()));
}

}  // namespace

double LevelEnergies::operator[](BasisState k) const noexcept {
    switch (k) {
        case BasisState::k00: return e00;
        case BasisState::k01: return e01;
        case BasisState::k10: return e10;
        case BasisState::k11: return e11;
    }
    return 0.0;
}

LevelEnergies energy_levels(const SpinSystemParams& params) noexcept {
    return {level_energy(params, 0), level_energy(params, 1), level_energy(params, 2), level_energy(params, 3)};
}

std::string_view to_string(Transition t) noexcept {
    switch (t) {
        case Transition::kBGivenA0: return "b-given-a0";
        case Transition::kBGivenA1: return "b-given-a1";
        case Transition::kAGivenB0: return "a-given-b0";
        case Transition::kAGivenB1: return "a-given-b1";
    }
    return "?";
}

std::optional<Transition> parse_transition(std::string_view label) noexcept {
    for (auto t : kAllTransitions) {
        if (to_string(t) == label) return t;
    }
    return std::nullopt;
}

std::array<BasisState, 2> transition_levels(Transition t) noexcept {
    switch (t) {
        case Transition::kBGivenA0: return {BasisState::k00, BasisState::k01};
        case Transition::kBGivenA1: return {BasisState::k10, BasisState::k11};
        case Transition::kAGivenB0: return {BasisState::k00, BasisState::k10};
        case Transition::kAGivenB1: return {BasisState::k01, BasisState::k11};
    }
    return {BasisState::k00, BasisState::k00};
}

double TransitionFrequencies::operator[](Transition t) const noexcept {
    switch (t) {
        case Transition::kBGivenA0: return b_given_a0;
        case Transition::kBGivenA1: return b_given_a1;
        case Transition::kAGivenB0: return a_given_b0;
        case Transition::kAGivenB1: return a_given_b1;
    }
    return 0.0;
}

TransitionFrequencies transition_frequencies(const SpinSystemParams& params) noexcept {
    const auto e = energy_levels(params);
    auto gap = [&](Transition t) {
        const auto [lo, hi] = transition_levels(t);
        return std::abs(e[hi] - e[lo]);
    };
    return {gap(Transition::kBGivenA0), gap(Transition::kBGivenA1), gap(Transition::kAGivenB0),
            gap(Transition::kAGivenB1)};
}

Observables observables_from_amplitudes(const QuantumState& state) {
    require_normalized(state, "observables_from_amplitudes");
    const Amplitude c00 = state.c00(), c01 = state.c01(), c10 = state.c10(), c11 = state.c11();
    const double p00 = std::norm(c00), p01 = std::norm(c01), p10 = std::norm(c10), p11 = std::norm(c11);

    // <I+> of each spin; Ix = Re, Iy = Im.
    const Amplitude raise1 = std::conj(c10) * c00 + std::conj(c11) * c01;
    const Amplitude raise2 = std::conj(c01) * c00 + std::conj(c11) * c10;

    Observables o;
    o.i1x = raise1.real();
    o.i1y = -raise1.imag();
    o.i1z = 0.5 * (p00 + p01 - p10 - p11);
    o.i2x = raise2.real();
    o.i2y = -raise2.imag();
    o.i2z = 0.5 * (p00 - p01 + p10 - p11);
    o.norm = p00 + p01 + p10 + p11;
    o.concurrence = raw_concurrence(state);
    return o;
}

double concurrence(const QuantumState& state) {
    require_normalized(state, "concurrence");
    return raw_concurrence(state);
}

QuantumState product_state(BlochAngles spin1, BlochAngles spin2) {
    if (!std::isfinite(spin1.theta) || !std::isfinite(spin1.phi) || !std::isfinite(spin2.theta) ||
        !std::isfinite(spin2.phi))
        throw InvalidArgument("product_state: Bloch angles must be finite");
    auto single = [](BlochAngles a) -> std::array<Amplitude, 2> {
        return {Amplitude(std::cos(0.5 * a.theta)), std::sin(0.5 * a.theta) * Amplitude(std::cos(a.phi), std::sin(a.phi))};
    };
    const auto a = single(spin1);
    const auto b = single(spin2);
    return QuantumState(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]);
}

ClassicalState classical_from_product(BlochAngles spin1, BlochAngles spin2) {
    const auto o = observables_from_amplitudes(product_state(spin1, spin2));
    return {{o.i1x, o.i1y, o.i1z}, {o.i2x, o.i2y, o.i2z}};
}

}  // namespace spinlab

#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "spinlab/types.hpp"

namespace spinlab {

/// Energies of the four basis states of H0 = -(w1 Iz1 + w2 Iz2 + 2J Iz1 Iz2).
struct LevelEnergies {
    double e00 = 0.0, e01 = 0.0, e10 = 0.0, e11 = 0.0;

    double operator[](BasisState k) const noexcept;
    std::array<double, 4> as_array() const noexcept { return {e00, e01, e10, e11}; }
};

LevelEnergies energy_levels(const SpinSystemParams& params) noexcept;

/// Single-spin-flip transitions, named by the flipped spin and the partner's state.
enum class Transition {
    kBGivenA0,  ///< |00> <-> |01>, w2 + J
    kBGivenA1,  ///< |10> <-> |11>, w2 - J
    kAGivenB0,  ///< |00> <-> |10>, w1 + J
    kAGivenB1,  ///< |01> <-> |11>, w1 - J
};

inline constexpr std::array<Transition, 4> kAllTransitions = {
    Transition::kBGivenA0, Transition::kBGivenA1, Transition::kAGivenB0, Transition::kAGivenB1};

/// Config-file label, e.g. "b-given-a1".
std::string_view to_string(Transition t) noexcept;
std::optional<Transition> parse_transition(std::string_view label) noexcept;

/// The pair of levels (lower index first in basis order) a transition connects.
std::array<BasisState, 2> transition_levels(Transition t) noexcept;

/// True when the transition flips spin B.
constexpr bool flips_spin_b(Transition t) noexcept {
    return t == Transition::kBGivenA0 || t == Transition::kBGivenA1;
}

struct TransitionFrequencies {
    double b_given_a0 = 0.0;
    double b_given_a1 = 0.0;
    double a_given_b0 = 0.0;
    double a_given_b1 = 0.0;

    double operator[](Transition t) const noexcept;
};

/// Absolute energy differences of the level pairs of each single-spin flip.
TransitionFrequencies transition_frequencies(const SpinSystemParams& params) noexcept;

/// Maximum tolerated |norm^2 - 1| for observable extraction.
inline constexpr double kObservableNormTolerance = 1e-6;

/// Spin averages and concurrence of a pure state.
/// Throws InvalidArgument if the norm deviates from 1 by more than 1e-6.
Observables observables_from_amplitudes(const QuantumState& state);

/// Pure-state concurrence 2|c00 c11 - c01 c10|, clamped into [0, 1].
/// Throws InvalidArgument for unnormalized input.
double concurrence(const QuantumState& state);

/// Polar/azimuthal angles of a single spin on the Bloch sphere.
struct BlochAngles {
    double theta = 0.0;
    double phi = 0.0;
};

/// (cos(t1/2)|0> + e^{i p1} sin(t1/2)|1>) (x) (cos(t2/2)|0> + e^{i p2} sin(t2/2)|1>).
QuantumState product_state(BlochAngles spin1, BlochAngles spin2);

/// Classical spins carrying the same averages as the quantum product state,
/// taken from observables_from_amplitudes so the two agree bit for bit.
ClassicalState classical_from_product(BlochAngles spin1, BlochAngles spin2);

}  // namespace spinlab

#pragma once

#include <optional>
#include <variant>

#include "spinlab/spin_core.hpp"
#include "spinlab/types.hpp"

namespace spinlab {

/// Carrier that makes `target` resonant in the rotating frame: the energy of
/// the flipped level minus the unflipped one (w2 -+ J for spin B, w1 -+ J for
/// spin A). Equals transition_frequencies()[target] whenever that gap is positive.
double resonance_carrier(const SpinSystemParams& params, Transition target) noexcept;

/// Pulse of area pi on `target`: carrier = resonance_carrier, duration =
/// pi / (Rabi frequency of the flipped spin). Throws InvalidArgument when that
/// Rabi frequency is not positive or when w1 == w2 (no selectivity).
PulseSpec pi_pulse(const SpinSystemParams& params, Transition target, double rabi1, double rabi2);

struct IntegratorSettings {
    /// RK4 step; each segment picks its own default when empty.
    std::optional<double> step;
    /// Global sample spacing. Every segment duration must be a whole multiple of it.
    double sample_spacing = 0.0;
};

using InitialState = std::variant<QuantumState, ClassicalState>;

/// Evolves `initial` segment by segment (lead delay, then each pulse and its
/// delay) and concatenates the samples on one uniform global time grid.
///
/// Observables are reported in the frame rotating at the carrier of the
/// current pulse; delays stay in the frame of the preceding pulse and run
/// drive-free (exact diagonal phases for the quantum engine). When the carrier
/// changes, the state is taken to the lab frame at the old carrier and back
/// to the rotating frame at the new one, at the current global time.
///
/// Throws InvalidArgument if `engine` does not match the state kind or a
/// segment is not commensurate with the sample spacing.
Trajectory run_sequence(const InitialState& initial, const SpinSystemParams& params, const PulseSequence& sequence,
                        Engine engine, const IntegratorSettings& settings);

}  // namespace spinlab

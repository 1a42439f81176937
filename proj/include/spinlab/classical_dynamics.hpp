#pragma once

#include <cstddef>

#include "spinlab/quantum_dynamics.hpp"
#include "spinlab/types.hpp"

namespace spinlab {

/// Field -dH/dI acting on one classical spin in the rotating frame.
using EffectiveField = Vec3;

enum class SpinLabel { kA, kB };

/// B_k = (rabi_k, 0, detune_k + 2J Iz_partner) with detune_k = w_k - carrier.
EffectiveField effective_field(SpinLabel which, const ClassicalState& state, const SpinSystemParams& params,
                               const PulseSpec& pulse) noexcept;

struct ClassicalDerivative {
    Vec3 spin1;
    Vec3 spin2;
};

/// dI_k/dt = I_k x B_k (torque equation with the sign of -I x dH/dI absorbed).
ClassicalDerivative classical_derivative(const ClassicalState& state, const SpinSystemParams& params,
                                         const PulseSpec& pulse) noexcept;

/// Rotating-frame energy -(d1 Iz1 + d2 Iz2 + 2J Iz1 Iz2 + rabi1 Ix1 + rabi2 Ix2);
/// conserved by the exact flow.
double rotating_energy(const ClassicalState& state, const SpinSystemParams& params, const PulseSpec& pulse) noexcept;

/// Spin length expected of every classical engine state.
inline constexpr double kClassicalSpinLength = 0.5;
/// Length drift at which simulate_classical gives up.
inline constexpr double kClassicalLengthFailure = 1e-4;

/// Fixed-step RK4 without renormalization. Throws NumericalError when either
/// spin length leaves 1/2 by more than kClassicalLengthFailure.
ClassicalState evolve_classical(const ClassicalState& state, const SpinSystemParams& params, const PulseSpec& pulse,
                                double tau, double step);

/// Rotates both spins about z to match frame_transform on the quantum side:
/// to-lab multiplies Ix + i Iy by exp(-i carrier t).
ClassicalState classical_frame_transform(const ClassicalState& state, double carrier, double t,
                                         FrameDirection direction) noexcept;

/// Upper bound on |B_k| over all states of length 1/2.
double max_field_magnitude(const SpinSystemParams& params, const PulseSpec& pulse) noexcept;

double default_classical_step(const SpinSystemParams& params, const PulseSpec& pulse);

/// Spin averages of a classical state; `norm` carries |I1| and concurrence is empty.
Observables classical_observables(const ClassicalState& state) noexcept;

/// Counterpart of sample_quantum_segment for the classical engine.
ClassicalState sample_classical_segment(const ClassicalState& state, const SpinSystemParams& params,
                                        const PulseSpec& pulse, std::size_t intervals, double spacing, double step,
                                        std::size_t first_index, bool include_start, Trajectory& out);

Trajectory simulate_classical(const ClassicalState& initial, const SpinSystemParams& params, const PulseSpec& pulse,
                              double step, double sample_every);

}  // namespace spinlab

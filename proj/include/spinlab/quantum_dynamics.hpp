#pragma once

#include <array>
#include <cstddef>

#include "spinlab/types.hpp"

namespace spinlab {

/// Time-independent Hamiltonian of the driven molecule in the frame rotating
/// at the pulse carrier. Amplitudes obey i dc/dt = H c.
///
/// The matrix is real symmetric: `diag` on the diagonal, `coupling_a` on the
/// pairs (00,10) and (01,11) that flip spin A, `coupling_b` on (00,01) and
/// (10,11) that flip spin B.
struct RotatingHamiltonian {
    std::array<double, 4> diag{};
    double coupling_a = 0.0;
    double coupling_b = 0.0;

    std::array<Amplitude, 4> apply(const std::array<Amplitude, 4>& c) const noexcept;
    std::array<std::array<double, 4>, 4> dense() const noexcept;
    /// Max absolute row sum; bounds the spectral radius.
    double max_row_sum() const noexcept;
    bool is_diagonal() const noexcept { return coupling_a == 0.0 && coupling_b == 0.0; }
};

/// d_ab = -(d1 m1 + d2 m2 + 2J m1 m2) with detunings dk = wk - carrier,
/// coupling_a = -rabi1/2, coupling_b = -rabi2/2.
RotatingHamiltonian build_rotating_hamiltonian(const SpinSystemParams& params, const PulseSpec& pulse);

/// Norm drift beyond which the step integrator gives up.
inline constexpr double kRk4NormFailure = 1e-6;

/// Classical fourth-order Runge-Kutta over [0, tau] with a fixed step; the last
/// step is shortened to land on tau. Throws NumericalError if the norm drifts
/// by more than kRk4NormFailure.
QuantumState evolve_rk4(const QuantumState& state, const RotatingHamiltonian& h, double tau, double step);

/// Applies exp(-i H tau) through the eigen-decomposition of H. Diagonal H takes
/// an exact phase-only path. Throws NumericalError if ||HV - V diag(lambda)||
/// exceeds 1e-10.
QuantumState evolve_exact(const QuantumState& state, const RotatingHamiltonian& h, double tau);

enum class FrameDirection { kToLab, kToRotating };

/// Diagonal change of frame for a carrier rotating at `carrier`:
/// to-lab multiplies c_ab by exp(+i carrier t (m1 + m2)), to-rotating by the
/// conjugate phase. Populations are untouched and <I+> of each spin picks up
/// exp(-i carrier t) on the way to the lab frame.
QuantumState frame_transform(const QuantumState& state, double carrier, double t, FrameDirection direction);

/// Default RK4 step for `h` over `tau` (see budgeted_rk4_step).
double default_quantum_step(const RotatingHamiltonian& h, double tau);

enum class Propagator { kRk4, kExact };

/// Evolves through `intervals` sample intervals of length `spacing` and
/// appends one sample per interval end to `out`, timestamped
/// (first_index + k) * spacing. With `include_start` the initial state is
/// sampled first. Returns the final state.
QuantumState sample_quantum_segment(const QuantumState& state, const RotatingHamiltonian& h, std::size_t intervals,
                                    double spacing, double step, Propagator propagator, std::size_t first_index,
                                    bool include_start, Trajectory& out);

/// Samples a single pulse uniformly, endpoints included, with RK4 stepping.
/// `sample_every` is the largest allowed sample spacing.
Trajectory simulate_quantum(const QuantumState& initial, const SpinSystemParams& params, const PulseSpec& pulse,
                            double step, double sample_every);

}  // namespace spinlab

#pragma once

#include <cstddef>

namespace spinlab {

/// Upper bound on rate * step for every fixed-step RK4 run.
inline constexpr double kMaxPhasePerStep = 0.05;

/// Accumulated RK4 phase error targeted by default step sizes.
inline constexpr double kDefaultPhaseBudget = 1e-10;

/// Default RK4 step for a linear oscillation of angular rate `rate` over `duration`.
///
/// RK4 applied to exp(-i rate t) has local phase error (rate h)^5 / 120, so
/// after duration/h steps the accumulated error is duration rate^5 h^4 / 120.
/// The step is the largest one meeting `phase_budget`, capped at
/// kMaxPhasePerStep / rate and duration / 1000.
double budgeted_rk4_step(double rate, double duration, double phase_budget = kDefaultPhaseBudget);

/// Step for rough surveys (frequency sweeps): kMaxPhasePerStep / rate,
/// capped at duration / 1000.
double coarse_rk4_step(double rate, double duration);

/// Uniform sampling of [0, duration] that always includes both endpoints.
struct SampleGrid {
    std::size_t intervals = 0;
    double spacing = 0.0;

    double time(std::size_t k) const noexcept { return static_cast<double>(k) * spacing; }
};

/// Smallest number of equal intervals no longer than `sample_every`.
/// A zero duration gives a single-point grid.
SampleGrid uniform_grid(double duration, double sample_every);

}  // namespace spinlab

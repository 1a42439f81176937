#include "spinlab/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

double duration_cap(double duration) {
    return duration > 0.0 ? duration / 1000.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

double budgeted_rk4_step(double rate, double duration, double phase_budget) {
    if (!(phase_budget > 0.0)) throw InvalidArgument("phase budget must be > 0");
    double step = duration_cap(duration);
    if (rate > 0.0) {
        step = std::min(step, kMaxPhasePerStep / rate);
        if (duration > 0.0)
            step = std::min(step, std::pow(120.0 * phase_budget / (duration * std::pow(rate, 5)), 0.25));
    }
    return std::isfinite(step) ? step : 1.0;
}

double coarse_rk4_step(double rate, double duration) {
    double step = duration_cap(duration);
    if (rate > 0.0) step = std::min(step, kMaxPhasePerStep / rate);
    return std::isfinite(step) ? step : 1.0;
}

SampleGrid uniform_grid(double duration, double sample_every) {
    if (!(duration >= 0.0) || !std::isfinite(duration)) throw InvalidArgument("duration must be finite and >= 0");
    if (!(sample_every > 0.0)) throw InvalidArgument("sample spacing must be > 0");
    if (duration == 0.0) return {0, 0.0};
    // Tolerate round-off so that duration / (duration / n) yields n, not n + 1.
    const double ratio = duration / sample_every;
    const auto intervals = static_cast<std::size_t>(std::max(1.0, std::ceil(ratio - 1e-9 * ratio)));
    return {intervals, duration / static_cast<double>(intervals)};
}

}  // namespace spinlab

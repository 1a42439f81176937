#include "spinlab/types.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "spinlab/errors.hpp"

namespace spinlab {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) throw InvalidArgument(std::string(name) + " must be finite");
}

void require_non_negative(double value, const char* name) {
    require_finite(value, name);
    if (value < 0.0) throw InvalidArgument(std::string(name) + " must be >= 0, got " + std::to_string(value));
}

}  // namespace

void SpinSystemParams::validate() const {
    require_finite(omega1, "omega1");
    require_finite(omega2, "omega2");
    require_finite(j_coupling, "j_coupling");
}

void PulseSpec::validate() const {
    require_finite(carrier, "carrier");
    require_non_negative(rabi1, "rabi1");
    require_non_negative(rabi2, "rabi2");
    require_non_negative(duration, "duration");
}

void PulseSequence::validate() const {
    require_non_negative(lead, "lead");
    for (const auto& entry : entries) {
        entry.pulse.validate();
        require_non_negative(entry.delay, "delay");
    }
}

double PulseSequence::total_duration() const {
    return std::accumulate(entries.begin(), entries.end(), lead,
                           [](double acc, const SequenceEntry& e) { return acc + e.pulse.duration + e.delay; });
}

QuantumState::QuantumState(Amplitude c00, Amplitude c01, Amplitude c10, Amplitude c11)
    : QuantumState(std::array<Amplitude, 4>{c00, c01, c10, c11}) {}

QuantumState::QuantumState(const std::array<Amplitude, 4>& amplitudes) : c_(amplitudes) {
    for (const auto& c : c_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
            throw InvalidArgument("quantum state amplitudes must be finite");
    }
    const double deviation = std::abs(norm_squared() - 1.0);
    if (deviation > kNormTolerance)
        throw InvalidArgument("quantum state is not normalized (|norm^2 - 1| = " + std::to_string(deviation) + ")");
}

QuantumState QuantumState::unchecked(const std::array<Amplitude, 4>& amplitudes) noexcept {
    QuantumState s;
    s.c_ = amplitudes;
    return s;
}

double QuantumState::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& c : c_) sum += std::norm(c);
    return sum;
}

std::string_view to_string(Engine engine) noexcept {
    return engine == Engine::kQuantum ? "quantum" : "classical";
}

void Trajectory::validate() const {
    if (times.size() != samples.size())
        throw InvalidArgument("trajectory has " + std::to_string(times.size()) + " times but " +
                              std::to_string(samples.size()) + " samples");
    if (times.empty()) throw InvalidArgument("trajectory is empty");
    if (times.front() != 0.0) throw InvalidArgument("trajectory must start at t = 0");
    const std::size_t n = times.size() - 1;
    if (n == 0) return;
    const double span = times.back();
    const double spacing = span / static_cast<double>(n);
    for (std::size_t k = 1; k <= n; ++k) {
        if (!(times[k] > times[k - 1])) throw InvalidArgument("trajectory times must be strictly increasing");
        if (std::abs(times[k] - static_cast<double>(k) * spacing) > 1e-12 * span)
            throw InvalidArgument("trajectory times are not uniformly spaced at index " + std::to_string(k));
    }
}

}  // namespace spinlab

#include "spinlab/sequence.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "spinlab/classical_dynamics.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/quantum_dynamics.hpp"

namespace spinlab {

namespace {

struct Segment {
    PulseSpec drive;  // carrier doubles as the frame of the segment
    bool is_delay = false;
};

std::vector<Segment> flatten(const PulseSequence& sequence) {
    std::vector<Segment> out;
    const double first_carrier = sequence.entries.empty() ? 0.0 : sequence.entries.front().pulse.carrier;
    if (sequence.lead > 0.0) out.push_back({{first_carrier, 0.0, 0.0, sequence.lead}, true});
    for (const auto& entry : sequence.entries) {
        out.push_back({entry.pulse, false});
        if (entry.delay > 0.0) out.push_back({{entry.pulse.carrier, 0.0, 0.0, entry.delay}, true});
    }
    return out;
}

std::size_t interval_count(double duration, double spacing) {
    const double ratio = duration / spacing;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
        throw InvalidArgument("segment duration " + std::to_string(duration) +
                              " is not a whole multiple of the sample spacing " + std::to_string(spacing));
    return static_cast<std::size_t>(rounded);
}

Trajectory start_trajectory(Engine engine, const SpinSystemParams& params, const PulseSequence& sequence) {
    Trajectory traj;
    traj.engine = engine;
    traj.metadata = TrajectoryMetadata{params, sequence};
    return traj;
}

Trajectory run_quantum(const QuantumState& initial, const SpinSystemParams& params, const PulseSequence& sequence,
                       const IntegratorSettings& settings) {
    const double spacing = settings.sample_spacing;
    auto traj = start_trajectory(Engine::kQuantum, params, sequence);
    traj.times.push_back(0.0);
    traj.samples.push_back(observables_from_amplitudes(initial));

    QuantumState state = initial;
    const auto segments = flatten(sequence);
    double frame = segments.empty() ? 0.0 : segments.front().drive.carrier;
    std::size_t index = 0;
    for (const auto& seg : segments) {
        const std::size_t n = interval_count(seg.drive.duration, spacing);
        if (n == 0) continue;
        if (seg.drive.carrier != frame) {
            const double t = static_cast<double>(index) * spacing;
            state = frame_transform(state, frame, t, FrameDirection::kToLab);
            state = frame_transform(state, seg.drive.carrier, t, FrameDirection::kToRotating);
            frame = seg.drive.carrier;
        }
        const auto h = build_rotating_hamiltonian(params, seg.drive);
        if (seg.is_delay) {
            state = sample_quantum_segment(state, h, n, spacing, 1.0, Propagator::kExact, index, false, traj);
        } else {
            const double step = settings.step.value_or(default_quantum_step(h, seg.drive.duration));
            state = sample_quantum_segment(state, h, n, spacing, step, Propagator::kRk4, index, false, traj);
        }
        index += n;
    }
    return traj;
}

Trajectory run_classical(const ClassicalState& initial, const SpinSystemParams& params, const PulseSequence& sequence,
                         const IntegratorSettings& settings) {
    const double spacing = settings.sample_spacing;
    auto traj = start_trajectory(Engine::kClassical, params, sequence);
    traj.times.push_back(0.0);
    traj.samples.push_back(classical_observables(initial));

    ClassicalState state = initial;
    const auto segments = flatten(sequence);
    double frame = segments.empty() ? 0.0 : segments.front().drive.carrier;
    std::size_t index = 0;
    for (const auto& seg : segments) {
        const std::size_t n = interval_count(seg.drive.duration, spacing);
        if (n == 0) continue;
        if (seg.drive.carrier != frame) {
            const double t = static_cast<double>(index) * spacing;
            state = classical_frame_transform(state, frame, t, FrameDirection::kToLab);
            state = classical_frame_transform(state, seg.drive.carrier, t, FrameDirection::kToRotating);
            frame = seg.drive.carrier;
        }
        const double step = settings.step.value_or(default_classical_step(params, seg.drive));
        state = sample_classical_segment(state, params, seg.drive, n, spacing, step, index, false, traj);
        index += n;
    }
    return traj;
}

}  // namespace

double resonance_carrier(const SpinSystemParams& params, Transition target) noexcept {
    const auto e = energy_levels(params);
    const auto [unflipped, flipped] = transition_levels(target);
    return e[flipped] - e[unflipped];
}

PulseSpec pi_pulse(const SpinSystemParams& params, Transition target, double rabi1, double rabi2) {
    params.validate();
    const double driven = flips_spin_b(target) ? rabi2 : rabi1;
    if (!(driven > 0.0) || !std::isfinite(driven))
        throw InvalidArgument(std::string("pi_pulse: Rabi frequency of the driven spin must be > 0 for ") +
                              std::string(to_string(target)));
    if (params.omega1 == params.omega2)
        throw InvalidArgument("pi_pulse: omega1 == omega2, the two spins cannot be addressed selectively");
    PulseSpec pulse{resonance_carrier(params, target), rabi1, rabi2, std::numbers::pi / driven};
    pulse.validate();
    return pulse;
}

Trajectory run_sequence(const InitialState& initial, const SpinSystemParams& params, const PulseSequence& sequence,
                        Engine engine, const IntegratorSettings& settings) {
    params.validate();
    sequence.validate();
    if (!(settings.sample_spacing > 0.0) || !std::isfinite(settings.sample_spacing))
        throw InvalidArgument("run_sequence: sample spacing must be > 0");
    if (settings.step && !(*settings.step > 0.0)) throw InvalidArgument("run_sequence: step must be > 0");

    if (engine == Engine::kQuantum) {
        const auto* state = std::get_if<QuantumState>(&initial);
        if (state == nullptr) throw InvalidArgument("run_sequence: quantum engine needs a quantum initial state");
        return run_quantum(*state, params, sequence, settings);
    }
    const auto* state = std::get_if<ClassicalState>(&initial);
    if (state == nullptr) throw InvalidArgument("run_sequence: classical engine needs a classical initial state");
    return run_classical(*state, params, sequence, settings);
}

}  // namespace spinlab

#include "spinlab/classical_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinlab/errors.hpp"
#include "spinlab/integrator.hpp"

namespace spinlab {

namespace {

constexpr double kInputLengthTolerance = 1e-6;

// Rotating-frame torque model with every parameter hoisted into a value, so the
// integration loop does not reload them through references on each stage.
struct TorqueModel {
    double rabi1, rabi2, detune1, detune2, two_j;

    TorqueModel(const SpinSystemParams& params, const PulseSpec& pulse) noexcept
        : rabi1(pulse.rabi1),
          rabi2(pulse.rabi2),
          detune1(params.omega1 - pulse.carrier),
          detune2(params.omega2 - pulse.carrier),
          two_j(2.0 * params.j_coupling) {}

    EffectiveField field1(const ClassicalState& s) const noexcept { return {rabi1, 0.0, detune1 + two_j * s.spin2.z}; }
    EffectiveField field2(const ClassicalState& s) const noexcept { return {rabi2, 0.0, detune2 + two_j * s.spin1.z}; }

    ClassicalDerivative derivative(const ClassicalState& s) const noexcept {
        return {cross(s.spin1, field1(s)), cross(s.spin2, field2(s))};
    }
};

ClassicalState axpy(const ClassicalState& s, double a, const ClassicalDerivative& d) noexcept {
    return {s.spin1 + a * d.spin1, s.spin2 + a * d.spin2};
}

void rk4_step(const TorqueModel model, ClassicalState& s, double dt) noexcept {
    const auto k1 = model.derivative(s);
    const auto k2 = model.derivative(axpy(s, 0.5 * dt, k1));
    const auto k3 = model.derivative(axpy(s, 0.5 * dt, k2));
    const auto k4 = model.derivative(axpy(s, dt, k3));
    const double w = dt / 6.0;
    s.spin1 = s.spin1 + w * (k1.spin1 + 2.0 * (k2.spin1 + k3.spin1) + k4.spin1);
    s.spin2 = s.spin2 + w * (k1.spin2 + 2.0 * (k2.spin2 + k3.spin2) + k4.spin2);
}

double length_drift(const ClassicalState& s) noexcept {
    return std::max(std::abs(s.spin1.norm() - kClassicalSpinLength), std::abs(s.spin2.norm() - kClassicalSpinLength));
}

Vec3 rotate_z(Vec3 v, double angle) noexcept {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

}  // namespace

EffectiveField effective_field(SpinLabel which, const ClassicalState& state, const SpinSystemParams& params,
                               const PulseSpec& pulse) noexcept {
    const TorqueModel model(params, pulse);
    return which == SpinLabel::kA ? model.field1(state) : model.field2(state);
}

ClassicalDerivative classical_derivative(const ClassicalState& state, const SpinSystemParams& params,
                                         const PulseSpec& pulse) noexcept {
    return TorqueModel(params, pulse).derivative(state);
}

double rotating_energy(const ClassicalState& state, const SpinSystemParams& params, const PulseSpec& pulse) noexcept {
    const double detune1 = params.omega1 - pulse.carrier;
    const double detune2 = params.omega2 - pulse.carrier;
    const auto& a = state.spin1;
    const auto& b = state.spin2;
    return -(detune1 * a.z + detune2 * b.z + 2.0 * params.j_coupling * a.z * b.z + pulse.rabi1 * a.x +
             pulse.rabi2 * b.x);
}

ClassicalState evolve_classical(const ClassicalState& state, const SpinSystemParams& params, const PulseSpec& pulse,
                                double tau, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("evolve_classical: step must be > 0");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("evolve_classical: tau must be >= 0");
    if (!(length_drift(state) <= kInputLengthTolerance))
        throw InvalidArgument("evolve_classical: spin lengths must be 1/2");

    const TorqueModel model(params, pulse);
    ClassicalState s = state;
    const auto full_steps = static_cast<std::size_t>(std::floor(tau / step));
    for (std::size_t n = 0; n < full_steps; ++n) rk4_step(model, s, step);
    const double remainder = tau - static_cast<double>(full_steps) * step;
    if (remainder > 1e-12 * tau) rk4_step(model, s, remainder);

    const double drift = length_drift(s);
    if (!(drift <= kClassicalLengthFailure))
        throw NumericalError("evolve_classical: spin length drift " + std::to_string(drift) +
                             " exceeds tolerance; reduce the integration step");
    return s;
}

ClassicalState classical_frame_transform(const ClassicalState& state, double carrier, double t,
                                         FrameDirection direction) noexcept {
    const double angle = direction == FrameDirection::kToLab ? -carrier * t : carrier * t;
    return {rotate_z(state.spin1, angle), rotate_z(state.spin2, angle)};
}

double max_field_magnitude(const SpinSystemParams& params, const PulseSpec& pulse) noexcept {
    // |2J Iz_partner| <= |J| for a spin of length 1/2.
    const double j = std::abs(params.j_coupling);
    const double b1 = std::hypot(pulse.rabi1, std::abs(params.omega1 - pulse.carrier) + j);
    const double b2 = std::hypot(pulse.rabi2, std::abs(params.omega2 - pulse.carrier) + j);
    return std::max(b1, b2);
}

double default_classical_step(const SpinSystemParams& params, const PulseSpec& pulse) {
    return budgeted_rk4_step(max_field_magnitude(params, pulse), pulse.duration);
}

Observables classical_observables(const ClassicalState& state) noexcept {
    Observables o;
    o.i1x = state.spin1.x;
    o.i1y = state.spin1.y;
    o.i1z = state.spin1.z;
    o.i2x = state.spin2.x;
    o.i2y = state.spin2.y;
    o.i2z = state.spin2.z;
    o.norm = state.spin1.norm();
    return o;
}

ClassicalState sample_classical_segment(const ClassicalState& state, const SpinSystemParams& params,
                                        const PulseSpec& pulse, std::size_t intervals, double spacing, double step,
                                        std::size_t first_index, bool include_start, Trajectory& out) {
    auto record = [&](const ClassicalState& s, std::size_t index) {
        out.times.push_back(static_cast<double>(index) * spacing);
        out.samples.push_back(classical_observables(s));
    };
    if (include_start) record(state, first_index);

    ClassicalState current = state;
    for (std::size_t k = 1; k <= intervals; ++k) {
        current = evolve_classical(current, params, pulse, spacing, step);
        record(current, first_index + k);
    }
    return current;
}

Trajectory simulate_classical(const ClassicalState& initial, const SpinSystemParams& params, const PulseSpec& pulse,
                              double step, double sample_every) {
    params.validate();
    pulse.validate();
    if (!(step > 0.0)) throw InvalidArgument("simulate_classical: step must be > 0");
    const auto grid = uniform_grid(pulse.duration, sample_every);

    Trajectory traj;
    traj.engine = Engine::kClassical;
    traj.metadata = TrajectoryMetadata{params, PulseSequence{0.0, {SequenceEntry{pulse, 0.0}}}};
    traj.times.reserve(grid.intervals + 1);
    traj.samples.reserve(grid.intervals + 1);
    sample_classical_segment(initial, params, pulse, grid.intervals, grid.spacing, step, 0, true, traj);
    return traj;
}

}  // namespace spinlab

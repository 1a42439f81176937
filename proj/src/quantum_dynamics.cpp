#include "spinlab/quantum_dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <string>

#include "spinlab/errors.hpp"
#include "spinlab/integrator.hpp"
#include "spinlab/spin_core.hpp"

namespace spinlab {

namespace {

using Vec4 = std::array<Amplitude, 4>;

constexpr double kEigenResidualLimit = 1e-10;

// H is real, so i dc/dt = H c splits into d(re)/dt = H im, d(im)/dt = -H re.
struct SplitState {
    std::array<double, 4> re;
    std::array<double, 4> im;
};

struct RealHamiltonian {
    std::array<double, 4> d;
    double a, b;

    std::array<double, 4> apply(const std::array<double, 4>& v) const noexcept {
        return {d[0] * v[0] + a * v[2] + b * v[1], d[1] * v[1] + a * v[3] + b * v[0],
                d[2] * v[2] + a * v[0] + b * v[3], d[3] * v[3] + a * v[1] + b * v[2]};
    }

    SplitState derivative(const SplitState& c) const noexcept {
        SplitState out{apply(c.im), apply(c.re)};
        for (auto& v : out.im) v = -v;
        return out;
    }
};

SplitState axpy(const SplitState& c, double s, const SplitState& k) noexcept {
    SplitState out;
    for (int i = 0; i < 4; ++i) {
        out.re[i] = c.re[i] + s * k.re[i];
        out.im[i] = c.im[i] + s * k.im[i];
    }
    return out;
}

void rk4_step(const RealHamiltonian h, SplitState& c, double dt) noexcept {
    const SplitState k1 = h.derivative(c);
    const SplitState k2 = h.derivative(axpy(c, 0.5 * dt, k1));
    const SplitState k3 = h.derivative(axpy(c, 0.5 * dt, k2));
    const SplitState k4 = h.derivative(axpy(c, dt, k3));
    const double w = dt / 6.0;
    for (int i = 0; i < 4; ++i) {
        c.re[i] += w * (k1.re[i] + 2.0 * (k2.re[i] + k3.re[i]) + k4.re[i]);
        c.im[i] += w * (k1.im[i] + 2.0 * (k2.im[i] + k3.im[i]) + k4.im[i]);
    }
}

void check_norm(const Vec4& c, const char* where) {
    double sum = 0.0;
    for (const auto& v : c) sum += std::norm(v);
    const double drift = std::abs(std::sqrt(sum) - 1.0);
    if (!(drift <= kRk4NormFailure))
        throw NumericalError(std::string(where) + ": norm drift " + std::to_string(drift) +
                             " exceeds tolerance; reduce the integration step");
}

void require_input_normalized(const QuantumState& state, const char* where) {
    if (!(std::abs(state.norm_squared() - 1.0) <= kObservableNormTolerance))
        throw InvalidArgument(std::string(where) + ": input state is not normalized");
}

}  // namespace

Vec4 RotatingHamiltonian::apply(const Vec4& c) const noexcept {
    const double a = coupling_a;
    const double b = coupling_b;
    return {diag[0] * c[0] + a * c[2] + b * c[1],
            diag[1] * c[1] + a * c[3] + b * c[0],
            diag[2] * c[2] + a * c[0] + b * c[3],
            diag[3] * c[3] + a * c[1] + b * c[2]};
}

std::array<std::array<double, 4>, 4> RotatingHamiltonian::dense() const noexcept {
    std::array<std::array<double, 4>, 4> m{};
    for (int i = 0; i < 4; ++i) m[i][i] = diag[i];
    m[0][2] = m[2][0] = m[1][3] = m[3][1] = coupling_a;
    m[0][1] = m[1][0] = m[2][3] = m[3][2] = coupling_b;
    return m;
}

double RotatingHamiltonian::max_row_sum() const noexcept {
    double best = 0.0;
    for (double d : diag) best = std::max(best, std::abs(d) + std::abs(coupling_a) + std::abs(coupling_b));
    return best;
}

RotatingHamiltonian build_rotating_hamiltonian(const SpinSystemParams& params, const PulseSpec& pulse) {
    params.validate();
    pulse.validate();
    const double detune1 = params.omega1 - pulse.carrier;
    const double detune2 = params.omega2 - pulse.carrier;
    RotatingHamiltonian h;
    for (int k = 0; k < 4; ++k) {
        const auto [m1, m2] = projections(k);
        h.diag[k] = -(detune1 * m1 + detune2 * m2 + 2.0 * params.j_coupling * m1 * m2);
    }
    h.coupling_a = -0.5 * pulse.rabi1;
    h.coupling_b = -0.5 * pulse.rabi2;
    return h;
}

QuantumState evolve_rk4(const QuantumState& state, const RotatingHamiltonian& h, double tau, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw InvalidArgument("evolve_rk4: step must be > 0");
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("evolve_rk4: tau must be >= 0");
    require_input_normalized(state, "evolve_rk4");

    const RealHamiltonian real_h{h.diag, h.coupling_a, h.coupling_b};
    SplitState c;
    for (int i = 0; i < 4; ++i) {
        c.re[i] = state.amplitudes()[i].real();
        c.im[i] = state.amplitudes()[i].imag();
    }
    const auto full_steps = static_cast<std::size_t>(std::floor(tau / step));
    for (std::size_t n = 0; n < full_steps; ++n) rk4_step(real_h, c, step);
    const double remainder = tau - static_cast<double>(full_steps) * step;
    if (remainder > 1e-12 * tau) rk4_step(real_h, c, remainder);

    Vec4 out;
    for (int i = 0; i < 4; ++i) out[i] = Amplitude(c.re[i], c.im[i]);
    check_norm(out, "evolve_rk4");
    return QuantumState::unchecked(out);
}

QuantumState evolve_exact(const QuantumState& state, const RotatingHamiltonian& h, double tau) {
    if (!(tau >= 0.0) || !std::isfinite(tau)) throw InvalidArgument("evolve_exact: tau must be >= 0");
    const Vec4& c = state.amplitudes();
    if (tau == 0.0) return state;

    if (h.is_diagonal()) {
        Vec4 out;
        for (int k = 0; k < 4; ++k) out[k] = std::polar(1.0, -h.diag[k] * tau) * c[k];
        return QuantumState::unchecked(out);
    }

    Eigen::Matrix4d m;
    const auto dense = h.dense();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = dense[i][j];

    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(m);
    if (solver.info() != Eigen::Success) throw NumericalError("evolve_exact: eigen-decomposition did not converge");
    const Eigen::Matrix4d& v = solver.eigenvectors();
    const Eigen::Vector4d& lambda = solver.eigenvalues();
    const double residual = (m * v - v * lambda.asDiagonal()).norm();
    if (!(residual <= kEigenResidualLimit))
        throw NumericalError("evolve_exact: eigen residual " + std::to_string(residual) + " exceeds 1e-10");

    const Eigen::Vector4cd in(c[0], c[1], c[2], c[3]);
    Eigen::Vector4cd rotated = v.transpose().cast<Amplitude>() * in;
    for (int k = 0; k < 4; ++k) rotated[k] *= std::polar(1.0, -lambda[k] * tau);
    const Eigen::Vector4cd result = v.cast<Amplitude>() * rotated;
    return QuantumState::unchecked({result[0], result[1], result[2], result[3]});
}

QuantumState frame_transform(const QuantumState& state, double carrier, double t, FrameDirection direction) {
    const double sign = direction == FrameDirection::kToLab ? 1.0 : -1.0;
    Vec4 out = state.amplitudes();
    for (int k = 0; k < 4; ++k) {
        const auto [m1, m2] = projections(k);
        out[k] *= std::polar(1.0, sign * carrier * t * (m1 + m2));
    }
    return QuantumState::unchecked(out);
}

double default_quantum_step(const RotatingHamiltonian& h, double tau) {
    return budgeted_rk4_step(h.max_row_sum(), tau);
}

QuantumState sample_quantum_segment(const QuantumState& state, const RotatingHamiltonian& h, std::size_t intervals,
                                    double spacing, double step, Propagator propagator, std::size_t first_index,
                                    bool include_start, Trajectory& out) {
    auto record = [&](const QuantumState& s, std::size_t index) {
        out.times.push_back(static_cast<double>(index) * spacing);
        out.samples.push_back(observables_from_amplitudes(s));
    };
    if (include_start) record(state, first_index);

    QuantumState current = state;
    for (std::size_t k = 1; k <= intervals; ++k) {
        if (propagator == Propagator::kRk4) {
            current = evolve_rk4(current, h, spacing, step);
        } else {
            current = evolve_exact(current, h, spacing);
        }
        record(current, first_index + k);
    }
    return current;
}

Trajectory simulate_quantum(const QuantumState& initial, const SpinSystemParams& params, const PulseSpec& pulse,
                            double step, double sample_every) {
    const auto h = build_rotating_hamiltonian(params, pulse);
    const auto grid = uniform_grid(pulse.duration, sample_every);

    Trajectory traj;
    traj.engine = Engine::kQuantum;
    traj.metadata = TrajectoryMetadata{params, PulseSequence{0.0, {SequenceEntry{pulse, 0.0}}}};
    traj.times.reserve(grid.intervals + 1);
    traj.samples.reserve(grid.intervals + 1);
    sample_quantum_segment(initial, h, grid.intervals, grid.spacing, step, Propagator::kRk4, 0, true, traj);
    return traj;
}

}  // namespace spinlab

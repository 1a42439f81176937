#pragma once

// Value types shared by every engine. Units: hbar = 1, all frequencies are
// angular frequencies, spin magnitudes are 1/2.

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace spinlab {

using Amplitude = std::complex<double>;

/// Static parameters of the two-spin Ising molecule.
struct SpinSystemParams {
    double omega1 = 0.0;      ///< Larmor frequency of spin A
    double omega2 = 0.0;      ///< Larmor frequency of spin B
    double j_coupling = 0.0;  ///< Ising constant J in -2J Iz1 Iz2

    void validate() const;
};

/// One rectangular pulse of a circularly polarized field rotating at `carrier`.
struct PulseSpec {
    double carrier = 0.0;
    double rabi1 = 0.0;  ///< Rabi frequency of spin A
    double rabi2 = 0.0;  ///< Rabi frequency of spin B
    double duration = 0.0;

    void validate() const;
};

/// A pulse followed by a drive-free delay.
struct SequenceEntry {
    PulseSpec pulse;
    double delay = 0.0;
};

/// Pulses applied back to back. `lead` is a drive-free interval before the
/// first pulse; it is spent in the frame of the first pulse's carrier.
struct PulseSequence {
    double lead = 0.0;
    std::vector<SequenceEntry> entries;

    void validate() const;
    double total_duration() const;
};

/// Computational basis order used everywhere: |00>, |01>, |10>, |11>.
/// First index is spin A. Index 0 is Iz = +1/2, index 1 is Iz = -1/2.
enum class BasisState : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

/// Iz eigenvalue for a single-spin index (0 -> +1/2, 1 -> -1/2).
constexpr double spin_projection(int index) noexcept { return index == 0 ? 0.5 : -0.5; }

/// Projections (m1, m2) of basis state `k` in the fixed basis order.
constexpr std::array<double, 2> projections(int k) noexcept {
    return {spin_projection(k >> 1), spin_projection(k & 1)};
}

/// Normalized two-spin pure state.
class QuantumState {
public:
    static constexpr double kNormTolerance = 1e-9;

    /// Throws InvalidArgument unless the squared norm is 1 within kNormTolerance.
    QuantumState(Amplitude c00, Amplitude c01, Amplitude c10, Amplitude c11);
    explicit QuantumState(const std::array<Amplitude, 4>& amplitudes);

    /// Skips the norm check. Used by propagators, which monitor the norm
    /// themselves with their own failure threshold.
    static QuantumState unchecked(const std::array<Amplitude, 4>& amplitudes) noexcept;

    Amplitude c00() const noexcept { return c_[0]; }
    Amplitude c01() const noexcept { return c_[1]; }
    Amplitude c10() const noexcept { return c_[2]; }
    Amplitude c11() const noexcept { return c_[3]; }
    Amplitude operator[](BasisState k) const noexcept { return c_[static_cast<int>(k)]; }

    const std::array<Amplitude, 4>& amplitudes() const noexcept { return c_; }
    double norm_squared() const noexcept;

private:
    QuantumState() = default;
    std::array<Amplitude, 4> c_{};
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr bool operator==(Vec3, Vec3) = default;

    double norm() const noexcept { return std::sqrt(x * x + y * y + z * z); }
};

constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) noexcept {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// Classical spin angular momentum; engine states have length 1/2.
using SpinVector = Vec3;

struct ClassicalState {
    SpinVector spin1;
    SpinVector spin2;
};

/// Spin averages for one instant.
///
/// For classical samples `norm` holds |I1| (a length monitor) and
/// `concurrence` is empty: entanglement is not defined there.
struct Observables {
    double i1x = 0.0, i1y = 0.0, i1z = 0.0;
    double i2x = 0.0, i2y = 0.0, i2z = 0.0;
    double norm = 0.0;
    std::optional<double> concurrence;

    /// The six spin components in the order i1x, i1y, i1z, i2x, i2y, i2z.
    std::array<double, 6> components() const noexcept { return {i1x, i1y, i1z, i2x, i2y, i2z}; }
    double transverse1() const noexcept { return std::hypot(i1x, i1y); }
    double transverse2() const noexcept { return std::hypot(i2x, i2y); }
};

enum class Engine { kQuantum, kClassical };

std::string_view to_string(Engine engine) noexcept;

struct TrajectoryMetadata {
    SpinSystemParams params;
    PulseSequence sequence;
};

/// Uniformly sampled observables of one run.
struct Trajectory {
    Engine engine = Engine::kQuantum;
    std::vector<double> times;
    std::vector<Observables> samples;
    /// Empty for trajectories read back from files.
    std::optional<TrajectoryMetadata> metadata;

    /// Throws InvalidArgument on size mismatch, non-zero start, or
    /// non-uniform / non-increasing times (1e-12 relative).
    void validate() const;
    const Observables& final() const { return samples.back(); }
};

}  // namespace spinlab

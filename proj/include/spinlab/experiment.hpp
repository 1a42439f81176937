#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spinlab/sequence.hpp"
#include "spinlab/spin_core.hpp"
#include "spinlab/types.hpp"

namespace spinlab {

/// The [pulse] section: either a symbolic pi-pulse on `target` or an explicit
/// `carrier` with `duration`.
struct PulseRequest {
    std::optional<Transition> target;
    std::optional<double> carrier;
    double rabi1 = 0.1;
    double rabi2 = 0.02;
    /// Required with `carrier`; overrides the pi-pulse length with `target`.
    std::optional<double> duration;
};

struct ExperimentConfig {
    SpinSystemParams system{200.0, 100.0, 5.0};
    BlochAngles initial1{1.5707963267948966, -1.5707963267948966};
    BlochAngles initial2{0.0, 0.0};
    PulseRequest pulse;
    std::optional<double> step;
    std::size_t samples = 1000;  ///< samples across the pulse
    std::string prefix = "spinlab";
    bool run_quantum = true;
    bool run_classical = true;
    double padding = 0.1;  ///< drive-free time on each side, as a fraction of the pulse

    QuantumState quantum_initial() const;
    ClassicalState classical_initial() const;
    PulseSpec resolved_pulse() const;
    double sample_spacing() const;
    /// Whole sample intervals of padding on each side of the pulse.
    std::size_t padding_intervals() const;
    /// Lead padding, the pulse, trailing padding.
    PulseSequence sequence() const;
    IntegratorSettings integrator() const;
};

/// Parses the plain-text experiment format:
///
///     # comment
///     [system]      omega1, omega2, j
///     [initial]     theta1, phi1, theta2, phi2          (radians)
///     [pulse]       target | carrier, rabi1, rabi2, duration
///     [integrator]  step, samples
///     [output]      prefix, engines, padding
///
/// Numbers accept `pi` factors such as `-pi/2` or `1.5*pi`. [system] and
/// [pulse] are required; everything else has a default. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);

/// Reads and parses a config file; IoError if it cannot be read.
ExperimentConfig load_config(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Trajectory CSV

inline constexpr std::string_view kTrajectoryHeader = "t,i1x,i1y,i1z,i2x,i2y,i2z,norm,concurrence";

/// Shortest round-trip decimal for finite values, `nan` otherwise.
std::string format_number(double value);

std::string format_trajectory_csv(const Trajectory& trajectory);
void write_trajectory_csv(const Trajectory& trajectory, const std::filesystem::path& path);

/// Inverse of format_trajectory_csv. The engine is inferred from the
/// concurrence column (`nan` means classical). Metadata is left empty.
Trajectory parse_trajectory_csv(std::string_view text);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Engine comparison

inline constexpr double kDivergenceThreshold = 0.45;
inline constexpr double kEntangledComponentBound = 5e-3;
inline constexpr double kEntangledConcurrence = 0.995;

struct ComparisonReport {
    std::array<double, 6> quantum_final{};
    std::array<double, 6> classical_final{};
    /// max over samples of |quantum - classical|, per component
    std::array<double, 6> max_divergence{};
    double final_concurrence = 0.0;
    double quantum_transverse1 = 0.0;  ///< residual spin-1 transverse amplitude
    double classical_transverse1 = 0.0;
    double spin2_divergence = 0.0;        ///< |i2z classical - i2z quantum| at the end
    double transverse1_divergence = 0.0;  ///< same for the spin-1 transverse amplitude

    bool spin2_divergent = false;
    bool spin1_divergent = false;
    bool divergent = false;  ///< both of the above
    bool quantum_entangled = false;
};

/// Builds the report from the two sampled runs alone. Throws InvalidArgument
/// unless the time columns are identical and the engines are as named.
ComparisonReport compare_trajectories(const Trajectory& quantum, const Trajectory& classical);

std::string report_to_json(const ComparisonReport& report);
std::string report_summary(const ComparisonReport& report);

struct ComparisonRun {
    Trajectory quantum;
    Trajectory classical;
    ComparisonReport report;
};

/// Runs both engines on the same time grid. Needs both engines enabled.
ComparisonRun compare_engines(const ExperimentConfig& config);

/// Output files derived from the config prefix.
struct OutputPaths {
    std::filesystem::path quantum_csv;
    std::filesystem::path classical_csv;
    std::filesystem::path report_json;
    std::filesystem::path sweep_csv;
    std::filesystem::path plot_script;
};

OutputPaths output_paths(const std::string& prefix);

/// compare_engines plus both trajectory files and the JSON report.
ComparisonReport run_compare(const ExperimentConfig& config);

Trajectory run_engine(const ExperimentConfig& config, Engine engine);

// ---------------------------------------------------------------------------
// Frequency sweep

struct SweepRow {
    double carrier = 0.0;
    /// 1 - i2z / 0.5 after the pulse; nan when the engine is disabled.
    double quantum_response = 0.0;
    double classical_response = 0.0;
};

/// Re-runs the configured pulse at `points` carriers spread evenly over
/// [omega_min, omega_max]. The quantum side uses the spectral propagator,
/// the classical side RK4 at the configured or a coarse default step.
std::vector<SweepRow> sweep_frequency(const ExperimentConfig& config, double omega_min, double omega_max,
                                      std::size_t points);

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

/// gnuplot script plotting the six components of each listed CSV file.
std::string gnuplot_script(const std::vector<std::filesystem::path>& csv_files);

/// Writes `contents` to `path`, throwing IoError with the path on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace spinlab

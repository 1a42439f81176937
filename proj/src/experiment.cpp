#include "spinlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "spinlab/classical_dynamics.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/integrator.hpp"
#include "spinlab/quantum_dynamics.hpp"

namespace spinlab {

namespace {

constexpr std::array<const char*, 6> kComponentNames = {"i1x", "i1y", "i1z", "i2x", "i2y", "i2z"};

double spin2_response(double i2z) noexcept { return 1.0 - i2z / 0.5; }

}  // namespace

ComparisonReport compare_trajectories(const Trajectory& quantum, const Trajectory& classical) {
    quantum.validate();
    classical.validate();
    if (quantum.engine != Engine::kQuantum || classical.engine != Engine::kClassical)
        throw InvalidArgument("compare_trajectories: expected one quantum and one classical trajectory");
    if (quantum.times != classical.times)
        throw InvalidArgument("compare_trajectories: trajectories are sampled on different time grids");

    ComparisonReport r;
    for (std::size_t k = 0; k < quantum.samples.size(); ++k) {
        const auto q = quantum.samples[k].components();
        const auto c = classical.samples[k].components();
        for (std::size_t i = 0; i < 6; ++i) r.max_divergence[i] = std::max(r.max_divergence[i], std::abs(q[i] - c[i]));
    }
    const auto& qf = quantum.final();
    const auto& cf = classical.final();
    r.quantum_final = qf.components();
    r.classical_final = cf.components();
    r.final_concurrence = qf.concurrence.value_or(std::numeric_limits<double>::quiet_NaN());
    r.quantum_transverse1 = qf.transverse1();
    r.classical_transverse1 = cf.transverse1();
    r.spin2_divergence = std::abs(cf.i2z - qf.i2z);
    r.transverse1_divergence = std::abs(r.classical_transverse1 - r.quantum_transverse1);

    r.spin2_divergent = r.spin2_divergence >= kDivergenceThreshold;
    r.spin1_divergent = r.transverse1_divergence >= kDivergenceThreshold;
    r.divergent = r.spin2_divergent && r.spin1_divergent;
    r.quantum_entangled =
        std::all_of(r.quantum_final.begin(), r.quantum_final.end(),
                    [](double v) { return std::abs(v) <= kEntangledComponentBound; }) &&
        r.final_concurrence >= kEntangledConcurrence;
    return r;
}

std::string report_to_json(const ComparisonReport& r) {
    nlohmann::ordered_json j;
    auto components = [](const std::array<double, 6>& values) {
        nlohmann::ordered_json out;
        for (std::size_t i = 0; i < 6; ++i) out[kComponentNames[i]] = values[i];
        return out;
    };
    j["quantum_final"] = components(r.quantum_final);
    j["classical_final"] = components(r.classical_final);
    j["max_divergence"] = components(r.max_divergence);
    j["final_concurrence"] = r.final_concurrence;
    j["quantum_transverse1"] = r.quantum_transverse1;
    j["classical_transverse1"] = r.classical_transverse1;
    j["spin2_divergence"] = r.spin2_divergence;
    j["transverse1_divergence"] = r.transverse1_divergence;
    j["verdict"] = {{"spin2_divergent", r.spin2_divergent},
                    {"spin1_divergent", r.spin1_divergent},
                    {"divergent", r.divergent},
                    {"quantum_entangled", r.quantum_entangled}};
    return j.dump(2) + "\n";
}

std::string report_summary(const ComparisonReport& r) {
    std::ostringstream out;
    out.precision(6);
    out << "component     quantum      classical    max|diff|\n";
    for (std::size_t i = 0; i < 6; ++i) {
        out << "  " << kComponentNames[i] << "  " << std::scientific << std::showpos << r.quantum_final[i] << "  "
            << r.classical_final[i] << "  " << std::noshowpos << r.max_divergence[i] << "\n";
    }
    out << std::defaultfloat;
    out << "final concurrence (quantum):        " << r.final_concurrence << "\n";
    out << "spin-1 transverse amplitude q / c:  " << r.quantum_transverse1 << " / " << r.classical_transverse1 << "\n";
    out << "final |i2z| divergence:             " << r.spin2_divergence << "\n";
    out << "final spin-1 transverse divergence: " << r.transverse1_divergence << "\n";
    out << "quantum entangled: " << (r.quantum_entangled ? "yes" : "no")
        << ", engines diverge: " << (r.divergent ? "yes" : "no") << "\n";
    return out.str();
}

Trajectory run_engine(const ExperimentConfig& config, Engine engine) {
    const auto sequence = config.sequence();
    const auto settings = config.integrator();
    if (engine == Engine::kQuantum)
        return run_sequence(config.quantum_initial(), config.system, sequence, engine, settings);
    return run_sequence(config.classical_initial(), config.system, sequence, engine, settings);
}

ComparisonRun compare_engines(const ExperimentConfig& config) {
    if (!config.run_quantum || !config.run_classical)
        throw ConfigError("comparison needs both engines enabled", 0, "output.engines");
    // Independent runs with no shared mutable state; order of completion is irrelevant.
    auto classical = std::async(std::launch::async, [&] { return run_engine(config, Engine::kClassical); });
    ComparisonRun run;
    run.quantum = run_engine(config, Engine::kQuantum);
    run.classical = classical.get();
    run.report = compare_trajectories(run.quantum, run.classical);
    return run;
}

OutputPaths output_paths(const std::string& prefix) {
    return {prefix + "_quantum.csv", prefix + "_classical.csv", prefix + "_report.json", prefix + "_sweep.csv",
            prefix + ".gp"};
}

ComparisonReport run_compare(const ExperimentConfig& config) {
    const auto run = compare_engines(config);
    const auto paths = output_paths(config.prefix);
    write_trajectory_csv(run.quantum, paths.quantum_csv);
    write_trajectory_csv(run.classical, paths.classical_csv);
    write_text_file(paths.report_json, report_to_json(run.report));
    return run.report;
}

std::vector<SweepRow> sweep_frequency(const ExperimentConfig& config, double omega_min, double omega_max,
                                      std::size_t points) {
    if (points < 2) throw InvalidArgument("sweep: need at least 2 points");
    if (!std::isfinite(omega_min) || !std::isfinite(omega_max) || !(omega_max > omega_min))
        throw InvalidArgument("sweep: need omega_min < omega_max");

    const auto base = config.resolved_pulse();
    const auto quantum_initial = config.quantum_initial();
    const auto classical_initial = config.classical_initial();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<SweepRow> rows;
    rows.reserve(points);
    for (std::size_t k = 0; k < points; ++k) {
        PulseSpec pulse = base;
        pulse.carrier = omega_min + (omega_max - omega_min) * static_cast<double>(k) / static_cast<double>(points - 1);
        SweepRow row{pulse.carrier, nan, nan};
        if (config.run_quantum) {
            const auto h = build_rotating_hamiltonian(config.system, pulse);
            row.quantum_response = spin2_response(observables_from_amplitudes(evolve_exact(quantum_initial, h, pulse.duration)).i2z);
        }
        if (config.run_classical) {
            const double step =
                config.step.value_or(coarse_rk4_step(max_field_magnitude(config.system, pulse), pulse.duration));
            const auto final_state = evolve_classical(classical_initial, config.system, pulse, pulse.duration, step);
            row.classical_response = spin2_response(final_state.spin2.z);
        }
        rows.push_back(row);
    }
    return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "carrier,quantum_response,classical_response\n";
    for (const auto& row : rows) {
        out += format_number(row.carrier) + ',' + format_number(row.quantum_response) + ',' +
               format_number(row.classical_response) + '\n';
    }
    return out;
}

std::string gnuplot_script(const std::vector<std::filesystem::path>& csv_files) {
    std::ostringstream out;
    out << "set datafile separator ','\n";
    out << "set key autotitle columnhead\n";
    out << "set xlabel 't'\n";
    out << "set multiplot layout " << csv_files.size() << ",2\n";
    for (const auto& file : csv_files) {
        const std::string name = file.filename().string();
        out << "set title '" << name << " spin 1'\n";
        out << "plot '" << file.string() << "' using 1:2 with lines, '' using 1:3 with lines, '' using 1:4 with lines\n";
        out << "set title '" << name << " spin 2'\n";
        out << "plot '" << file.string() << "' using 1:5 with lines, '' using 1:6 with lines, '' using 1:7 with lines\n";
    }
    out << "unset multiplot\n";
    return out.str();
}

}  // namespace spinlab

// spinlab: command-line front end for the quantum and classical two-spin engines.
//
// Exit codes: 0 success, 2 config error, 3 numerical-invariant failure, 4 I/O error.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"
#include "spinlab/spin_core.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct Options {
    std::string config_path;
    std::string prefix;
    bool plot_script = false;
    double sweep_min = 0.0;
    double sweep_max = 0.0;
    std::size_t sweep_points = 0;
};

spinlab::ExperimentConfig load(const Options& opts) {
    auto cfg = spinlab::load_config(opts.config_path);
    if (!opts.prefix.empty()) cfg.prefix = opts.prefix;
    return cfg;
}

void print_final(const spinlab::Trajectory& traj) {
    const auto& f = traj.final();
    std::printf("%s run: %zu samples, t_end = %.6g\n", std::string(spinlab::to_string(traj.engine)).c_str(),
                traj.times.size(), traj.times.back());
    std::printf("  spin 1: (% .6e, % .6e, % .6e)\n", f.i1x, f.i1y, f.i1z);
    std::printf("  spin 2: (% .6e, % .6e, % .6e)\n", f.i2x, f.i2y, f.i2z);
    if (f.concurrence) std::printf("  concurrence: %.9f\n", *f.concurrence);
}

void maybe_write_plot(const Options& opts, const spinlab::ExperimentConfig& cfg,
                      const std::vector<std::filesystem::path>& files) {
    if (!opts.plot_script) return;
    const auto path = spinlab::output_paths(cfg.prefix).plot_script;
    spinlab::write_text_file(path, spinlab::gnuplot_script(files));
    std::printf("wrote %s\n", path.string().c_str());
}

int run_single(const Options& opts, spinlab::Engine engine) {
    const auto cfg = load(opts);
    const auto traj = spinlab::run_engine(cfg, engine);
    const auto paths = spinlab::output_paths(cfg.prefix);
    const auto& file = engine == spinlab::Engine::kQuantum ? paths.quantum_csv : paths.classical_csv;
    spinlab::write_trajectory_csv(traj, file);
    print_final(traj);
    std::printf("wrote %s\n", file.string().c_str());
    maybe_write_plot(opts, cfg, {file});
    return 0;
}

int run_compare(const Options& opts) {
    const auto cfg = load(opts);
    const auto report = spinlab::run_compare(cfg);
    const auto paths = spinlab::output_paths(cfg.prefix);
    std::fputs(spinlab::report_summary(report).c_str(), stdout);
    std::printf("wrote %s, %s, %s\n", paths.quantum_csv.string().c_str(), paths.classical_csv.string().c_str(),
                paths.report_json.string().c_str());
    maybe_write_plot(opts, cfg, {paths.quantum_csv, paths.classical_csv});
    return 0;
}

int run_sweep(const Options& opts) {
    const auto cfg = load(opts);
    const auto rows = spinlab::sweep_frequency(cfg, opts.sweep_min, opts.sweep_max, opts.sweep_points);
    const auto csv = spinlab::format_sweep_csv(rows);
    const auto path = spinlab::output_paths(cfg.prefix).sweep_csv;
    spinlab::write_text_file(path, csv);
    std::fputs(csv.c_str(), stdout);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

int run_resonances(const Options& opts) {
    const auto cfg = load(opts);
    const auto freqs = spinlab::transition_frequencies(cfg.system);
    std::printf("%-12s %-12s %s\n", "transition", "levels", "frequency");
    for (auto t : spinlab::kAllTransitions) {
        const auto [lo, hi] = spinlab::transition_levels(t);
        static constexpr const char* kNames[] = {"|00>", "|01>", "|10>", "|11>"};
        const std::string levels = std::string(kNames[static_cast<int>(lo)]) + "-" + kNames[static_cast<int>(hi)];
        std::printf("%-12s %-12s %s\n", std::string(spinlab::to_string(t)).c_str(), levels.c_str(),
                    spinlab::format_number(freqs[t]).c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum vs quasiclassical dynamics of a driven two-spin Ising molecule"};
    app.require_subcommand(1);
    Options opts;

    auto add_common = [&](CLI::App* sub, bool with_plot) {
        sub->add_option("config", opts.config_path, "Experiment file")->required();
        sub->add_option("--prefix", opts.prefix, "Override [output] prefix");
        if (with_plot) sub->add_flag("--plot-script", opts.plot_script, "Also write a gnuplot script");
    };

    auto* quantum = app.add_subcommand("run-quantum", "Run the four-amplitude quantum engine");
    add_common(quantum, true);
    auto* classical = app.add_subcommand("run-classical", "Run the quasiclassical torque engine");
    add_common(classical, true);
    auto* compare = app.add_subcommand("compare", "Run both engines and write a comparison report");
    add_common(compare, true);
    auto* sweep = app.add_subcommand("sweep", "Final spin-2 response versus carrier frequency");
    add_common(sweep, false);
    sweep->add_option("--min", opts.sweep_min, "Lowest carrier")->required();
    sweep->add_option("--max", opts.sweep_max, "Highest carrier")->required();
    sweep->add_option("--points", opts.sweep_points, "Number of carriers (>= 2)")->required();
    auto* resonances = app.add_subcommand("resonances", "Print the single-spin-flip transition frequencies");
    add_common(resonances, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (quantum->parsed()) return run_single(opts, spinlab::Engine::kQuantum);
        if (classical->parsed()) return run_single(opts, spinlab::Engine::kClassical);
        if (compare->parsed()) return run_compare(opts);
        if (sweep->parsed()) return run_sweep(opts);
        if (resonances->parsed()) return run_resonances(opts);
    } catch (const spinlab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spinlab::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const spinlab::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const spinlab::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

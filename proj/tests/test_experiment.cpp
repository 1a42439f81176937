#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <sstream>

#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"

using namespace spinlab;
using std::numbers::pi;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("spinlab_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

// Short pulse so the end-to-end tests stay fast.
const char* kShort = R"(
[system]
omega1 = 200
omega2 = 100
j = 5
[pulse]
target = b-given-a1
rabi2 = 0.5
[integrator]
samples = 50
[output]
padding = 0.1
)";

std::string config_error_key(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

std::size_t config_error_line(std::string_view text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return 0;
}

}  // namespace

TEST_CASE("the shipped fig12 experiment") {
    const auto cfg = load_config(SPINLAB_CONFIG_DIR "/fig12.experiment");
    CHECK(cfg.system.omega1 == 200.0);
    CHECK(cfg.system.omega2 == 100.0);
    CHECK(cfg.system.j_coupling == 5.0);
    CHECK(cfg.initial1.theta == doctest::Approx(pi / 2));
    CHECK(cfg.initial1.phi == doctest::Approx(-pi / 2));
    CHECK(cfg.pulse.rabi1 == 0.1);
    CHECK(cfg.pulse.rabi2 == 0.02);
    const auto p = cfg.resolved_pulse();
    CHECK(p.carrier == doctest::Approx(95.0));
    CHECK(p.duration == doctest::Approx(pi / 0.02));
    CHECK(cfg.samples == 1000);
    CHECK(cfg.padding_intervals() == 100);
    CHECK(cfg.prefix == "fig12");
    CHECK(cfg.run_quantum);
    CHECK(cfg.run_classical);
}

TEST_CASE("parse_config errors") {
    CHECK_THROWS_AS(parse_config(""), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("# nothing\n"), doctest::Contains("missing section"), ConfigError);
    CHECK(config_error_key("[system]\n[pulse]\ncarrier = 95\nduration = -1\n") == "pulse.duration");
    CHECK(config_error_key("[system]\n[pulse]\ncarrier = 95\n") == "pulse.duration");
    CHECK(config_error_key("[system]\nomega3 = 1\n[pulse]\ntarget = b-given-a1\n") == "system.omega3");
    CHECK(config_error_line("[system]\nomega1 = 1\nomega1 = 2\n[pulse]\ntarget = b-given-a1\n") == 3);
    CHECK(config_error_line("[system]\nomega1 = abc\n[pulse]\ntarget = b-given-a1\n") == 2);
    CHECK(config_error_key("[system]\n[pulse]\ntarget = b-given-a7\n") == "pulse.target");
    CHECK(config_error_key("[system]\n[pulse]\ntarget = b-given-a1\n[integrator]\nsamples = 1\n") ==
          "integrator.samples");
    CHECK(config_error_key("[system]\n[pulse]\ntarget = b-given-a1\n[output]\nengines = neither\n") ==
          "output.engines");
    CHECK(config_error_key("[system]\n[pulse]\ntarget = b-given-a1\ncarrier = 3\n") == "pulse");
    CHECK_THROWS_AS(parse_config("omega1 = 1\n[system]\n[pulse]\ntarget = b-given-a1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[system\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[bogus]\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/dir/x.experiment"), IoError);
}

TEST_CASE("parse_config expressions and engines") {
    const auto cfg = parse_config(
        "[system]\nomega1 = 3*pi # trailing comment\nomega2 = -pi/2\n[pulse]\ncarrier = 1.5*pi\nduration = "
        "2\n[output]\nengines = classical\n");
    CHECK(cfg.system.omega1 == doctest::Approx(3 * pi));
    CHECK(cfg.system.omega2 == doctest::Approx(-pi / 2));
    CHECK(cfg.system.j_coupling == 5.0);
    CHECK(*cfg.pulse.carrier == doctest::Approx(1.5 * pi));
    CHECK_FALSE(cfg.run_quantum);
    CHECK(cfg.run_classical);
    const auto both = parse_config("[system]\n[pulse]\ntarget = a-given-b0\n[output]\nengines = quantum, classical\n");
    CHECK(both.run_quantum);
    CHECK(both.run_classical);
}

TEST_CASE("format_number") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-7) == "-2.5e-07");
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("trajectory CSV") {
    SUBCASE("single sample: header plus one row") {
        Trajectory t;
        t.times = {0.0};
        Observables o;
        o.i2z = 0.5;
        o.norm = 1.0;
        o.concurrence = 0.0;
        t.samples = {o};
        const auto text = format_trajectory_csv(t);
        CHECK(text == std::string(kTrajectoryHeader) + "\n0,0,0,0,0,0,0.5,1,0\n");
    }
    SUBCASE("round trip of a quantum and a classical run") {
        const auto cfg = parse_config(kShort);
        for (auto engine : {Engine::kQuantum, Engine::kClassical}) {
            const auto t = run_engine(cfg, engine);
            const auto text = format_trajectory_csv(t);
            const auto back = parse_trajectory_csv(text);
            CHECK(back.engine == engine);
            CHECK(back.times == t.times);
            for (std::size_t k = 0; k < t.samples.size(); ++k) {
                CHECK(back.samples[k].components() == t.samples[k].components());
                CHECK(back.samples[k].concurrence.has_value() == t.samples[k].concurrence.has_value());
            }
            if (engine == Engine::kClassical) CHECK(text.find(",nan\n") != std::string::npos);
        }
    }
    SUBCASE("malformed input") {
        CHECK_THROWS(parse_trajectory_csv("t,x\n0,1\n"));
        CHECK_THROWS(parse_trajectory_csv(std::string(kTrajectoryHeader) + "\n0,1,2\n"));
    }
}

TEST_CASE("run_compare writes consistent, deterministic files") {
    const auto dir = scratch_dir("compare");
    auto cfg = parse_config(kShort);
    cfg.prefix = (dir / "a").string();
    const auto report = run_compare(cfg);
    const auto paths = output_paths(cfg.prefix);

    const auto q = read_trajectory_csv(paths.quantum_csv);
    const auto c = read_trajectory_csv(paths.classical_csv);
    CHECK(q.times == c.times);
    CHECK(q.times.size() == 61);  // 50 + 2 * 5 intervals

    // Every report field follows from the two files alone.
    const auto again = compare_trajectories(q, c);
    CHECK(report_to_json(again) == report_to_json(report));
    CHECK(slurp(paths.report_json) == report_to_json(report));
    const auto json = nlohmann::json::parse(slurp(paths.report_json));
    CHECK(json["verdict"]["divergent"].get<bool>() == report.divergent);

    cfg.prefix = (dir / "b").string();
    run_compare(cfg);
    const auto other = output_paths(cfg.prefix);
    CHECK(slurp(paths.quantum_csv) == slurp(other.quantum_csv));
    CHECK(slurp(paths.classical_csv) == slurp(other.classical_csv));
    CHECK(slurp(paths.report_json) == slurp(other.report_json));
}

TEST_CASE("compare without drive is static and not divergent") {
    const auto cfg = parse_config(
        "[system]\nomega1 = 200\nomega2 = 100\nj = 5\n[pulse]\ncarrier = 95\nrabi1 = 0\nrabi2 = 0\nduration = "
        "10\n[integrator]\nsamples = 100\n");
    const auto run = compare_engines(cfg);
    for (double d : run.report.max_divergence) CHECK(d <= 1e-9);
    CHECK_FALSE(run.report.divergent);
    CHECK_FALSE(run.report.quantum_entangled);
}

TEST_CASE("uncoupled spins nutate identically in both engines") {
    const auto cfg = parse_config(
        "[system]\nomega1 = 200\nomega2 = 100\nj = 0\n[initial]\ntheta1 = 0\n[pulse]\ncarrier = 100\nrabi1 = "
        "0.1\nrabi2 = 0.5\nduration = 2*pi\n[integrator]\nsamples = 200\n");
    const auto run = compare_engines(cfg);
    CHECK(run.report.max_divergence[5] <= 1e-6);
    CHECK_FALSE(run.report.spin2_divergent);
    CHECK(run.quantum.final().i2z == doctest::Approx(-0.5).epsilon(1e-6));  // pulse area pi
}

TEST_CASE("compare needs both engines") {
    auto cfg = parse_config(kShort);
    cfg.run_classical = false;
    CHECK_THROWS_AS(compare_engines(cfg), ConfigError);
}

TEST_CASE("sweep_frequency") {
    const auto cfg = parse_config(kShort);
    CHECK_THROWS_AS(sweep_frequency(cfg, 95.0, 95.0, 2), InvalidArgument);
    CHECK_THROWS_AS(sweep_frequency(cfg, 90.0, 110.0, 1), InvalidArgument);
    const auto rows = sweep_frequency(cfg, 90.0, 110.0, 5);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].carrier == 90.0);
    CHECK(rows[1].carrier == 95.0);
    CHECK(rows[4].carrier == 110.0);
    // at 95 the selective pulse flips the |1x> half of the state
    CHECK(rows[1].quantum_response == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(rows[0].quantum_response < 0.1);

    auto quantum_only = cfg;
    quantum_only.run_classical = false;
    const auto q = sweep_frequency(quantum_only, 90.0, 110.0, 2);
    CHECK(std::isnan(q[0].classical_response));
    const auto csv = format_sweep_csv(q);
    CHECK(csv.rfind("carrier,quantum_response,classical_response\n", 0) == 0);
    CHECK(csv.find(",nan\n") != std::string::npos);
}

TEST_CASE("write_text_file reports the path on failure") {
    CHECK_THROWS_WITH_AS(write_text_file("/nonexistent/dir/out.txt", "x"), doctest::Contains("/nonexistent/dir"),
                         IoError);
}

TEST_CASE("gnuplot script references every file") {
    const auto s = gnuplot_script({"a_quantum.csv", "a_classical.csv"});
    CHECK(s.find("'a_quantum.csv'") != std::string::npos);
    CHECK(s.find("'a_classical.csv'") != std::string::npos);
}

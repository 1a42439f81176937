// Python bindings for the spinlab core: level structure, both propagators,
// the two engines and the experiment driver.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "spinlab/classical_dynamics.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/experiment.hpp"
#include "spinlab/quantum_dynamics.hpp"
#include "spinlab/sequence.hpp"
#include "spinlab/spin_core.hpp"

namespace py = pybind11;
using namespace spinlab;

namespace {

Transition transition_from(const std::string& label) {
    const auto t = parse_transition(label);
    if (!t) throw InvalidArgument("unknown transition '" + label + "'");
    return *t;
}

py::dict observables_dict(const Observables& o) {
    py::dict d;
    d["i1x"] = o.i1x;
    d["i1y"] = o.i1y;
    d["i1z"] = o.i1z;
    d["i2x"] = o.i2x;
    d["i2y"] = o.i2y;
    d["i2z"] = o.i2z;
    d["norm"] = o.norm;
    d["concurrence"] = o.concurrence ? py::cast(*o.concurrence) : py::none();
    return d;
}

// Column-oriented view of a trajectory: {"engine", "t", "i1x", ...}.
py::dict trajectory_dict(const Trajectory& traj) {
    py::dict d;
    d["engine"] = std::string(to_string(traj.engine));
    d["t"] = traj.times;
    const char* names[] = {"i1x", "i1y", "i1z", "i2x", "i2y", "i2z"};
    for (int c = 0; c < 6; ++c) {
        std::vector<double> column;
        column.reserve(traj.samples.size());
        for (const auto& o : traj.samples) column.push_back(o.components()[c]);
        d[names[c]] = column;
    }
    std::vector<double> norm;
    std::vector<py::object> conc;
    for (const auto& o : traj.samples) {
        norm.push_back(o.norm);
        conc.push_back(o.concurrence ? py::cast(*o.concurrence) : py::none());
    }
    d["norm"] = norm;
    d["concurrence"] = conc;
    return d;
}

py::dict report_dict(const ComparisonReport& r) {
    py::dict d;
    d["quantum_final"] = r.quantum_final;
    d["classical_final"] = r.classical_final;
    d["max_divergence"] = r.max_divergence;
    d["final_concurrence"] = r.final_concurrence;
    d["quantum_transverse1"] = r.quantum_transverse1;
    d["classical_transverse1"] = r.classical_transverse1;
    d["spin2_divergence"] = r.spin2_divergence;
    d["transverse1_divergence"] = r.transverse1_divergence;
    d["divergent"] = r.divergent;
    d["quantum_entangled"] = r.quantum_entangled;
    return d;
}

ClassicalState classical_from(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return {{a[0], a[1], a[2]}, {b[0], b[1], b[2]}};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum and quasiclassical dynamics of a driven two-spin Ising molecule";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<SpinSystemParams>(m, "SpinSystemParams")
        .def(py::init([](double w1, double w2, double j) { return SpinSystemParams{w1, w2, j}; }), py::arg("omega1"),
             py::arg("omega2"), py::arg("j"))
        .def_readwrite("omega1", &SpinSystemParams::omega1)
        .def_readwrite("omega2", &SpinSystemParams::omega2)
        .def_readwrite("j", &SpinSystemParams::j_coupling)
        .def("__repr__", [](const SpinSystemParams& p) {
            return "SpinSystemParams(omega1=" + format_number(p.omega1) + ", omega2=" + format_number(p.omega2) +
                   ", j=" + format_number(p.j_coupling) + ")";
        });

    py::class_<PulseSpec>(m, "PulseSpec")
        .def(py::init([](double carrier, double rabi1, double rabi2, double duration) {
                 PulseSpec p{carrier, rabi1, rabi2, duration};
                 p.validate();
                 return p;
             }),
             py::arg("carrier"), py::arg("rabi1"), py::arg("rabi2"), py::arg("duration"))
        .def_readwrite("carrier", &PulseSpec::carrier)
        .def_readwrite("rabi1", &PulseSpec::rabi1)
        .def_readwrite("rabi2", &PulseSpec::rabi2)
        .def_readwrite("duration", &PulseSpec::duration)
        .def("__repr__", [](const PulseSpec& p) {
            return "PulseSpec(carrier=" + format_number(p.carrier) + ", rabi1=" + format_number(p.rabi1) +
                   ", rabi2=" + format_number(p.rabi2) + ", duration=" + format_number(p.duration) + ")";
        });

    py::class_<QuantumState>(m, "QuantumState")
        .def(py::init<const std::array<Amplitude, 4>&>(), py::arg("amplitudes"),
             "Amplitudes (c00, c01, c10, c11); must be normalized.")
        .def_property_readonly("amplitudes", &QuantumState::amplitudes)
        .def("norm_squared", &QuantumState::norm_squared);

    m.def("energy_levels", [](const SpinSystemParams& p) { return energy_levels(p).as_array(); },
          "Energies of |00>, |01>, |10>, |11>.");
    m.def("transition_frequencies", [](const SpinSystemParams& p) {
        const auto f = transition_frequencies(p);
        py::dict d;
        for (auto t : kAllTransitions) d[py::str(std::string(to_string(t)))] = f[t];
        return d;
    });
    m.def("observables", [](const QuantumState& s) { return observables_dict(observables_from_amplitudes(s)); });
    m.def("concurrence", [](const QuantumState& s) { return concurrence(s); });
    m.def("product_state",
          [](double theta1, double phi1, double theta2, double phi2) {
              return product_state({theta1, phi1}, {theta2, phi2});
          },
          py::arg("theta1"), py::arg("phi1"), py::arg("theta2"), py::arg("phi2"));

    m.def("rotating_hamiltonian",
          [](const SpinSystemParams& p, const PulseSpec& pulse) { return build_rotating_hamiltonian(p, pulse).dense(); },
          "Dense 4x4 rotating-frame Hamiltonian.");
    m.def("evolve_rk4",
          [](const QuantumState& s, const SpinSystemParams& p, const PulseSpec& pulse, std::optional<double> step) {
              const auto h = build_rotating_hamiltonian(p, pulse);
              return evolve_rk4(s, h, pulse.duration, step.value_or(default_quantum_step(h, pulse.duration)));
          },
          py::arg("state"), py::arg("params"), py::arg("pulse"), py::arg("step") = py::none());
    m.def("evolve_exact",
          [](const QuantumState& s, const SpinSystemParams& p, const PulseSpec& pulse) {
              return evolve_exact(s, build_rotating_hamiltonian(p, pulse), pulse.duration);
          },
          py::arg("state"), py::arg("params"), py::arg("pulse"));
    m.def("evolve_classical",
          [](const std::array<double, 3>& spin1, const std::array<double, 3>& spin2, const SpinSystemParams& p,
             const PulseSpec& pulse, std::optional<double> step) {
              const auto out = evolve_classical(classical_from(spin1, spin2), p, pulse, pulse.duration,
                                                step.value_or(default_classical_step(p, pulse)));
              return std::make_pair(std::array<double, 3>{out.spin1.x, out.spin1.y, out.spin1.z},
                                    std::array<double, 3>{out.spin2.x, out.spin2.y, out.spin2.z});
          },
          py::arg("spin1"), py::arg("spin2"), py::arg("params"), py::arg("pulse"), py::arg("step") = py::none());

    m.def("pi_pulse",
          [](const SpinSystemParams& p, const std::string& target, double rabi1, double rabi2) {
              return pi_pulse(p, transition_from(target), rabi1, rabi2);
          },
          py::arg("params"), py::arg("target"), py::arg("rabi1"), py::arg("rabi2"));

    m.def("simulate_quantum",
          [](const QuantumState& s, const SpinSystemParams& p, const PulseSpec& pulse, double sample_every,
             std::optional<double> step) {
              const auto h = build_rotating_hamiltonian(p, pulse);
              return trajectory_dict(simulate_quantum(s, p, pulse, step.value_or(default_quantum_step(h, pulse.duration)),
                                                      sample_every));
          },
          py::arg("state"), py::arg("params"), py::arg("pulse"), py::arg("sample_every"), py::arg("step") = py::none());
    m.def("simulate_classical",
          [](const std::array<double, 3>& spin1, const std::array<double, 3>& spin2, const SpinSystemParams& p,
             const PulseSpec& pulse, double sample_every, std::optional<double> step) {
              return trajectory_dict(simulate_classical(classical_from(spin1, spin2), p, pulse,
                                                        step.value_or(default_classical_step(p, pulse)), sample_every));
          },
          py::arg("spin1"), py::arg("spin2"), py::arg("params"), py::arg("pulse"), py::arg("sample_every"),
          py::arg("step") = py::none());

    m.def("compare",
          [](const std::string& config_text) {
              const auto run = compare_engines(parse_config(config_text));
              py::dict d;
              d["quantum"] = trajectory_dict(run.quantum);
              d["classical"] = trajectory_dict(run.classical);
              d["report"] = report_dict(run.report);
              return d;
          },
          py::arg("config_text"), "Run both engines on an experiment given as config text.");
    m.def("sweep",
          [](const std::string& config_text, double omega_min, double omega_max, std::size_t points) {
              std::vector<std::array<double, 3>> rows;
              for (const auto& r : sweep_frequency(parse_config(config_text), omega_min, omega_max, points))
                  rows.push_back({r.carrier, r.quantum_response, r.classical_response});
              return rows;
          },
          py::arg("config_text"), py::arg("omega_min"), py::arg("omega_max"), py::arg("points"),
          "Rows of (carrier, quantum_response, classical_response).");
}

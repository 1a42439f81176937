"""Quantum and quasiclassical dynamics of a driven two-spin Ising molecule."""

from ._core import (
    ConfigError,
    Error,
    InvalidArgument,
    IoError,
    NumericalError,
    PulseSpec,
    QuantumState,
    SpinSystemParams,
    compare,
    concurrence,
    energy_levels,
    evolve_classical,
    evolve_exact,
    evolve_rk4,
    observables,
    pi_pulse,
    product_state,
    rotating_hamiltonian,
    simulate_classical,
    simulate_quantum,
    sweep,
    transition_frequencies,
)

__all__ = [
    "ConfigError",
    "Error",
    "InvalidArgument",
    "IoError",
    "NumericalError",
    "PulseSpec",
    "QuantumState",
    "SpinSystemParams",
    "compare",
    "concurrence",
    "energy_levels",
    "evolve_classical",
    "evolve_exact",
    "evolve_rk4",
    "observables",
    "pi_pulse",
    "product_state",
    "rotating_hamiltonian",
    "simulate_classical",
    "simulate_quantum",
    "sweep",
    "transition_frequencies",
]

"""Thermal entanglement of the two-qubit Heisenberg XYZ chain."""

from ._core import (
    BellProbabilities,
    BellState,
    Branch,
    ConcurrenceResult,
    Couplings,
    CriticalTemperature,
    SpectralDecomp,
    SqrtEigenvalues,
    TcStatus,
    ThermalParams,
    XyzChainError,
    bell_probabilities,
    concurrence,
    concurrence_xxx,
    concurrence_xxz,
    concurrence_xy_anisotropic,
    concurrence_xy_isotropic,
    concurrence_zero_t,
    critical_temperature,
    derive_params,
    hamiltonian_matrix,
    monotonicity_scan,
    oracle,
    run_cli,
    spectral,
    sqrt_eigenvalues,
    sweep,
    temperature_derivative,
    thermal_state,
    verify,
    zero_manifold_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]

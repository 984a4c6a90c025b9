"""Classical simulation of spectral-filter cooling with one-ancilla interferometry.

The package builds the whole pipeline at desk scale (dense linear algebra,
n <= 14 qubits): weighted Pauli operators, the filter-function family and
its Fourier-dual samplers, an exact-diagonalization engine used both to
drive single-shot interference tests and as the brute-force oracle,
Monte-Carlo estimators for normalization factors / eigenenergy scans /
observables, and closed-form resource budgets.
"""

from .pauli import PauliString, PauliSum, PauliFormatError, parse_pauli_sum, format_pauli_sum
from .cooling import CoolingFunction, NonRealizableError, KINDS, REALIZABLE_KINDS
from .engine import StateVector, EigenSystem, eigendecompose, evolve, matrix_element, exact_D, exact_N, cooled_state
from .shots import ShotRecord, estimator_r, hadamard_shot, d_shot, n_shot, shot_rng, write_shot_log
from .estimators import (
    EstimateResult,
    SpectrumCurve,
    Peak,
    DegenerateRatioError,
    estimate_D,
    estimate_N,
    estimate_observable,
    scan_energy,
    find_peaks,
)
from .budget import Budget, ErrorComponents, budget_for_observable, budget_for_energy, kappa_tolerance, error_from_resources
from .models import heisenberg, basis_state, random_pauli_hamiltonian

__version__ = "0.1.0"

__all__ = [
    "PauliString", "PauliSum", "PauliFormatError", "parse_pauli_sum", "format_pauli_sum",
    "CoolingFunction", "NonRealizableError", "KINDS", "REALIZABLE_KINDS",
    "StateVector", "EigenSystem", "eigendecompose", "evolve", "matrix_element",
    "exact_D", "exact_N", "cooled_state",
    "ShotRecord", "estimator_r", "hadamard_shot", "d_shot", "n_shot", "shot_rng", "write_shot_log",
    "EstimateResult", "SpectrumCurve", "Peak", "DegenerateRatioError",
    "estimate_D", "estimate_N", "estimate_observable", "scan_energy", "find_peaks",
    "Budget", "ErrorComponents", "budget_for_observable", "budget_for_energy",
    "kappa_tolerance", "error_from_resources",
    "heisenberg", "basis_state", "random_pauli_hamiltonian",
    "__version__",
]

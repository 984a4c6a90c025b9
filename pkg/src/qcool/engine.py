"""Dense exact diagonalization, eigenbasis time evolution, and brute-force
evaluation of the filtered-state quantities.

The engine is the single source of truth for everything the sampler and
the estimators are checked against: the filtered normalization factor
D(E) = <psi0| g(tau (H - E))^2 |psi0>, its observable counterpart
N(O; E) = <psi0| g O g |psi0>, and the normalized filtered state itself.

Energies are shifted once at decomposition time so the spectrum is
nonnegative; all phase factors downstream live in that shifted frame and
user-facing output converts back by subtracting the shift.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cooling import CoolingFunction
from .pauli import PauliString, PauliSum, sum_to_matrix, to_matrix

HERMITICITY_TOL = 1e-10
NORM_FLOOR = 1e-14


class EngineError(RuntimeError):
    """Internal inconsistency (non-Hermitian input, invalid overlap, ...)."""


class StateVector:
    """Normalized pure state on n qubits."""

    def __init__(self, amplitudes, n: int | None = None):
        amp = np.asarray(amplitudes, dtype=complex).reshape(-1)
        if n is None:
            n = int(round(np.log2(len(amp))))
        if len(amp) != 2 ** n:
            raise ValueError(f"amplitude length {len(amp)} is not 2^{n}")
        norm = np.linalg.norm(amp)
        if norm < NORM_FLOOR:
            raise ValueError("cannot normalize a (near-)zero state vector")
        self.n = n
        self.amplitudes = amp / norm

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass
class EigenSystem:
    """Spectrum of a Hermitian Pauli sum plus overlaps with a fixed state.

    ``energies`` are ascending and shifted to be nonnegative by ``shift``
    (original frame = energies - shift).  ``amplitudes`` are the complex
    overlaps <u_i|psi0> of the attached initial state; ``overlaps`` their
    squared magnitudes.
    """

    n: int
    energies: np.ndarray
    vectors: np.ndarray
    shift: float
    psi0: StateVector
    amplitudes: np.ndarray
    overlaps: np.ndarray

    def __post_init__(self):
        self._pauli_cache: dict[PauliString, np.ndarray] = {}

    @property
    def dim(self) -> int:
        return 2 ** self.n

    def energies_original(self) -> np.ndarray:
        return self.energies - self.shift

    def pauli_in_eigenbasis(self, ps: PauliString) -> np.ndarray:
        """V^dag P V, cached per Pauli string."""
        cached = self._pauli_cache.get(ps)
        if cached is None:
            cached = self.vectors.conj().T @ to_matrix(ps) @ self.vectors
            self._pauli_cache[ps] = cached
        return cached

    def evolution_overlap(self, t):
        """<psi0| e^{i H t} |psi0> = sum_i p_i e^{i E_i t}, vectorized in t."""
        t = np.asarray(t, dtype=float)
        out = np.exp(1j * np.multiply.outer(t, self.energies)) @ self.overlaps
        return out if out.ndim else complex(out)


def eigendecompose(hamiltonian: PauliSum, psi0: StateVector) -> EigenSystem:
    """Hermitian eigendecomposition with overlap bookkeeping.

    The shift max(0, -E_min) makes the stored spectrum nonnegative.
    """
    if hamiltonian.n != psi0.n:
        raise ValueError(f"Hamiltonian on {hamiltonian.n} qubits, state on {psi0.n}")
    matrix = sum_to_matrix(hamiltonian)
    asym = np.max(np.abs(matrix - matrix.conj().T)) if matrix.size else 0.0
    if asym > HERMITICITY_TOL:
        raise EngineError(f"input matrix is not Hermitian (asymmetry {asym:.3e})")
    energies, vectors = np.linalg.eigh(matrix)
    shift = max(0.0, -float(energies[0]))
    amplitudes = vectors.conj().T @ psi0.amplitudes
    overlaps = np.abs(amplitudes) ** 2
    return EigenSystem(
        n=hamiltonian.n,
        energies=energies + shift,
        vectors=vectors,
        shift=shift,
        psi0=psi0,
        amplitudes=amplitudes,
        overlaps=overlaps,
    )


def evolve(es: EigenSystem, psi: StateVector, t: float) -> StateVector:
    """e^{i H t} |psi> in the shifted frame (global phase e^{i shift t})."""
    if psi.n != es.n:
        raise ValueError("state dimension does not match the eigensystem")
    coeffs = es.vectors.conj().T @ psi.amplitudes
    coeffs = coeffs * np.exp(1j * es.energies * t)
    return StateVector(es.vectors @ coeffs, n=es.n)


def matrix_element(
    es: EigenSystem,
    x_prime: float,
    pauli: PauliString | None,
    x: float,
    tau: float,
    psi: StateVector | None = None,
) -> complex:
    """<psi| e^{-i x' tau H} P e^{i x tau H} |psi>.

    With ``pauli=None`` the insertion is the identity and the value reduces
    to the evolution overlap at y = x - x'.  Defaults to the attached
    initial state.  Magnitude never exceeds 1.
    """
    if psi is None:
        coeffs = es.amplitudes
    else:
        if psi.n != es.n:
            raise ValueError("state dimension does not match the eigensystem")
        coeffs = es.vectors.conj().T @ psi.amplitudes
    if pauli is None:
        phases = np.exp(1j * (x - x_prime) * tau * es.energies)
        return complex(np.sum(np.abs(coeffs) ** 2 * phases))
    if pauli.n != es.n:
        raise ValueError("Pauli string dimension does not match the eigensystem")
    bra = coeffs * np.exp(1j * x_prime * tau * es.energies)
    ket = coeffs * np.exp(1j * x * tau * es.energies)
    return complex(bra.conj() @ es.pauli_in_eigenbasis(pauli) @ ket)


def exact_D(es: EigenSystem, cf: CoolingFunction, tau: float, energy: float) -> float:
    """Filtered normalization factor sum_i p_i g(tau (E_i - E))^2."""
    g = np.asarray(cf.g_value(tau * (es.energies - energy)))
    return float(np.sum(es.overlaps * g ** 2))


def exact_D_curve(es: EigenSystem, cf: CoolingFunction, tau: float, energies) -> np.ndarray:
    """Vectorized :func:`exact_D` over a grid of trial energies."""
    grid = np.asarray(energies, dtype=float)
    g = np.asarray(cf.g_value(tau * (es.energies[None, :] - grid[:, None])))
    return (g ** 2) @ es.overlaps


def exact_N(es: EigenSystem, cf: CoolingFunction, tau: float, energy: float, observable: PauliSum) -> float:
    """<psi0| g (sum_l o_l P_l) g |psi0> evaluated in the eigenbasis.

    Real by Hermiticity; the imaginary residue is checked below 1e-10.
    """
    if observable.n != es.n:
        raise ValueError("observable dimension does not match the eigensystem")
    g = np.asarray(cf.g_value(tau * (es.energies - energy)))
    filtered = g * es.amplitudes
    value = 0.0 + 0.0j
    for coeff, ps in observable.terms:
        value += coeff * (filtered.conj() @ es.pauli_in_eigenbasis(ps) @ filtered)
    if abs(value.imag) > 1e-10:
        raise EngineError(f"expectation has imaginary residue {value.imag:.3e}")
    return float(value.real)


@dataclass
class CooledState:
    state: StateVector
    infidelity: np.ndarray  # infidelity[j] = 1 - |<u_j|state>|^2


def cooled_state(es: EigenSystem, cf: CoolingFunction, tau: float, energy: float) -> CooledState:
    """Normalized filtered state g(tau (H - E)) |psi0> / ||.||.

    Raises when the filter annihilates every overlapped eigenstate.
    """
    g = np.asarray(cf.g_value(tau * (es.energies - energy)))
    coeffs = g * es.amplitudes
    norm = np.linalg.norm(coeffs)
    if norm <= NORM_FLOOR:
        raise EngineError("filtered state has vanishing norm; target unreachable")
    coeffs = coeffs / norm
    state = StateVector(es.vectors @ coeffs, n=es.n)
    infidelity = 1.0 - np.abs(coeffs) ** 2
    return CooledState(state=state, infidelity=infidelity)

"""Signed n-qubit Pauli strings and positively weighted Pauli sums.

Conventions used throughout the package:

* a ``PauliString`` carries an explicit sign (+1 or -1); coefficients of a
  ``PauliSum`` are therefore strictly positive, and the sum of coefficients
  is the one-norm used for importance sampling of terms,
* qubit 0 is the leftmost letter and the most significant bit of a basis
  index (``to_matrix`` places qubit 0 as the leftmost Kronecker factor).

Text format, one term per line: ``<coefficient> <letters>`` where a leading
``-`` on the coefficient means sign -1, e.g. ``-0.5 XZI``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DENSE_QUBITS = 14

_LETTERS = "IXYZ"
_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class PauliFormatError(ValueError):
    """Malformed Pauli-sum text; message carries the 1-based line number."""


@dataclass(frozen=True)
class PauliString:
    """One signed Pauli word, e.g. -XZI on three qubits."""

    n: int
    letters: str
    sign: int = 1

    def __post_init__(self):
        if not 1 <= self.n <= MAX_DENSE_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_DENSE_QUBITS}], got {self.n}")
        if len(self.letters) != self.n:
            raise ValueError(f"expected {self.n} letters, got {len(self.letters)!r}")
        bad = set(self.letters) - set(_LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letters {sorted(bad)}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def is_identity(self) -> bool:
        return set(self.letters) == {"I"}

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "") + self.letters


def to_matrix(ps: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n realization; Hermitian, involutory."""
    m = np.array([[1.0 + 0.0j]])
    for letter in ps.letters:
        m = np.kron(m, _SINGLE[letter])
    return ps.sign * m


class PauliSum:
    """Positively weighted sum of signed Pauli strings.

    Doubles as a Hamiltonian and as an observable; ``one_norm`` is the sum
    of coefficients and ``probabilities`` the induced sampling distribution.
    """

    def __init__(self, n: int, terms):
        if not 1 <= n <= MAX_DENSE_QUBITS:
            raise ValueError(f"qubit count must be in [1, {MAX_DENSE_QUBITS}], got {n}")
        self.n = n
        checked = []
        for coeff, ps in terms:
            coeff = float(coeff)
            if not coeff > 0.0:
                raise ValueError(f"coefficients must be strictly positive, got {coeff}")
            if not np.isfinite(coeff):
                raise ValueError("coefficients must be finite")
            if ps.n != n:
                raise ValueError(f"term acts on {ps.n} qubits, sum is on {n}")
            checked.append((coeff, ps))
        self.terms = tuple(checked)
        weights = np.array([c for c, _ in self.terms], dtype=float)
        self.one_norm = float(weights.sum())
        self._cum_weights = np.cumsum(weights)

    @property
    def is_empty(self) -> bool:
        return len(self.terms) == 0

    def probabilities(self) -> np.ndarray:
        if self.one_norm <= 0.0:
            raise ValueError("empty sum has no sampling distribution")
        return np.array([c for c, _ in self.terms]) / self.one_norm

    def to_matrix(self) -> np.ndarray:
        return sum_to_matrix(self)

    def __len__(self) -> int:
        return len(self.terms)

    def __str__(self) -> str:
        return format_pauli_sum(self)


def sum_to_matrix(s: PauliSum) -> np.ndarray:
    """Dense realization sum_l o_l P_l; the zero matrix for an empty sum
    (callers can detect that case through ``s.is_empty``)."""
    dim = 2 ** s.n
    m = np.zeros((dim, dim), dtype=complex)
    for coeff, ps in s.terms:
        m += coeff * to_matrix(ps)
    return m


def sample_pauli(s: PauliSum, rng: np.random.Generator) -> int:
    """Draw a term index with probability o_l / one_norm.

    Cumulative weights with binary search: O(log m) per draw and fully
    determined by one uniform variate from ``rng``.
    """
    return sample_pauli_from_uniform(s, rng.random())


def sample_pauli_from_uniform(s: PauliSum, u) -> int:
    """Map uniform variate(s) in [0, 1) to term indices (vectorizable)."""
    if s.one_norm <= 0.0:
        raise ValueError("cannot sample from a sum with zero one-norm")
    idx = np.searchsorted(s._cum_weights, np.asarray(u) * s.one_norm, side="right")
    return np.minimum(idx, len(s.terms) - 1) if np.ndim(u) else min(int(idx), len(s.terms) - 1)


def parse_pauli_sum(text: str, n: int | None = None) -> PauliSum:
    """Parse the one-term-per-line text format.

    Blank lines and lines starting with ``#`` are ignored.  Malformed lines
    raise :class:`PauliFormatError` carrying the line number.
    """
    terms = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) != 2:
            raise PauliFormatError(f"line {lineno}: expected '<coefficient> <letters>', got {raw!r}")
        coeff_text, letters = fields
        try:
            value = float(coeff_text)
        except ValueError as exc:
            raise PauliFormatError(f"line {lineno}: bad coefficient {coeff_text!r}") from exc
        if value == 0.0 or not np.isfinite(value):
            raise PauliFormatError(f"line {lineno}: coefficient must be finite and nonzero")
        sign = -1 if value < 0 else 1
        if n is None:
            n = len(letters)
        try:
            ps = PauliString(n=n, letters=letters, sign=sign)
        except ValueError as exc:
            raise PauliFormatError(f"line {lineno}: {exc}") from exc
        terms.append((abs(value), ps))
    if n is None:
        raise PauliFormatError("no terms found")
    return PauliSum(n=n, terms=terms)


def format_pauli_sum(s: PauliSum) -> str:
    lines = []
    for coeff, ps in s.terms:
        signed = coeff * ps.sign
        lines.append(f"{signed:.17g} {ps.letters}")
    return "\n".join(lines)

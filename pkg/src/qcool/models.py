"""Benchmark Hamiltonians and initial states.

Bit convention (fixed and enforced by tests): the leftmost character of a
bitstring is qubit 0 and maps to the most significant bit of the basis
index; '1' denotes the -1 eigenstate of Z on that qubit.
"""

from __future__ import annotations

import itertools

import numpy as np

from .engine import StateVector
from .pauli import PauliString, PauliSum, parse_pauli_sum


def heisenberg(n: int, J: float = 1.0, zz_anisotropy: float = 2.0, h: float = 1.0,
               periodic: bool = True) -> PauliSum:
    """Anisotropic spin chain: J sum_i (X_i X_{i+1} + Y_i Y_{i+1}
    + zz_anisotropy Z_i Z_{i+1}) + h sum_i Z_i.

    Negative couplings put their sign into the Pauli string; exact zeros
    drop the term.
    """
    if n < 2:
        raise ValueError(f"chain needs at least 2 sites, got {n}")
    for name, value in (("J", J), ("zz_anisotropy", zz_anisotropy), ("h", h)):
        if not np.isfinite(value):
            raise ValueError(f"{name} must be finite")
    bonds = [(i, i + 1) for i in range(n - 1)]
    if periodic:
        bonds.append((n - 1, 0))
    terms = []

    def add(weight: float, positions: dict[int, str]):
        if weight == 0.0:
            return
        letters = "".join(positions.get(q, "I") for q in range(n))
        sign = -1 if weight < 0 else 1
        terms.append((abs(weight), PauliString(n=n, letters=letters, sign=sign)))

    for i, j in bonds:
        add(J, {i: "X", j: "X"})
        add(J, {i: "Y", j: "Y"})
        add(J * zz_anisotropy, {i: "Z", j: "Z"})
    for i in range(n):
        add(h, {i: "Z"})
    return PauliSum(n=n, terms=terms)


def basis_state(bitstring: str) -> StateVector:
    """Computational basis vector for a bitstring (see module docstring
    for the bit convention)."""
    if not bitstring:
        raise ValueError("bitstring must be non-empty")
    bad = set(bitstring) - {"0", "1"}
    if bad:
        raise ValueError(f"bitstring may contain only 0/1, got {sorted(bad)}")
    n = len(bitstring)
    amplitudes = np.zeros(2 ** n, dtype=complex)
    amplitudes[int(bitstring, 2)] = 1.0
    return StateVector(amplitudes, n=n)


def random_pauli_hamiltonian(n: int, m: int, seed: int) -> PauliSum:
    """m distinct non-identity Pauli strings with coefficients uniform in
    (0, 1] and random signs; deterministic in the seed."""
    if m < 1:
        raise ValueError("need at least one term")
    if m > 4 ** n - 1:
        raise ValueError(f"at most {4 ** n - 1} distinct non-identity strings on {n} qubits")
    rng = np.random.default_rng(seed)
    chosen: set[str] = set()
    terms = []
    while len(terms) < m:
        letters = "".join(rng.choice(list("IXYZ"), size=n))
        if letters in chosen or set(letters) == {"I"}:
            continue
        chosen.add(letters)
        coeff = 1.0 - rng.random()  # uniform in (0, 1]
        sign = 1 if rng.random() < 0.5 else -1
        terms.append((coeff, PauliString(n=n, letters=letters, sign=sign)))
    return PauliSum(n=n, terms=terms)


def load_pauli_file(path) -> PauliSum:
    """Hamiltonian/observable from the one-term-per-line text format."""
    with open(path) as fh:
        return parse_pauli_sum(fh.read())


def all_pauli_strings(n: int):
    """Iterate every n-qubit letter combination (test helper)."""
    for letters in itertools.product("IXYZ", repeat=n):
        yield "".join(letters)

"""Single-shot interference sampling and the unbiased per-round estimators.

A "D shot" samples a normalized time difference y and measures the overlap
<psi0| e^{i y tau H} |psi0> through a one-ancilla interference test; an
"N shot" samples two times plus a Pauli term of the observable and measures
the sandwiched overlap.  Each record keeps the raw complex estimator
r = 2 i^b (-1)^a together with its sampled times, so any trial energy can
be applied afterwards as pure post-processing.

Randomness contract: within an estimator run, shot k consumes a fixed-width
block of uniforms deterministically derived from (seed, purpose, k), so
batches are bit-reproducible and order-independent (the triangle kind,
whose sampler rejects, uses an unbounded per-shot stream keyed the same
way).  Draw order per shot: x, x' (y = x - x'), [term index,] basis bit,
outcome bit; uniforms are consumed even for truncated shots to keep the
blocks aligned across modes.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox, SeedSequence, default_rng

from .cooling import CoolingFunction
from .engine import EigenSystem, EngineError, matrix_element
from .pauli import PauliSum, sample_pauli_from_uniform

PURPOSE_D = 0
PURPOSE_N = 1

_D_BLOCK = 4   # uniforms per D shot: x, x', b, a
_N_BLOCK = 8   # uniforms per N shot: x, x', l, b, a + 3 for counter alignment
_PHILOX_WORDS = 4  # uniform doubles per Philox counter increment

_CLIP = 1e-16


@dataclass(frozen=True)
class ShotRecord:
    """One sampling round; ``raw_r`` is 0 exactly when the shot was truncated."""

    kind: str                      # "d" or "n"
    time_y: float | None           # D shots
    time_x: float | None           # N shots
    time_x_prime: float | None
    pauli_index: int | None
    basis_bit: int
    outcome_bit: int
    truncated: bool
    raw_r: complex


def estimator_r(b: int, a: int) -> complex:
    """Unbiased single-round estimator 2 i^b (-1)^a of <psi|U|psi>."""
    return 2.0 * (1j ** b) * ((-1.0) ** a)


def shot_rng(seed: int, k: int, purpose: int = PURPOSE_D) -> Generator:
    """Unbounded per-shot stream keyed by (seed, purpose, shot index)."""
    return default_rng(SeedSequence(entropy=int(seed), spawn_key=(int(purpose), int(k))))


def derive_seed(seed: int, *key: int) -> int:
    """Stable sub-seed for independent batches (repetitions, sweep points)."""
    ss = SeedSequence(entropy=(int(seed),) + tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


def _master_bits(seed: int, purpose: int) -> np.ndarray:
    return SeedSequence(entropy=int(seed), spawn_key=(int(purpose),)).generate_state(2, np.uint64)


def _uniform_blocks(seed: int, purpose: int, n_shots: int, width: int) -> np.ndarray:
    """(n_shots, width) uniforms; row k is counter block k of a keyed Philox
    stream, so any row range can be regenerated independently."""
    gen = Generator(Philox(key=_master_bits(seed, purpose)))
    return gen.random((n_shots, width))


def hadamard_shot(es: EigenSystem, u_spec, b: int, rng: Generator) -> int:
    """Simulate one interference-test outcome bit.

    ``u_spec`` is ``("evolution", t)`` for U = e^{i t H} or
    ``("sandwich", t_xp, pauli, t_x)`` for U = e^{-i t_xp H} P e^{i t_x H}.
    Returns a = 0 with probability (1 + Re v)/2 for b = 0 and
    (1 + Im v)/2 for b = 1, where v = <psi0|U|psi0>.
    """
    tag = u_spec[0]
    if tag == "evolution":
        v = es.evolution_overlap(u_spec[1])
    elif tag == "sandwich":
        _, t_xp, pauli, t_x = u_spec
        v = matrix_element(es, x_prime=t_xp, pauli=pauli, x=t_x, tau=1.0)
    else:
        raise ValueError(f"unknown unitary spec {tag!r}")
    if abs(v) > 1.0 + 1e-9:
        raise EngineError(f"overlap magnitude {abs(v):.12f} exceeds 1")
    part = v.real if b == 0 else v.imag
    p_zero = 0.5 * (1.0 + part)
    return 0 if rng.random() < p_zero else 1


def d_shot(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
           energy: float, rng: Generator) -> ShotRecord:
    """One normalization-factor shot; ``energy`` is applied only in
    post-processing (the record stays usable for any trial energy)."""
    del energy  # kept in the signature for symmetry with the estimators
    y = cf.sample_y(rng)
    u_b = rng.random()
    b = int(u_b >= 0.5)
    if abs(y) > x_m:
        rng.random()  # keep the per-shot draw count fixed
        return ShotRecord(kind="d", time_y=float(y), time_x=None, time_x_prime=None,
                          pauli_index=None, basis_bit=b, outcome_bit=0,
                          truncated=True, raw_r=0.0j)
    a = hadamard_shot(es, ("evolution", y * tau), b, rng)
    return ShotRecord(kind="d", time_y=float(y), time_x=None, time_x_prime=None,
                      pauli_index=None, basis_bit=b, outcome_bit=a,
                      truncated=False, raw_r=estimator_r(b, a))


def n_shot(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
           energy: float, observable: PauliSum, rng: Generator) -> ShotRecord:
    """One unnormalized-observable shot with importance-sampled Pauli term."""
    del energy
    if observable.is_empty or observable.one_norm <= 0.0:
        raise ValueError("observable must have positive one-norm")
    x = cf.sample_x(rng)
    x_prime = cf.sample_x(rng)
    u_l = rng.random()
    u_b = rng.random()
    b = int(u_b >= 0.5)
    if abs(x) > x_m or abs(x_prime) > x_m:
        rng.random()
        return ShotRecord(kind="n", time_y=None, time_x=float(x), time_x_prime=float(x_prime),
                          pauli_index=None, basis_bit=b, outcome_bit=0,
                          truncated=True, raw_r=0.0j)
    l = sample_pauli_from_uniform(observable, u_l)
    pauli = observable.terms[l][1]
    a = hadamard_shot(es, ("sandwich", x_prime * tau, pauli, x * tau), b, rng)
    return ShotRecord(kind="n", time_y=None, time_x=float(x), time_x_prime=float(x_prime),
                      pauli_index=int(l), basis_bit=b, outcome_bit=a,
                      truncated=False, raw_r=estimator_r(b, a))


# -- batched sampling (vectorized; the estimators' fast path) -------------

@dataclass
class DShotBatch:
    """Struct-of-arrays view of N_M D shots; ``raw`` is the energy-free
    per-shot value (2 i^b (-1)^a in shot mode, the exact overlap in
    expectation mode) and is 0 where truncated."""

    y: np.ndarray
    basis_bit: np.ndarray
    outcome_bit: np.ndarray
    truncated: np.ndarray
    raw: np.ndarray
    mode: str

    @property
    def n_shots(self) -> int:
        return len(self.y)

    @property
    def truncated_count(self) -> int:
        return int(self.truncated.sum())

    def to_records(self) -> list[ShotRecord]:
        return [
            ShotRecord(kind="d", time_y=float(self.y[k]), time_x=None, time_x_prime=None,
                       pauli_index=None, basis_bit=int(self.basis_bit[k]),
                       outcome_bit=int(self.outcome_bit[k]),
                       truncated=bool(self.truncated[k]), raw_r=complex(self.raw[k]))
            for k in range(self.n_shots)
        ]


@dataclass
class NShotBatch:
    x: np.ndarray
    x_prime: np.ndarray
    pauli_index: np.ndarray      # -1 where truncated
    basis_bit: np.ndarray
    outcome_bit: np.ndarray
    truncated: np.ndarray
    raw: np.ndarray
    one_norm: float
    mode: str

    @property
    def n_shots(self) -> int:
        return len(self.x)

    @property
    def truncated_count(self) -> int:
        return int(self.truncated.sum())

    def to_records(self) -> list[ShotRecord]:
        return [
            ShotRecord(kind="n", time_y=None, time_x=float(self.x[k]),
                       time_x_prime=float(self.x_prime[k]),
                       pauli_index=None if self.pauli_index[k] < 0 else int(self.pauli_index[k]),
                       basis_bit=int(self.basis_bit[k]), outcome_bit=int(self.outcome_bit[k]),
                       truncated=bool(self.truncated[k]), raw_r=complex(self.raw[k]))
            for k in range(self.n_shots)
        ]


def _times_from_uniforms(cf: CoolingFunction, u: np.ndarray) -> np.ndarray:
    return cf.x_from_uniform(np.clip(u, _CLIP, 1.0 - _CLIP))


def _bits_from_uniforms(u_b: np.ndarray, u_a: np.ndarray, v: np.ndarray):
    """Vectorized interference outcomes for per-shot overlaps v."""
    if np.any(np.abs(v) > 1.0 + 1e-9):
        raise EngineError("overlap magnitude exceeds 1")
    b = (u_b >= 0.5).astype(np.int8)
    part = np.where(b == 0, v.real, v.imag)
    a = (u_a >= 0.5 * (1.0 + part)).astype(np.int8)
    return b, a


def _raw_from_bits(b: np.ndarray, a: np.ndarray) -> np.ndarray:
    return 2.0 * (1j ** b.astype(complex)) * np.where(a == 0, 1.0, -1.0)


def sample_d_batch(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
                   n_shots: int, seed: int, mode: str = "shot") -> DShotBatch:
    if mode not in ("shot", "expectation"):
        raise ValueError(f"mode must be 'shot' or 'expectation', got {mode!r}")
    if cf.kind == "triangle":
        return _sample_d_batch_loop(es, cf, tau, x_m, n_shots, seed, mode)
    u = _uniform_blocks(seed, PURPOSE_D, n_shots, _D_BLOCK)
    y = _times_from_uniforms(cf, u[:, 0]) - _times_from_uniforms(cf, u[:, 1])
    truncated = np.abs(y) > x_m
    keep = ~truncated
    v = np.zeros(n_shots, dtype=complex)
    v[keep] = es.evolution_overlap(y[keep] * tau)
    b, a = _bits_from_uniforms(u[:, 2], u[:, 3], v)
    a[truncated] = 0
    if mode == "shot":
        raw = np.where(keep, _raw_from_bits(b, a), 0.0)
    else:
        raw = np.where(keep, v, 0.0)
    return DShotBatch(y=y, basis_bit=b, outcome_bit=a, truncated=truncated, raw=raw, mode=mode)


def _sample_d_batch_loop(es, cf, tau, x_m, n_shots, seed, mode):
    y = np.empty(n_shots)
    b = np.zeros(n_shots, dtype=np.int8)
    a = np.zeros(n_shots, dtype=np.int8)
    truncated = np.zeros(n_shots, dtype=bool)
    raw = np.zeros(n_shots, dtype=complex)
    for k in range(n_shots):
        rng = shot_rng(seed, k, PURPOSE_D)
        rec = d_shot(es, cf, tau, x_m, 0.0, rng)
        y[k] = rec.time_y
        b[k] = rec.basis_bit
        a[k] = rec.outcome_bit
        truncated[k] = rec.truncated
        if not rec.truncated:
            raw[k] = es.evolution_overlap(y[k] * tau) if mode == "expectation" else rec.raw_r
    return DShotBatch(y=y, basis_bit=b, outcome_bit=a, truncated=truncated, raw=raw, mode=mode)


def sample_n_batch(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
                   observable: PauliSum, n_shots: int, seed: int, mode: str = "shot") -> NShotBatch:
    if mode not in ("shot", "expectation"):
        raise ValueError(f"mode must be 'shot' or 'expectation', got {mode!r}")
    if observable.is_empty or observable.one_norm <= 0.0:
        raise ValueError("observable must have positive one-norm")
    if observable.n != es.n:
        raise ValueError("observable dimension does not match the eigensystem")
    if cf.kind == "triangle":
        return _sample_n_batch_loop(es, cf, tau, x_m, observable, n_shots, seed, mode)
    u = _uniform_blocks(seed, PURPOSE_N, n_shots, _N_BLOCK)
    x = _times_from_uniforms(cf, u[:, 0])
    x_prime = _times_from_uniforms(cf, u[:, 1])
    truncated = (np.abs(x) > x_m) | (np.abs(x_prime) > x_m)
    keep = ~truncated
    l = np.full(n_shots, -1, dtype=np.int64)
    l[keep] = sample_pauli_from_uniform(observable, u[keep, 2])
    v = _sandwich_overlaps(es, observable, tau, x, x_prime, l, keep)
    b, a = _bits_from_uniforms(u[:, 3], u[:, 4], v)
    a[truncated] = 0
    if mode == "shot":
        raw = np.where(keep, _raw_from_bits(b, a), 0.0)
    else:
        raw = np.where(keep, v, 0.0)
    return NShotBatch(x=x, x_prime=x_prime, pauli_index=l, basis_bit=b, outcome_bit=a,
                      truncated=truncated, raw=raw, one_norm=observable.one_norm, mode=mode)


def _sandwich_overlaps(es, observable, tau, x, x_prime, l, keep):
    """<psi0| e^{-i x' tau H} P_l e^{i x tau H} |psi0> for each kept shot,
    grouped by sampled term (chunked to bound memory)."""
    v = np.zeros(len(x), dtype=complex)
    energies = es.energies
    c = es.amplitudes
    for term_index in np.unique(l[keep]):
        idx = np.where(l == term_index)[0]
        pauli = observable.terms[int(term_index)][1]
        m = c.conj()[:, None] * es.pauli_in_eigenbasis(pauli) * c[None, :]
        for start in range(0, len(idx), 8192):
            sl = idx[start:start + 8192]
            phi_x = np.exp(1j * tau * np.outer(x[sl], energies))
            phi_xp = np.exp(1j * tau * np.outer(x_prime[sl], energies))
            v[sl] = np.einsum("qi,qi->q", phi_xp.conj() @ m, phi_x)
    return v


def _sample_n_batch_loop(es, cf, tau, x_m, observable, n_shots, seed, mode):
    x = np.empty(n_shots)
    x_prime = np.empty(n_shots)
    l = np.full(n_shots, -1, dtype=np.int64)
    b = np.zeros(n_shots, dtype=np.int8)
    a = np.zeros(n_shots, dtype=np.int8)
    truncated = np.zeros(n_shots, dtype=bool)
    raw = np.zeros(n_shots, dtype=complex)
    for k in range(n_shots):
        rng = shot_rng(seed, k, PURPOSE_N)
        rec = n_shot(es, cf, tau, x_m, 0.0, observable, rng)
        x[k] = rec.time_x
        x_prime[k] = rec.time_x_prime
        b[k] = rec.basis_bit
        a[k] = rec.outcome_bit
        truncated[k] = rec.truncated
        if not rec.truncated:
            l[k] = rec.pauli_index
            if mode == "expectation":
                pauli = observable.terms[rec.pauli_index][1]
                raw[k] = matrix_element(es, x_prime=x_prime[k] * tau, pauli=pauli,
                                        x=x[k] * tau, tau=1.0)
            else:
                raw[k] = rec.raw_r
    return NShotBatch(x=x, x_prime=x_prime, pauli_index=l, basis_bit=b, outcome_bit=a,
                      truncated=truncated, raw=raw, one_norm=observable.one_norm, mode=mode)


def write_shot_log(records, path):
    """CSV dump: shot_index, kind, y_or_x, x_prime, pauli_index, b, a, truncated."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["shot_index", "kind", "y_or_x", "x_prime", "pauli_index", "b", "a", "truncated"])
        for k, rec in enumerate(records):
            y_or_x = rec.time_y if rec.kind == "d" else rec.time_x
            writer.writerow([
                k, rec.kind,
                "" if y_or_x is None else f"{y_or_x:.12g}",
                "" if rec.time_x_prime is None else f"{rec.time_x_prime:.12g}",
                "" if rec.pauli_index is None else rec.pauli_index,
                rec.basis_bit, rec.outcome_bit, int(rec.truncated),
            ])

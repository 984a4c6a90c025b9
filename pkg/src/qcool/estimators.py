"""Monte-Carlo estimators built on shot batches: normalization factor,
energy scan with shot reuse, unnormalized observable, and their ratio.

The central trick: a shot's raw value is independent of the trial energy,
which only enters through the phase e^{-i tau y E} applied in
post-processing.  One batch therefore serves every trial energy, and a
scan over a grid is exactly as expensive (in shots) as a single estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cooling import CoolingFunction
from .engine import EigenSystem
from .pauli import PauliSum
from .shots import DShotBatch, sample_d_batch, sample_n_batch

D_FLOOR_ABSOLUTE = 1e-6
_ENERGY_CHUNK = 64


class DegenerateRatioError(RuntimeError):
    """Normalization estimate statistically indistinguishable from zero."""

    def __init__(self, d_hat: float, floor: float):
        super().__init__(
            f"normalization estimate {d_hat:.3e} is below the floor {floor:.3e}; "
            "increase the shot budget or pick a state with more target overlap"
        )
        self.d_hat = d_hat
        self.floor = floor


@dataclass(frozen=True)
class EstimateConfig:
    kind: str
    tau: float
    x_m: float
    n_shots: int
    energy: float
    seed: int
    mode: str


@dataclass(frozen=True)
class EstimateResult:
    value: float
    shots_used: int
    truncated_count: int
    standard_error: float
    config: EstimateConfig


@dataclass
class SpectrumCurve:
    """Normalization-factor scan over trial energies (shifted frame).

    Carries the shot payload so the estimate can be re-evaluated at any
    energy by classical post-processing alone (used by peak refinement).
    """

    energies: np.ndarray
    d_values: np.ndarray
    mode: str
    tau: float
    x_m: float
    n_shots: int
    truncated_count: int
    seed: int
    kind: str
    _y: np.ndarray | None = field(default=None, repr=False)
    _raw: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        self.energies = np.asarray(self.energies, dtype=float)
        self.d_values = np.asarray(self.d_values, dtype=float)
        if self.energies.shape != self.d_values.shape:
            raise ValueError("energy grid and values must have matching length")
        if len(self.energies) == 0:
            raise ValueError("energy grid must be non-empty")
        if len(self.energies) > 1 and not np.all(np.diff(self.energies) > 0):
            raise ValueError("energy grid must be strictly increasing")

    @property
    def can_reevaluate(self) -> bool:
        return self._y is not None

    def d_at(self, energies):
        """Re-weighted estimate at arbitrary trial energies (shot reuse)."""
        if not self.can_reevaluate:
            raise ValueError("curve does not carry shot data for re-evaluation")
        return _reweigh(self._raw, self._y, self.tau, energies, self.n_shots)


def _reweigh(raw: np.ndarray, y: np.ndarray, tau: float, energies, n_shots: int):
    grid = np.atleast_1d(np.asarray(energies, dtype=float))
    out = np.empty(len(grid))
    # cap the phase matrix around 128 MB regardless of the shot count
    rows = max(1, min(_ENERGY_CHUNK, (1 << 23) // max(1, len(y))))
    for start in range(0, len(grid), rows):
        chunk = grid[start:start + rows]
        phases = np.exp(-1j * tau * np.outer(chunk, y))
        # row-wise pairwise sum: the value at an energy is bit-identical
        # whether it is computed alone or as part of a grid
        out[start:start + rows] = (phases * raw).sum(axis=1).real / n_shots
    return float(out[0]) if np.ndim(energies) == 0 else out


def estimate_D(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
               energy: float, n_shots: int, seed: int, mode: str = "shot") -> EstimateResult:
    """Mean of Re(d) over one batch; unbiased for the truncated
    normalization factor at the given trial energy."""
    if n_shots < 1:
        raise ValueError("n_shots must be at least 1")
    batch = sample_d_batch(es, cf, tau, x_m, n_shots, seed, mode)
    value = _reweigh(batch.raw, batch.y, tau, float(energy), n_shots)
    return EstimateResult(
        value=float(value),
        shots_used=n_shots,
        truncated_count=batch.truncated_count,
        standard_error=2.0 / math.sqrt(n_shots),
        config=EstimateConfig(cf.kind, tau, x_m, n_shots, float(energy), seed, mode),
    )


def estimate_N(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
               energy: float, observable: PauliSum, n_shots: int, seed: int,
               mode: str = "shot") -> EstimateResult:
    """Mean of Re(n) over one batch; unbiased for the truncated
    unnormalized expectation value."""
    if n_shots < 1:
        raise ValueError("n_shots must be at least 1")
    batch = sample_n_batch(es, cf, tau, x_m, observable, n_shots, seed, mode)
    scaled = observable.one_norm * batch.raw
    value = _reweigh(scaled, batch.x - batch.x_prime, tau, float(energy), n_shots)
    return EstimateResult(
        value=float(value),
        shots_used=n_shots,
        truncated_count=batch.truncated_count,
        standard_error=2.0 * observable.one_norm / math.sqrt(n_shots),
        config=EstimateConfig(cf.kind, tau, x_m, n_shots, float(energy), seed, mode),
    )


@dataclass(frozen=True)
class ObservableEstimate:
    value: float
    d: EstimateResult
    n: EstimateResult


def estimate_observable(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
                        energy: float, observable: PauliSum, n_shots: int, seed: int,
                        mode: str = "shot") -> ObservableEstimate:
    """Ratio estimate N/D of the observable on the filtered state.

    Refuses to divide when the normalization estimate is statistically
    indistinguishable from zero (floor = max(3 stderr, 1e-6)).
    """
    d = estimate_D(es, cf, tau, x_m, energy, n_shots, seed, mode)
    n = estimate_N(es, cf, tau, x_m, energy, observable, n_shots, seed, mode)
    floor = max(3.0 * d.standard_error, D_FLOOR_ABSOLUTE)
    if d.value < floor:
        raise DegenerateRatioError(d.value, floor)
    return ObservableEstimate(value=n.value / d.value, d=d, n=n)


def scan_energy(es: EigenSystem, cf: CoolingFunction, tau: float, x_m: float,
                grid, n_shots: int, seed: int, mode: str = "shot") -> SpectrumCurve:
    """One shot batch, re-weighted at every grid energy.

    In expectation mode the per-shot value is the exact overlap for the
    sampled time (no outcome-bit noise); time sampling is shared with shot
    mode bit-for-bit.
    """
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValueError("energy grid must be non-empty")
    batch = sample_d_batch(es, cf, tau, x_m, n_shots, seed, mode)
    values = _reweigh(batch.raw, batch.y, tau, grid, n_shots)
    return SpectrumCurve(
        energies=grid, d_values=values, mode=mode, tau=tau, x_m=x_m,
        n_shots=n_shots, truncated_count=batch.truncated_count, seed=seed,
        kind=cf.kind, _y=batch.y, _raw=batch.raw,
    )


def curve_from_batch(batch: DShotBatch, tau: float, x_m: float, grid, seed: int,
                     kind: str) -> SpectrumCurve:
    """Build a reusable curve from an existing batch (shared shot budget)."""
    grid = np.asarray(grid, dtype=float)
    values = _reweigh(batch.raw, batch.y, tau, grid, batch.n_shots)
    return SpectrumCurve(
        energies=grid, d_values=values, mode=batch.mode, tau=tau, x_m=x_m,
        n_shots=batch.n_shots, truncated_count=batch.truncated_count, seed=seed,
        kind=kind, _y=batch.y, _raw=batch.raw,
    )


def oracle_curve(es: EigenSystem, cf: CoolingFunction, tau: float, grid) -> SpectrumCurve:
    """Exact normalization-factor curve (no shots, no truncation)."""
    from .engine import exact_D_curve

    grid = np.asarray(grid, dtype=float)
    values = exact_D_curve(es, cf, tau, grid)
    return SpectrumCurve(
        energies=grid, d_values=values, mode="expectation", tau=tau, x_m=math.inf,
        n_shots=0, truncated_count=0, seed=0, kind=cf.kind,
    )


@dataclass(frozen=True)
class Peak:
    energy: float
    height: float


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_refine(evaluate, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Golden-section maximization of a unimodal function on [lo, hi]."""
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = evaluate(c), evaluate(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = evaluate(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = evaluate(d)
    best = c if fc >= fd else d
    return float(best), float(max(fc, fd))


def find_peaks(curve: SpectrumCurve, min_height: float = 0.005,
               min_separation: float | None = None) -> list[Peak]:
    """Local maxima of the scan, merged and refined.

    Peaks closer than ``min_separation`` (default: twice the grid spacing)
    are merged keeping the larger; each survivor is refined by one
    golden-section pass on the re-weighted estimate, stopping at one
    hundredth of the grid spacing.  An empty list is a valid result.
    """
    d = curve.d_values
    grid = curve.energies
    if len(grid) < 3:
        if len(grid) >= 1 and d.max() >= min_height:
            i = int(np.argmax(d))
            return [Peak(energy=float(grid[i]), height=float(d[i]))]
        return []
    spacing = float(np.median(np.diff(grid)))
    if min_separation is None:
        min_separation = 2.0 * spacing
    # local maxima with plateau handling: a run of equal values counts as
    # one peak (at its center) when the curve descends on both sides
    candidates = []
    i, count = 1, len(grid)
    while i < count - 1:
        if d[i] > d[i - 1]:
            j = i
            while j + 1 < count and d[j + 1] == d[i]:
                j += 1
            if j < count - 1 and d[j + 1] < d[i] and d[i] >= min_height:
                mid = (i + j) // 2
                candidates.append((float(grid[mid]), float(d[mid]), mid))
            i = j + 1
        else:
            i += 1
    candidates.sort()
    merged: list[tuple[float, float, int]] = []
    for cand in candidates:
        if merged and cand[0] - merged[-1][0] < min_separation:
            if cand[1] > merged[-1][1]:
                merged[-1] = cand
        else:
            merged.append(cand)
    peaks = []
    for energy, height, index in merged:
        if curve.can_reevaluate:
            lo = grid[max(index - 1, 0)]
            hi = grid[min(index + 1, len(grid) - 1)]
            energy, height = _golden_refine(lambda e: curve.d_at(float(e)), lo, hi, spacing / 100.0)
        peaks.append(Peak(energy=energy, height=height))
    return peaks

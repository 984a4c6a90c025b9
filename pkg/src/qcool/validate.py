"""Numerical self-checks of the filter family against quadrature oracles.

Reconstructs each window from its dual by quadrature (independent of the
closed forms), verifies dual norms and tail bounds, and runs
Kolmogorov-Smirnov tests of both samplers.  Heavy 1/x^2 dual tails
(triangle, exponential) are integrated analytically via sine integrals
beyond a finite quadrature range; the remainder dropped that way is
bounded below 1e-6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate
from scipy.signal import fftconvolve
from scipy.special import sici
from scipy.stats import kstest

from .cooling import KINDS, CoolingFunction, NonRealizableError

CLOSURE_TOL = 1e-4
NORM_TOL = 1e-6
TAIL_EPSILONS = (1e-1, 1e-2, 1e-3, 1e-4)
KS_TOL = 0.01
KS_DRAWS = 100_000

# finite quadrature range per kind; the analytic tail handles the rest
_NEAR_RANGE = {"triangle": 60.0, "exponential": 400.0}


def _cos_tail(a: float, x0: float) -> float:
    """int_x0^inf cos(a x) / x^2 dx for a >= 0 (integration by parts)."""
    if a == 0.0:
        return 1.0 / x0
    si, _ = sici(a * x0)
    return math.cos(a * x0) / x0 - a * (math.pi / 2.0 - si)


def _dual_tail_integral(cf: CoolingFunction, h: float, x0: float) -> float:
    """int_x0^inf f(x) cos(x h) dx via the 1/x^2 asymptotics (exact for the
    triangle, error < 1/(3 x0^3) for the exponential)."""
    h = abs(h)
    if cf.kind == "triangle":
        # f(x) = 2 pi^2 (1 - cos(x/pi)) / x^2
        a = 1.0 / math.pi
        return 2.0 * math.pi ** 2 * (
            _cos_tail(h, x0)
            - 0.5 * _cos_tail(h + a, x0)
            - 0.5 * _cos_tail(abs(h - a), x0)
        )
    if cf.kind == "exponential":
        # 2/(1+x^2) = 2/x^2 - 2/(x^2 (1+x^2)); second piece < 2/(3 x0^3)
        return 2.0 * _cos_tail(h, x0)
    return 0.0


def reconstruct_g(cf: CoolingFunction, h: float) -> float:
    """g(h) from the dual: (1/pi) int_0^inf f(x) cos(x h) dx (f is even)."""
    cf._require_realizable("reconstruction")
    x0 = _NEAR_RANGE.get(cf.kind, cf.cutoff_L(1e-8) + 10.0)
    h = float(h)
    if h == 0.0:
        near, _ = integrate.quad(cf.f_value, 0.0, x0, limit=400, epsabs=1e-11, epsrel=1e-11)
    else:
        near, _ = integrate.quad(cf.f_value, 0.0, x0, weight="cos", wvar=abs(h),
                                 limit=400, epsabs=1e-11, epsrel=1e-11)
    return (near + _dual_tail_integral(cf, h, x0)) / math.pi


def dual_norm_quadrature(cf: CoolingFunction) -> float:
    """||f|| by quadrature (duals are nonnegative for realizable kinds)."""
    cf._require_realizable("norm quadrature")
    x0 = _NEAR_RANGE.get(cf.kind, math.inf)
    if math.isinf(x0):
        near, _ = integrate.quad(cf.f_value, 0.0, math.inf, limit=400, epsabs=1e-12)
        return 2.0 * near
    near, _ = integrate.quad(cf.f_value, 0.0, x0, limit=400, epsabs=1e-12)
    return 2.0 * (near + _dual_tail_integral(cf, 0.0, x0))


def density_normalization(cf: CoolingFunction) -> float:
    """Quadrature of p over [-L(1e-8), L(1e-8)] plus the analytic remainder."""
    return dual_norm_quadrature(cf) / cf.f_norm


_CONV_GRID = {
    "triangle": (3000.0, 0.05),
    "exponential": (4000.0, 0.05),
    "gaussian": (30.0, 0.005),
    "sech": (30.0, 0.005),
}


def convolved_difference_cdf(cf: CoolingFunction):
    """Numerical CDF of x - x' (self-correlation of p) on a dense grid.

    Returns a callable usable with scipy.stats.kstest; mass outside the
    grid is folded in by renormalization (below 4e-4 for every kind).
    """
    half, step = _CONV_GRID[cf.kind]
    count = 2 * int(round(half / step)) + 1  # symmetric odd grid, exact endpoints
    xs = np.linspace(-half, half, count)
    step = xs[1] - xs[0]
    p = np.asarray(cf.density_p(xs))
    pdf = fftconvolve(p, p[::-1], mode="full") * step
    ys = (np.arange(pdf.size) - (xs.size - 1)) * step
    cdf = integrate.cumulative_trapezoid(pdf, dx=step, initial=0.0)
    cdf /= cdf[-1]

    def cdf_fn(values):
        return np.interp(np.asarray(values, dtype=float), ys, cdf, left=0.0, right=1.0)

    return cdf_fn


@dataclass
class KindReport:
    kind: str
    realizable: bool
    closure_max_error: float | None = None
    norm_error: float | None = None
    tail_ok: dict = field(default_factory=dict)
    ks_x: float | None = None
    ks_y: float | None = None
    ks_tol: float = KS_TOL
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        if not self.realizable:
            return True  # correctly rejected is the expected behaviour
        return (
            self.closure_max_error is not None and self.closure_max_error <= CLOSURE_TOL
            and self.norm_error is not None and self.norm_error <= NORM_TOL
            and all(self.tail_ok.values())
            and self.ks_x is not None and self.ks_x < self.ks_tol
            and self.ks_y is not None and self.ks_y < self.ks_tol
        )


@dataclass
class ValidationReport:
    seed: int
    reports: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def lines(self):
        out = []
        for r in self.reports:
            if not r.realizable:
                out.append(f"{r.kind:12s} non-realizable (sampling correctly rejected)   PASS")
                continue
            tails = " ".join("ok" if v else "FAIL" for v in r.tail_ok.values())
            out.append(
                f"{r.kind:12s} closure={r.closure_max_error:.2e} norm={r.norm_error:.2e} "
                f"tails=[{tails}] ks_x={r.ks_x:.4f} ks_y={r.ks_y:.4f}   "
                + ("PASS" if r.passed else "FAIL")
            )
        out.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return out


def validate_kind(kind: str, seed: int = 0, n_draws: int = KS_DRAWS) -> KindReport:
    cf = CoolingFunction(kind)
    report = KindReport(kind=kind, realizable=cf.realizable)
    if not cf.realizable:
        try:
            cf.sample_x(np.random.default_rng(seed))
        except NonRealizableError as exc:
            report.notes.append(str(exc))
        else:
            report.notes.append("ERROR: sampling did not raise")
            report.realizable = True  # force a failure: misbehaving kind
        return report

    h_grid = np.round(np.arange(-5.0, 5.0 + 1e-9, 0.1), 10)
    errs = [abs(reconstruct_g(cf, h) - float(cf.g_value(h))) for h in h_grid]
    report.closure_max_error = float(max(errs))
    if kind == "triangle" and report.closure_max_error > CLOSURE_TOL:
        report.notes.append(
            "known inconsistency: the tabulated dual sinc^2(x/2pi) is the "
            "transform of a dilated triangle (reconstruction gives pi*(1-pi|h|) "
            "on |h|<=1/pi), so window and dual are not an exact transform pair"
        )

    report.norm_error = abs(dual_norm_quadrature(cf) - cf.f_norm)

    for eps in TAIL_EPSILONS:
        report.tail_ok[eps] = cf.tail_mass(cf.cutoff_L(eps)) <= eps + 1e-12

    rng = np.random.default_rng(seed)
    # the 0.01 threshold is calibrated for 1e5 draws; rescale for smaller runs
    report.ks_tol = KS_TOL * math.sqrt(KS_DRAWS / n_draws)
    xs = cf.sample_x(rng, size=n_draws)
    report.ks_x = float(kstest(xs, cf.cdf_x).statistic)
    ys = cf.sample_y(rng, size=n_draws)
    report.ks_y = float(kstest(ys, convolved_difference_cdf(cf)).statistic)
    return report


def validate_functions(seed: int = 0, n_draws: int = KS_DRAWS) -> ValidationReport:
    """Full filter-family report; deterministic for a given seed."""
    return ValidationReport(seed=seed, reports=[validate_kind(k, seed, n_draws) for k in KINDS])

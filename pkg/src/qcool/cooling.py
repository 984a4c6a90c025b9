"""Filter-function family: spectral windows, Fourier duals, and samplers.

Five window shapes are supported.  Each exposes the window g(h), its
Fourier dual f(x), the normalized dual density p(x) = f(x)/||f||, a tail
cutoff L(eps) guaranteeing mass <= eps beyond +-L, the (upper-bounded)
inverse of g, and samplers for x ~ p and for the difference y = x - x'
whose law is the self-correlation of p.

The rectangular window is constructible (g and f evaluate) but its dual
has infinite one-norm, so every sampling / cutoff / inverse operation
raises :class:`NonRealizableError`.

All duals here are nonnegative for the realizable kinds, so the phase of
f is identically zero and no phase bookkeeping is carried.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.special import ndtr, ndtri, sici

logger = logging.getLogger(__name__)

KINDS = ("rectangular", "triangle", "exponential", "gaussian", "sech")
REALIZABLE_KINDS = ("triangle", "exponential", "gaussian", "sech")

TWO_PI = 2.0 * math.pi

# sinc^2(x/2pi)/(2pi^2) <= M * lorentzian(x): with u = x/2pi the ratio is
# [sin^2(u)/u^2 + 4 pi^2 sin^2(u)] / (2 pi) <= (1 + 4 pi^2) / (2 pi).
TRIANGLE_ENVELOPE_M = (1.0 + 4.0 * math.pi ** 2) / (2.0 * math.pi)


class NonRealizableError(ValueError):
    """Requested operation needs a finite-norm dual, which this kind lacks."""


def _sinc(u):
    """sin(u)/u with the removable singularity filled in."""
    u = np.asarray(u, dtype=float)
    out = np.sinc(u / math.pi)  # numpy sinc is sin(pi z)/(pi z)
    return out if out.ndim else float(out)


class CoolingFunction:
    """One member of the window family, identified by its lowercase kind name."""

    def __init__(self, kind: str):
        kind = kind.lower()
        if kind not in KINDS:
            raise ValueError(f"unknown kind {kind!r}; choose from {KINDS}")
        self.kind = kind
        # acceptance bookkeeping for the triangle rejection sampler
        self.rejection_stats = {"proposed": 0, "accepted": 0}

    # -- descriptors ---------------------------------------------------

    @property
    def realizable(self) -> bool:
        return self.kind in REALIZABLE_KINDS

    @property
    def f_norm(self) -> float:
        """One-norm of the dual; +inf for the rectangular window."""
        return {
            "rectangular": math.inf,
            "triangle": 2.0 * math.pi ** 2,
            "exponential": TWO_PI,
            "gaussian": TWO_PI,
            "sech": TWO_PI,
        }[self.kind]

    @property
    def c(self) -> float:
        """Prefactor ||f|| / 2 pi of the dual representation."""
        return self.f_norm / TWO_PI

    def _require_realizable(self, what: str):
        if not self.realizable:
            raise NonRealizableError(
                f"{self.kind} is not a realizable cooling function (infinite dual norm); {what} unavailable"
            )

    # -- closed forms ----------------------------------------------------

    def g_value(self, h):
        """Window value; even, maximal at 0, non-increasing in |h|."""
        h = np.asarray(h, dtype=float)
        a = np.abs(h)
        if self.kind == "rectangular":
            out = (a <= 0.5).astype(float)
        elif self.kind == "triangle":
            out = np.where(a <= 1.0, 1.0 - a, 0.0)
        elif self.kind == "exponential":
            out = np.exp(-a)
        elif self.kind == "gaussian":
            out = np.exp(-(h ** 2))
        else:  # sech
            out = 1.0 / np.cosh(h)
        return out if out.ndim else float(out)

    def f_value(self, x):
        """Fourier dual of the window."""
        x = np.asarray(x, dtype=float)
        if self.kind == "rectangular":
            out = _sinc(x / TWO_PI)
            out = np.asarray(out)
        elif self.kind == "triangle":
            out = np.asarray(_sinc(x / TWO_PI)) ** 2
        elif self.kind == "exponential":
            out = 2.0 / (x ** 2 + 1.0)
        elif self.kind == "gaussian":
            out = math.sqrt(math.pi) * np.exp(-(x ** 2) / 4.0)
        else:  # sech, written to avoid cosh overflow at large |x|
            t = np.exp(-math.pi * np.abs(x) / 2.0)
            out = 2.0 * math.pi * t / (1.0 + t ** 2)
        return out if out.ndim else float(out)

    def density_p(self, x):
        """Normalized dual density f(x)/||f||; integrates to one."""
        self._require_realizable("density")
        x = np.asarray(x, dtype=float)
        out = np.asarray(self.f_value(x)) / self.f_norm
        return out if out.ndim else float(out)

    def cutoff_L(self, eps: float) -> float:
        """Cutoff with tail mass of p beyond +-L at most eps."""
        self._require_realizable("cutoff")
        if not 0.0 < eps < 1.0:
            raise ValueError(f"eps must lie in (0, 1), got {eps}")
        if self.kind == "triangle":
            return 6.0 / eps
        if self.kind == "exponential":
            return 2.0 / (math.pi * eps)
        if self.kind == "gaussian":
            return 2.0 * math.sqrt(math.log(1.0 / eps))
        return (2.0 / math.pi) * math.log(4.0 / (math.pi * eps))  # sech

    def cutoff_inverse(self, x: float) -> float:
        """Inverse of the cutoff bound: the guaranteed tail mass at cutoff x.

        This inverts the L(eps) formulas (a conservative bound), not the
        true tail mass; see :meth:`tail_mass` for the latter.  Clamped to 1.
        """
        self._require_realizable("cutoff inverse")
        if x <= 0.0:
            return 1.0
        if self.kind == "triangle":
            eps = 6.0 / x
        elif self.kind == "exponential":
            eps = 2.0 / (math.pi * x)
        elif self.kind == "gaussian":
            eps = math.exp(-(x ** 2) / 4.0)
        else:  # sech
            eps = (4.0 / math.pi) * math.exp(-math.pi * x / 2.0)
        return min(1.0, eps)

    def g_inverse(self, p: float) -> float:
        """Nonnegative h with g(h) >= p; exact except for sech (upper bound)."""
        self._require_realizable("inverse")
        if not 0.0 < p <= 1.0:
            raise ValueError(f"p must lie in (0, 1], got {p}")
        if self.kind == "triangle":
            return 1.0 - p
        if self.kind == "exponential":
            return math.log(1.0 / p)
        if self.kind == "gaussian":
            return math.sqrt(math.log(1.0 / p))
        return math.log(2.0 / p)  # sech upper bound

    # -- exact tail / CDF (dual density) -------------------------------

    def tail_mass(self, x: float) -> float:
        """True two-sided mass of p beyond +-x (closed forms, x >= 0)."""
        self._require_realizable("tail mass")
        x = float(x)
        if x <= 0.0:
            return 1.0
        if self.kind == "triangle":
            # p(t) = (1 - cos(t/pi))/t^2; integrate by parts to sine integrals
            si, _ = sici(x / math.pi)
            one_sided = (1.0 - math.cos(x / math.pi)) / x + (math.pi / 2.0 - si) / math.pi
            return 2.0 * one_sided
        if self.kind == "exponential":
            return 1.0 - (2.0 / math.pi) * math.atan(x)
        if self.kind == "gaussian":
            return 2.0 * (1.0 - ndtr(x / math.sqrt(2.0)))
        return (4.0 / math.pi) * math.atan(math.exp(-math.pi * x / 2.0))  # sech

    def cdf_x(self, x):
        """CDF of the dual density p (closed forms; overflow-safe)."""
        self._require_realizable("CDF")
        x = np.asarray(x, dtype=float)
        if self.kind == "triangle":
            half_tail = np.array([self.tail_mass(abs(v)) / 2.0 for v in np.atleast_1d(x)])
            half_tail = half_tail.reshape(np.shape(x))
            out = np.where(x >= 0.0, 1.0 - half_tail, half_tail)
        elif self.kind == "exponential":
            out = 0.5 + np.arctan(x) / math.pi
        elif self.kind == "gaussian":
            out = ndtr(x / math.sqrt(2.0))
        else:  # sech: (2/pi) arctan(exp(pi x / 2)), folded to avoid overflow
            t = (2.0 / math.pi) * np.arctan(np.exp(-math.pi * np.abs(x) / 2.0))
            out = np.where(x >= 0.0, 1.0 - t, t)
        out = np.asarray(out)
        return out if out.ndim else float(out)

    # -- samplers --------------------------------------------------------

    def sample_x(self, rng: np.random.Generator, size: int | None = None):
        """Draw from the dual density p(x).

        Inverse-CDF transforms for exponential / gaussian / sech; the
        triangle kind rejects from the exponential kind's Lorentzian
        envelope with the analytic constant ``TRIANGLE_ENVELOPE_M``.
        """
        self._require_realizable("sampling")
        if self.kind == "triangle":
            return self._sample_triangle(rng, size)
        n = 1 if size is None else int(size)
        u = np.clip(rng.random(n), 1e-16, 1.0 - 1e-16)
        out = self.x_from_uniform(u)
        return float(out[0]) if size is None else out

    def x_from_uniform(self, u):
        """Inverse-CDF transform (not available for the triangle kind)."""
        self._require_realizable("sampling")
        if self.kind == "triangle":
            raise ValueError("triangle kind has no closed-form inverse CDF")
        u = np.asarray(u, dtype=float)
        if self.kind == "exponential":
            return np.tan(math.pi * (u - 0.5))
        if self.kind == "gaussian":
            return math.sqrt(2.0) * ndtri(u)
        return (2.0 / math.pi) * np.log(np.tan(math.pi * u / 2.0))  # sech

    def _sample_triangle(self, rng, size):
        n = 1 if size is None else int(size)
        out = np.empty(n)
        remaining = n
        filled = 0
        lorentz = CoolingFunction("exponential")
        while remaining > 0:
            # batch enough proposals that one round usually suffices
            batch = max(16, int(remaining * TRIANGLE_ENVELOPE_M * 1.3))
            u = np.clip(rng.random(batch), 1e-16, 1.0 - 1e-16)
            xs = np.tan(math.pi * (u - 0.5))
            accept_u = rng.random(batch)
            envelope = TRIANGLE_ENVELOPE_M * np.asarray(lorentz.density_p(xs))
            accepted = xs[accept_u * envelope <= np.asarray(self.density_p(xs))]
            self.rejection_stats["proposed"] += batch
            self.rejection_stats["accepted"] += len(accepted)
            take = min(remaining, len(accepted))
            out[filled:filled + take] = accepted[:take]
            filled += take
            remaining -= take
        stats = self.rejection_stats
        logger.debug("triangle rejection acceptance rate %.4f (%d/%d)",
                     stats["accepted"] / max(1, stats["proposed"]),
                     stats["accepted"], stats["proposed"])
        return float(out[0]) if size is None else out

    def sample_y(self, rng: np.random.Generator, size: int | None = None):
        """Draw from the self-correlation of p: the law of x - x' for
        independent x, x' ~ p (valid because p is even)."""
        self._require_realizable("sampling")
        a = self.sample_x(rng, size)
        b = self.sample_x(rng, size)
        return a - b

"""Closed-form resource budgets: map target accuracies to (tau, x_m, N_M)
and back to guaranteed error components.

Two budget families are provided.  The default constants are the ones the
error analysis actually proves; slightly tighter constants quoted alongside
the headline statements are available behind ``loose=True`` for comparison
(same shapes, smaller prefactors, weaker provenance).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cooling import CoolingFunction


@dataclass(frozen=True)
class Budget:
    """Resolved resource choice; ``t_m = tau * x_m`` is the longest real
    evolution time any single shot needs (circuit-depth proxy)."""

    kind: str
    tau: float
    x_m: float
    n_shots: int
    confidence: float          # Hoeffding constant K
    delta: float               # failure probability 4 exp(-K/8)
    target: dict = field(default_factory=dict)

    @property
    def t_m(self) -> float:
        return self.tau * self.x_m


def _delta(confidence: float) -> float:
    return 4.0 * math.exp(-confidence / 8.0)


def _check_unit(name: str, value: float):
    if not 0.0 < value < 1.0:
        raise ValueError(f"{name} must lie in (0, 1), got {value}")


def budget_for_observable(cf: CoolingFunction, epsilon: float, overlap: float,
                          gap: float, confidence: float, loose: bool = False) -> Budget:
    """Budget guaranteeing |estimated - true observable| <= epsilon (||O||_1 + 1)
    with failure probability 4 exp(-K/8), for a target eigenstate with the
    given initial-state overlap and a known gap lower bound.
    """
    _check_unit("epsilon", epsilon)
    _check_unit("overlap", overlap)
    if gap <= 0.0:
        raise ValueError(f"gap must be positive, got {gap}")
    if confidence <= 0.0:
        raise ValueError(f"confidence must be positive, got {confidence}")
    inner = epsilon * overlap / (6.0 if loose else 12.0)
    tau = cf.g_inverse(inner) / gap
    x_m = math.sqrt(2.0) * cf.cutoff_L(epsilon * overlap / 12.0)
    n_shots = math.ceil(confidence * (6.0 / (epsilon * overlap)) ** 2)
    return Budget(kind=cf.kind, tau=tau, x_m=x_m, n_shots=int(n_shots),
                  confidence=confidence, delta=_delta(confidence),
                  target={"type": "observable", "epsilon": epsilon, "overlap": overlap,
                          "gap": gap, "loose": loose})


def budget_for_energy(cf: CoolingFunction, kappa: float, overlap: float,
                      confidence: float, loose: bool = False) -> Budget:
    """Budget guaranteeing an eigenenergy estimate within kappa with failure
    probability 4 exp(-K/8).  Only tau depends on kappa, so the total cost
    tau * x_m * N_M scales as 1/kappa.
    """
    if kappa <= 0.0:
        raise ValueError(f"kappa must be positive, got {kappa}")
    _check_unit("overlap", overlap)
    if confidence <= 0.0:
        raise ValueError(f"confidence must be positive, got {confidence}")
    margin = 1.0 - cf.g_value(1.0)
    if loose:
        tau = 1.0 / kappa
        x_m = math.sqrt(2.0) * cf.cutoff_L(margin * overlap / 4.0)
        n_shots = math.ceil(2.0 * confidence / (margin * overlap ** 2))
    else:
        tau = cf.g_inverse(margin * overlap / 6.0) / kappa
        x_m = math.sqrt(2.0) * cf.cutoff_L(margin * overlap / 6.0)
        n_shots = math.ceil(9.0 * confidence / (margin ** 2 * overlap ** 2))
    return Budget(kind=cf.kind, tau=tau, x_m=x_m, n_shots=int(n_shots),
                  confidence=confidence, delta=_delta(confidence),
                  target={"type": "energy", "kappa": kappa, "overlap": overlap,
                          "loose": loose})


def kappa_tolerance(cf: CoolingFunction, epsilon: float, overlap: float, gap: float) -> float:
    """Largest admissible eigenenergy error before observable guarantees
    degrade: gap / g^{-1}(epsilon * overlap / 6)."""
    _check_unit("epsilon", epsilon)
    _check_unit("overlap", overlap)
    if gap <= 0.0:
        raise ValueError(f"gap must be positive, got {gap}")
    return gap / cf.g_inverse(epsilon * overlap / 6.0)


def energy_error_inflation(cf: CoolingFunction, tau: float, kappa: float) -> float:
    """Multiplicative blow-up g(tau kappa)^{-2} of the error budget when the
    trial energy is off by kappa."""
    g = cf.g_value(tau * kappa)
    if g <= 0.0:
        return math.inf
    return 1.0 / g ** 2


@dataclass(frozen=True)
class ErrorComponents:
    """Guaranteed error components implied by a resource choice.

    ``d_*`` bound the normalization-factor estimate, ``n_*`` the
    unnormalized observable estimate (the latter in units of the relevant
    observable norm).  ``d_tau_peak`` applies at the target energy itself;
    ``d_tau_window`` anywhere within half a gap of it.
    """

    d_tau_peak: float
    d_tau_window: float
    d_cutoff: float
    d_sampling: float
    n_tau: float
    n_cutoff: float
    n_sampling: float


def error_from_resources(cf: CoolingFunction, tau: float, x_m: float, n_shots: int,
                         confidence: float, overlap: float, gap: float) -> ErrorComponents:
    """Invert the budget bounds for given resources.

    Finite filter time: 2 g(tau gap) at the peak, 2 g(tau gap / 2) in the
    half-gap window.  Finite cutoff: twice the guaranteed tail mass at
    x_m / sqrt(2) (difference of two times) respectively x_m (each time).
    Finite sampling: sqrt(K / N_M).
    """
    if min(tau, x_m, n_shots, confidence, gap) <= 0.0:
        raise ValueError("all resource arguments must be positive")
    _check_unit("overlap", overlap)
    sampling = math.sqrt(confidence / n_shots)
    return ErrorComponents(
        d_tau_peak=2.0 * float(cf.g_value(tau * gap)),
        d_tau_window=2.0 * float(cf.g_value(tau * gap / 2.0)),
        d_cutoff=2.0 * cf.cutoff_inverse(x_m / math.sqrt(2.0)),
        d_sampling=sampling,
        n_tau=2.0 * float(cf.g_value(tau * gap)),
        n_cutoff=2.0 * cf.cutoff_inverse(x_m),
        n_sampling=sampling,
    )


def observable_error_bound(components: ErrorComponents, one_norm: float, overlap: float) -> float:
    """Combine the components into the guaranteed observable error.

    Uses expectation <= one-norm and spectral norm <= one-norm; valid at
    the target energy (peak variant of the filter-time component).
    """
    d_total = components.d_tau_peak + components.d_cutoff + components.d_sampling
    n_total = (components.n_tau + components.n_cutoff) * one_norm + components.n_sampling * one_norm
    return ((one_norm + 1.0) * d_total + n_total) / overlap


def infidelity_bound(cf: CoolingFunction, tau: float, x_m: float,
                     overlap: float, gap: float) -> float:
    """Infinite-sample upper bound on 1 - <target projector> after filtering
    at the exact target energy: the projector has unit norms, so the bound
    is (filter-time + cutoff components) / overlap, clipped to 1."""
    if min(tau, x_m, gap) <= 0.0:
        raise ValueError("tau, x_m and gap must be positive")
    _check_unit("overlap", overlap)
    total = (
        4.0 * float(cf.g_value(tau * gap))
        + 2.0 * cf.cutoff_inverse(x_m / math.sqrt(2.0))
        + 2.0 * cf.cutoff_inverse(x_m)
    )
    return min(1.0, total / overlap)

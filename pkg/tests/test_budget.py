import math

import numpy as np
import pytest

from qcool import (
    Budget,
    CoolingFunction,
    NonRealizableError,
    budget_for_energy,
    budget_for_observable,
    error_from_resources,
    kappa_tolerance,
)
from qcool.budget import energy_error_inflation, infidelity_bound, observable_error_bound

KINDS = ("triangle", "exponential", "gaussian", "sech")


def test_observable_budget_gaussian_example():
    cf = CoolingFunction("gaussian")
    b = budget_for_observable(cf, 0.1, 0.5, 1.0, 32.0)
    ln240 = math.log(12.0 / 0.05)
    assert b.tau == pytest.approx(math.sqrt(ln240), rel=1e-12)
    assert b.x_m == pytest.approx(math.sqrt(2.0) * 2.0 * math.sqrt(ln240), rel=1e-12)
    assert b.n_shots == 460_800  # 32 * (6 / 0.05)^2
    assert b.delta == pytest.approx(4 * math.exp(-4.0), rel=1e-12)
    assert b.t_m == pytest.approx(b.tau * b.x_m)


def test_observable_budget_gap_scaling():
    cf = CoolingFunction("sech")
    one = budget_for_observable(cf, 0.2, 0.4, 1.0, 8.0)
    two = budget_for_observable(cf, 0.2, 0.4, 2.0, 8.0)
    assert two.tau == pytest.approx(one.tau / 2.0, rel=1e-12)
    assert two.x_m == one.x_m and two.n_shots == one.n_shots


def test_observable_budget_exponential_tau_ratio():
    cf = CoolingFunction("exponential")
    eps, p = 0.2, 0.4
    a = budget_for_observable(cf, eps, p, 1.0, 8.0)
    b = budget_for_observable(cf, eps / 10.0, p, 1.0, 8.0)
    want = math.log(120.0 / (eps * p)) / math.log(12.0 / (eps * p))
    assert b.tau / a.tau == pytest.approx(want, rel=1e-12)


def test_observable_budget_loose_variant():
    cf = CoolingFunction("gaussian")
    strict = budget_for_observable(cf, 0.1, 0.5, 1.0, 32.0)
    loose = budget_for_observable(cf, 0.1, 0.5, 1.0, 32.0, loose=True)
    assert loose.tau == pytest.approx(math.sqrt(math.log(6.0 / 0.05)), rel=1e-12)
    assert loose.tau < strict.tau
    assert loose.x_m == strict.x_m and loose.n_shots == strict.n_shots


def test_energy_budget_gaussian_example():
    cf = CoolingFunction("gaussian")
    b = budget_for_energy(cf, 0.1, 0.5, 8.0)
    margin = 1.0 - math.exp(-1.0)
    assert b.n_shots == math.ceil(9.0 * 8.0 / (margin ** 2 * 0.25))
    assert b.n_shots == 721


def test_energy_budget_kappa_scaling():
    cf = CoolingFunction("gaussian")
    one = budget_for_energy(cf, 0.2, 0.5, 8.0)
    two = budget_for_energy(cf, 0.1, 0.5, 8.0)
    assert two.tau == pytest.approx(2.0 * one.tau, rel=1e-12)
    # only tau depends on the accuracy: total cost scales as 1/kappa
    assert two.x_m == one.x_m and two.n_shots == one.n_shots
    assert (two.tau * two.x_m * two.n_shots) == pytest.approx(
        2.0 * one.tau * one.x_m * one.n_shots, rel=1e-12)


def test_energy_budget_loose_variant():
    cf = CoolingFunction("gaussian")
    margin = 1.0 - math.exp(-1.0)
    loose = budget_for_energy(cf, 0.1, 0.5, 8.0, loose=True)
    assert loose.tau == pytest.approx(10.0)
    assert loose.x_m == pytest.approx(math.sqrt(2.0) * cf.cutoff_L(margin * 0.5 / 4.0), rel=1e-12)
    assert loose.n_shots == math.ceil(2.0 * 8.0 / (margin * 0.25))


def test_kappa_tolerance():
    cf = CoolingFunction("gaussian")
    base = kappa_tolerance(cf, 0.1, 0.5, 1.0)
    assert base == pytest.approx(1.0 / math.sqrt(math.log(6.0 / 0.05)), rel=1e-12)
    assert kappa_tolerance(cf, 0.1, 0.5, 0.5) == pytest.approx(base / 2.0, rel=1e-12)


def test_energy_error_inflation():
    cf = CoolingFunction("gaussian")
    assert energy_error_inflation(cf, 1.0, 0.0) == 1.0
    assert energy_error_inflation(cf, 1.0, 1.0) == pytest.approx(math.exp(2.0), rel=1e-12)
    rect = CoolingFunction("rectangular")
    assert energy_error_inflation(rect, 4.0, 1.0) == math.inf


def test_error_components_monotone_in_tau():
    cf = CoolingFunction("sech")
    taus = np.linspace(0.5, 6.0, 12)
    vals = [error_from_resources(cf, t, 5.0, 1000, 8.0, 0.5, 1.0).d_tau_peak for t in taus]
    assert all(b <= a for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 1e-2


def test_error_components_cutoff_and_sampling():
    cf = CoolingFunction("gaussian")
    x_m = math.sqrt(2.0) * cf.cutoff_L(0.01)
    comp = error_from_resources(cf, 2.0, x_m, 800, 8.0, 0.5, 1.0)
    assert comp.d_cutoff == pytest.approx(0.02, rel=1e-9)
    assert comp.n_cutoff < comp.d_cutoff
    eps_n = 0.05
    comp2 = error_from_resources(cf, 2.0, x_m, round(8.0 / eps_n ** 2), 8.0, 0.5, 1.0)
    assert comp2.d_sampling == pytest.approx(eps_n, rel=1e-12)
    assert comp.d_tau_window >= comp.d_tau_peak


@pytest.mark.parametrize("kind", KINDS)
@pytest.mark.parametrize("eps", [0.3, 0.1, 0.03])
def test_budget_roundtrip_bound(kind, eps):
    # plugging a budget back into the component bounds keeps the combined
    # observable error within eps (one_norm + 1)
    cf = CoolingFunction(kind)
    for overlap, gap, one_norm in ((0.5, 1.0, 1.0), (0.25, 0.4, 2.5)):
        b = budget_for_observable(cf, eps, overlap, gap, 32.0)
        comp = error_from_resources(cf, b.tau, b.x_m, b.n_shots, b.confidence, overlap, gap)
        assert observable_error_bound(comp, one_norm, overlap) <= eps * (one_norm + 1.0) + 1e-9


def test_infidelity_bound_dominates_pure_filtering(benchmark_system, gaussian):
    from qcool import cooled_state

    es = benchmark_system
    j = int(np.argmax(es.overlaps))
    overlap = float(es.overlaps[j])
    energy = float(es.energies[j])
    gap = min(abs(es.energies[i] - energy) for i in range(es.dim)
              if abs(es.energies[i] - energy) > 1e-9)
    for tau in (0.8, 1.4, 2.2):
        oracle = float(cooled_state(es, gaussian, tau, energy).infidelity[j])
        bound = infidelity_bound(gaussian, tau, 8.0, overlap, gap)
        assert bound >= oracle - 1e-12


def test_budget_validation_errors():
    cf = CoolingFunction("gaussian")
    with pytest.raises(ValueError):
        budget_for_observable(cf, 0.0, 0.5, 1.0, 8.0)
    with pytest.raises(ValueError):
        budget_for_observable(cf, 0.1, 1.5, 1.0, 8.0)
    with pytest.raises(ValueError):
        budget_for_observable(cf, 0.1, 0.5, -1.0, 8.0)
    with pytest.raises(ValueError):
        budget_for_energy(cf, -0.1, 0.5, 8.0)
    with pytest.raises(ValueError):
        error_from_resources(cf, 0.0, 1.0, 10, 8.0, 0.5, 1.0)
    rect = CoolingFunction("rectangular")
    with pytest.raises(NonRealizableError):
        budget_for_observable(rect, 0.1, 0.5, 1.0, 8.0)


def test_budget_is_frozen():
    cf = CoolingFunction("gaussian")
    b = budget_for_observable(cf, 0.1, 0.5, 1.0, 8.0)
    assert isinstance(b, Budget)
    with pytest.raises(AttributeError):
        b.tau = 1.0

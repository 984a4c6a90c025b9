import math

import numpy as np
import pytest

from qcool import (
    CoolingFunction,
    DegenerateRatioError,
    PauliString,
    PauliSum,
    budget_for_observable,
    eigendecompose,
    estimate_D,
    estimate_N,
    estimate_observable,
    find_peaks,
    random_pauli_hamiltonian,
    scan_energy,
)
from qcool.engine import StateVector
from qcool.estimators import Peak, SpectrumCurve, oracle_curve

from oracles import truncated_d_oracle, truncated_n_oracle


def _eigenstate_system(j=2):
    h = random_pauli_hamiltonian(3, 6, seed=6)
    probe = eigendecompose(h, StateVector(np.eye(8)[0]))
    return eigendecompose(h, StateVector(probe.vectors[:, j])), probe


def test_estimate_d_eigenstate(gaussian):
    es, probe = _eigenstate_system()
    r = estimate_D(es, gaussian, 1.5, 50.0, float(probe.energies[2]), 20_000, seed=1)
    assert abs(r.value - 1.0) < 3 * r.standard_error
    assert r.shots_used == 20_000
    assert r.standard_error == pytest.approx(2 / math.sqrt(20_000))


def test_estimate_d_tau_zero(small_system, gaussian):
    r = estimate_D(small_system, gaussian, 0.0, 60.0, 2.2, 20_000, seed=2)
    assert abs(r.value - 1.0) < 3 * r.standard_error


def test_estimate_d_against_oracle(small_system, gaussian):
    tau, x_m, energy = 1.2, 3.2, float(small_system.energies[2])
    oracle = truncated_d_oracle(small_system, gaussian, tau, x_m, energy)
    hits = 0
    for seed in range(20):
        r = estimate_D(small_system, gaussian, tau, x_m, energy, 40_000, seed=seed)
        hits += abs(r.value - oracle) <= 3 * r.standard_error
    assert hits == 20  # Hoeffding-scale bars are conservative


def test_estimate_n_identity_matches_d(small_system, gaussian):
    identity = PauliSum(3, [(1.0, PauliString(3, "III"))])
    tau, x_m, energy = 1.0, 3.5, float(small_system.energies[2])
    d_oracle = truncated_d_oracle(small_system, gaussian, tau, x_m, energy)
    n_oracle = truncated_n_oracle(small_system, gaussian, tau, x_m, energy, identity)
    r = estimate_N(small_system, gaussian, tau, x_m, energy, identity, 60_000, seed=3)
    assert abs(r.value - n_oracle) < 3 * r.standard_error
    # the identity sandwich measures the same physics through a wider window
    assert abs(d_oracle - n_oracle) < 0.06


def test_estimate_n_eigenstate_expectation(gaussian):
    es, probe = _eigenstate_system()
    obs = PauliSum(3, [(0.6, PauliString(3, "ZII")), (0.4, PauliString(3, "IYX", sign=-1))])
    target = probe.vectors[:, 2]
    want = float(np.real(target.conj() @ obs.to_matrix() @ target))
    r = estimate_N(es, gaussian, 2.0, 50.0, float(probe.energies[2]), obs, 60_000, seed=4)
    assert abs(r.value - want) < 3 * r.standard_error


def test_estimate_n_against_double_quadrature(second_system, gaussian):
    obs = PauliSum(3, [(0.7, PauliString(3, "ZII")), (0.3, PauliString(3, "IXI"))])
    tau, x_m, energy = 0.9, 3.0, float(second_system.energies[7])
    oracle = truncated_n_oracle(second_system, gaussian, tau, x_m, energy, obs)
    r = estimate_N(second_system, gaussian, tau, x_m, energy, obs, 120_000, seed=5)
    assert abs(r.value - oracle) < 3 * r.standard_error


def test_estimate_observable_eigenstate():
    h = PauliSum(2, [(1.0, PauliString(2, "XX")), (0.7, PauliString(2, "ZI"))])
    probe = eigendecompose(h, StateVector(np.eye(4)[0]))
    es = eigendecompose(h, StateVector(probe.vectors[:, 0]))
    obs = PauliSum(2, [(1.0, PauliString(2, "ZI"))])
    cf = CoolingFunction("gaussian")
    budget = budget_for_observable(cf, 0.15, 0.95, 0.5, confidence=8.0)
    target = probe.vectors[:, 0]
    want = float(np.real(target.conj() @ obs.to_matrix() @ target))
    est = estimate_observable(es, cf, budget.tau, budget.x_m, float(probe.energies[0]),
                              obs, budget.n_shots, seed=6)
    assert abs(est.value - want) <= 0.15 * (obs.one_norm + 1.0)


def test_estimate_observable_identity(small_system, gaussian):
    identity = PauliSum(3, [(1.0, PauliString(3, "III"))])
    est = estimate_observable(small_system, gaussian, 1.2, 6.0,
                              float(small_system.energies[2]), identity, 40_000, seed=7)
    assert est.value == pytest.approx(1.0, abs=0.05)


def test_degenerate_ratio_raises(small_system, gaussian):
    obs = PauliSum(3, [(1.0, PauliString(3, "ZII"))])
    # trial energy far below the spectrum with a strong filter: D is numerically zero
    with pytest.raises(DegenerateRatioError):
        estimate_observable(small_system, gaussian, 8.0, 50.0, -40.0, obs, 4000, seed=8)


def test_scan_single_point_equals_estimate(small_system, gaussian):
    energy = float(small_system.energies[2])
    curve = scan_energy(small_system, gaussian, 1.1, 3.0, [energy], 5000, seed=9)
    direct = estimate_D(small_system, gaussian, 1.1, 3.0, energy, 5000, seed=9)
    assert curve.d_values[0] == direct.value


def test_scan_reuse_bitwise_both_modes(small_system, gaussian):
    grid = np.linspace(0.0, 6.0, 31)
    for mode in ("shot", "expectation"):
        curve = scan_energy(small_system, gaussian, 1.1, 3.0, grid, 4000, seed=10, mode=mode)
        for i in (0, 17, 30):
            direct = estimate_D(small_system, gaussian, 1.1, 3.0, float(grid[i]),
                                4000, seed=10, mode=mode)
            assert curve.d_values[i] == direct.value
        # re-evaluation through the reuse payload is the same arithmetic
        assert curve.d_at(float(grid[17])) == curve.d_values[17]


def test_scan_validation(small_system, gaussian):
    with pytest.raises(ValueError):
        scan_energy(small_system, gaussian, 1.0, 3.0, [], 100, seed=0)
    with pytest.raises(ValueError):
        SpectrumCurve(energies=np.array([1.0, 0.5]), d_values=np.array([0.1, 0.2]),
                      mode="shot", tau=1.0, x_m=1.0, n_shots=1, truncated_count=0,
                      seed=0, kind="gaussian")


def test_find_peaks_single_eigenstate(gaussian):
    es, probe = _eigenstate_system()
    energy = float(probe.energies[2])
    grid = np.linspace(energy - 2.0, energy + 2.0, 161)
    curve = scan_energy(es, gaussian, 2.0, 8.0, grid, 30_000, seed=11, mode="expectation")
    peaks = find_peaks(curve, min_height=0.1)
    assert len(peaks) == 1
    assert abs(peaks[0].energy - energy) < (grid[1] - grid[0])


def test_find_peaks_empty_on_flat(gaussian, small_system):
    # window between eigenvalues with a strong filter: nothing above threshold
    grid = np.linspace(7.0, 9.0, 41)
    curve = scan_energy(small_system, gaussian, 6.0, 30.0, grid, 2000, seed=12, mode="expectation")
    assert find_peaks(curve, min_height=0.05) == []


def test_find_peaks_merging_and_refinement():
    grid = np.linspace(0.0, 10.0, 101)
    peak = lambda e: np.exp(-((grid - e) ** 2) / 0.1)
    values = 0.6 * peak(3.0) + 0.55 * peak(3.6) + 0.8 * peak(7.0)
    curve = SpectrumCurve(energies=grid, d_values=values, mode="expectation",
                          tau=1.0, x_m=1.0, n_shots=1, truncated_count=0,
                          seed=0, kind="gaussian")
    merged = find_peaks(curve, min_height=0.05, min_separation=1.0)
    assert len(merged) == 2
    assert merged[0].energy == pytest.approx(3.0, abs=0.06)  # larger of the pair kept
    split = find_peaks(curve, min_height=0.05, min_separation=0.3)
    assert len(split) == 3


def test_golden_refinement_beats_grid():
    true_peak = 5.03
    tau = 1.0
    y = np.array([0.8, -1.1, 0.45, 1.7, -0.3])
    raw = np.exp(1j * tau * y * true_peak)  # synthetic reuse payload
    grid = np.linspace(4.0, 6.0, 21)
    phases = np.exp(-1j * tau * np.outer(grid, y))
    values = (phases @ raw).real / len(y)
    curve = SpectrumCurve(energies=grid, d_values=values, mode="expectation",
                          tau=tau, x_m=1.0, n_shots=len(y), truncated_count=0,
                          seed=0, kind="gaussian", _y=y, _raw=raw)
    peaks = find_peaks(curve, min_height=0.1)
    spacing = grid[1] - grid[0]
    assert len(peaks) == 1
    assert abs(peaks[0].energy - true_peak) < spacing / 10


def test_hoeffding_envelope(small_system, gaussian):
    # N = K / eps^2 keeps the failure rate under 2 exp(-K/8) (plus slack)
    confidence, eps = 8.0, 0.05
    n_shots = int(confidence / eps ** 2)
    tau, x_m, energy = 1.0, 3.0, float(small_system.energies[2])
    oracle = truncated_d_oracle(small_system, gaussian, tau, x_m, energy)
    failures = sum(
        abs(estimate_D(small_system, gaussian, tau, x_m, energy, n_shots, seed=s).value - oracle) > eps
        for s in range(200)
    )
    bound = 2 * math.exp(-confidence / 8.0)
    slack = 3 * math.sqrt(bound * (1 - bound) / 200)
    assert failures / 200 <= bound + slack


def test_oracle_curve_matches_exact(small_system, gaussian):
    from qcool.engine import exact_D_curve

    grid = np.linspace(0.0, 6.0, 61)
    curve = oracle_curve(small_system, gaussian, 1.4, grid)
    assert np.allclose(curve.d_values, exact_D_curve(small_system, gaussian, 1.4, grid))
    assert not curve.can_reevaluate

import numpy as np
import pytest
from scipy.linalg import eigh as scipy_eigh

from qcool import PauliString, basis_state, heisenberg, random_pauli_hamiltonian
from qcool.models import load_pauli_file
from qcool.pauli import PauliSum, to_matrix


def test_two_site_terms():
    h = heisenberg(2, J=1.0, zz_anisotropy=2.0, h=0.0, periodic=False)
    got = sorted((c, p.letters) for c, p in h.terms)
    assert got == [(1.0, "XX"), (1.0, "YY"), (2.0, "ZZ")]


def test_zero_couplings_dropped():
    h = heisenberg(3, J=1.0, zz_anisotropy=0.0, h=0.0, periodic=False)
    assert all(set(p.letters) - {"I"} != {"Z"} for _, p in h.terms)


def test_negative_coupling_signs():
    h = heisenberg(2, J=-1.0, zz_anisotropy=2.0, h=-0.5, periodic=False)
    assert all(c > 0 for c, _ in h.terms)
    signs = {p.letters: p.sign for _, p in h.terms}
    assert signs["XX"] == -1 and signs["ZZ"] == -1 and signs["ZI"] == -1


def test_benchmark_ground_energy():
    h = heisenberg(8, J=1.0, zz_anisotropy=2.0, h=1.0, periodic=True)
    ours = np.linalg.eigvalsh(h.to_matrix())
    reference = scipy_eigh(h.to_matrix(), eigvals_only=True)
    assert abs(ours[0] - reference[0]) < 1e-8


def test_field_flip_symmetry():
    plus = heisenberg(4, 1.0, 2.0, 0.7, periodic=True)
    minus = heisenberg(4, 1.0, 2.0, -0.7, periodic=True)
    flip = to_matrix(PauliString(4, "XXXX"))
    conjugated = flip @ plus.to_matrix() @ flip
    assert np.allclose(np.linalg.eigvalsh(conjugated), np.linalg.eigvalsh(minus.to_matrix()), atol=1e-9)


def test_translation_invariance_periodic():
    h = heisenberg(5, 1.0, 2.0, 0.3, periodic=True)
    spectrum = np.linalg.eigvalsh(h.to_matrix())
    shifted_terms = []
    for coeff, p in h.terms:
        letters = p.letters[-1] + p.letters[:-1]
        shifted_terms.append((coeff, PauliString(5, letters, p.sign)))
    shifted = PauliSum(5, shifted_terms)
    assert np.allclose(spectrum, np.linalg.eigvalsh(shifted.to_matrix()), atol=1e-9)


def test_chain_size_validation():
    with pytest.raises(ValueError):
        heisenberg(1)


def test_basis_state_basics():
    s = basis_state("00")
    assert np.allclose(s.amplitudes, [1, 0, 0, 0])
    assert abs(np.linalg.norm(s.amplitudes) - 1.0) < 1e-15
    assert np.allclose(basis_state("01").amplitudes, [0, 1, 0, 0])


def test_basis_state_bit_convention():
    # leftmost char is qubit 0; '1' is the -1 eigenstate of Z there
    s = basis_state("10")
    z0 = to_matrix(PauliString(2, "ZI"))
    assert float(np.real(s.amplitudes.conj() @ z0 @ s.amplitudes)) == pytest.approx(-1.0)
    z1 = to_matrix(PauliString(2, "IZ"))
    assert float(np.real(s.amplitudes.conj() @ z1 @ s.amplitudes)) == pytest.approx(1.0)


def test_basis_state_validation():
    with pytest.raises(ValueError):
        basis_state("01x")
    with pytest.raises(ValueError):
        basis_state("")


def test_alternating_state_concentrates_low(benchmark_system):
    es = benchmark_system
    big = np.where(es.overlaps > 0.01)[0]
    assert len(big) <= 8
    assert np.all(big < 100)  # all appreciable weight in the low part of 256
    assert es.overlaps[big].sum() > 0.9


def test_random_hamiltonian_determinism():
    a = random_pauli_hamiltonian(3, 5, seed=9)
    b = random_pauli_hamiltonian(3, 5, seed=9)
    assert [(c, str(p)) for c, p in a.terms] == [(c, str(p)) for c, p in b.terms]
    c = random_pauli_hamiltonian(3, 5, seed=10)
    assert [(x, str(p)) for x, p in a.terms] != [(x, str(p)) for x, p in c.terms]


def test_random_hamiltonian_single_term():
    h = random_pauli_hamiltonian(2, 1, seed=0)
    assert len(h) == 1
    assert h.one_norm == h.terms[0][0]


def test_random_hamiltonian_real_spectrum():
    for seed in (1, 2, 3):
        h = random_pauli_hamiltonian(4, 7, seed=seed)
        evals = np.linalg.eigvals(h.to_matrix())
        assert np.max(np.abs(evals.imag)) < 1e-10


def test_random_hamiltonian_distinct_terms_and_bounds():
    h = random_pauli_hamiltonian(2, 10, seed=4)
    letters = [p.letters for _, p in h.terms]
    assert len(set(letters)) == 10
    assert all("I" * 2 != w for w in letters)
    assert all(0.0 < c <= 1.0 for c, _ in h.terms)
    with pytest.raises(ValueError):
        random_pauli_hamiltonian(2, 16, seed=0)
    with pytest.raises(ValueError):
        random_pauli_hamiltonian(2, 0, seed=0)


def test_pauli_file_loading(tmp_path):
    path = tmp_path / "ham.txt"
    path.write_text("1.5 XZ\n-0.5 ZI\n")
    h = load_pauli_file(path)
    assert h.n == 2 and len(h) == 2
    assert h.one_norm == pytest.approx(2.0)

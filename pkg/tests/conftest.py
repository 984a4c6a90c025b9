import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from qcool import CoolingFunction, basis_state, eigendecompose, heisenberg, random_pauli_hamiltonian


@pytest.fixture(scope="session")
def benchmark_system():
    """8-site anisotropic chain with the alternating initial state."""
    hamiltonian = heisenberg(8, J=1.0, zz_anisotropy=2.0, h=1.0, periodic=True)
    return eigendecompose(hamiltonian, basis_state("01010101"))


@pytest.fixture(scope="session")
def gaussian():
    return CoolingFunction("gaussian")


@pytest.fixture(scope="session")
def small_system():
    """3-qubit random instance, frozen seed: dominant overlap 0.746 on the
    eigenstate at index 2 with gap 0.657, all eigenvalues distinct."""
    hamiltonian = random_pauli_hamiltonian(3, 6, seed=6)
    return eigendecompose(hamiltonian, basis_state("010"))


@pytest.fixture(scope="session")
def second_system():
    """Another frozen 3-qubit instance with spread overlaps."""
    hamiltonian = random_pauli_hamiltonian(3, 6, seed=60)
    return eigendecompose(hamiltonian, basis_state("010"))

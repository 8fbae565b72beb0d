import numpy as np
import pytest

from superzeno.qcore import SIGMA_X, Hamiltonian, SubspaceSplit, random_hamiltonian

ACCEPTANCE = []


@pytest.fixture
def sigma_x():
    return Hamiltonian.from_matrix(SIGMA_X)


@pytest.fixture
def qubit_split():
    return SubspaceSplit.standard(2, 1)


@pytest.fixture
def generic():
    """A generic 4-level Hamiltonian with a two-dimensional protected subspace."""
    return random_hamiltonian(4, 3, 1.0), SubspaceSplit.standard(4, 2)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE:
        terminalreporter.write_line(line)

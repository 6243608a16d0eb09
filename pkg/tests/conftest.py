import pytest

from qnm import clifford_prime, pauli_ensemble


@pytest.fixture(scope="session")
def clifford2():
    return clifford_prime(2)


@pytest.fixture(scope="session")
def clifford3():
    return clifford_prime(3)


@pytest.fixture(scope="session")
def pauli21():
    return pauli_ensemble(2, 1)


@pytest.fixture(scope="session")
def pauli31():
    return pauli_ensemble(3, 1)

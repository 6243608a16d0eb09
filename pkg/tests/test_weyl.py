import numpy as np
import pytest

from qnm import (
    certify_design,
    num_rank,
    one_design_distance,
    pauli_ensemble,
    weyl,
    weyl_commutation_phase,
)
from qnm.design import ensemble_choi
from qnm.weyl import is_prime, weyl_labels


def test_weyl_qubit_shift():
    assert np.allclose(weyl(2, 1, 0), [[0, 1], [1, 0]])


def test_weyl_qubit_phase():
    assert np.allclose(weyl(2, 0, 1), [[1, 0], [0, -1]])


def test_weyl_qubit_product_convention():
    # X^a Z^b ordering: W(1,1) = X Z
    assert np.allclose(weyl(2, 1, 1), [[0, -1], [1, 0]])


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_weyl_unitary(d):
    for a, b in weyl_labels(d):
        w = weyl(d, a, b)
        assert np.max(np.abs(w.conj().T @ w - np.eye(d))) <= 1e-12


def test_commutation_phase_qubit_anticommute():
    assert abs(weyl_commutation_phase(2, 1, 0, 0, 1) - (-1)) <= 1e-14


def test_commutation_phase_qutrit_defining_relation():
    # Z X = omega X Z
    omega = np.exp(2j * np.pi / 3)
    assert abs(weyl_commutation_phase(3, 0, 1, 1, 0) - omega) <= 1e-14


def test_commutation_phase_self():
    for d in (2, 3, 5):
        assert abs(weyl_commutation_phase(d, 1, 1, 1, 1) - 1) <= 1e-14


@pytest.mark.parametrize("d", [2, 3, 5])
def test_commutation_phase_matches_matrices(d):
    for a, b in weyl_labels(d):
        for a2, b2 in weyl_labels(d):
            lhs = weyl(d, a, b) @ weyl(d, a2, b2)
            rhs = weyl_commutation_phase(d, a, b, a2, b2) * weyl(d, a2, b2) @ weyl(d, a, b)
            assert np.max(np.abs(lhs - rhs)) <= 1e-12


@pytest.mark.parametrize("d", [2, 3, 5])
def test_group_law_up_to_phase(d):
    rng = np.random.Generator(np.random.Philox(17))
    for _ in range(12):
        a, b, a2, b2 = rng.integers(0, d, size=4)
        prod = weyl(d, a, b) @ weyl(d, a2, b2)
        target = weyl(d, (a + a2) % d, (b + b2) % d)
        phase = np.trace(target.conj().T @ prod) / d
        assert abs(abs(phase) - 1) <= 1e-12
        assert np.max(np.abs(prod - phase * target)) <= 1e-12
        # swapping the factors changes the extracted phase by the commutation phase
        prod_swapped = weyl(d, a2, b2) @ weyl(d, a, b)
        phase_swapped = np.trace(target.conj().T @ prod_swapped) / d
        zeta = weyl_commutation_phase(d, a, b, a2, b2)
        assert abs(phase / phase_swapped - zeta) <= 1e-12


def test_pauli_ensemble_qubit():
    e = pauli_ensemble(2, 1)
    assert e.size == 4 and e.d == 2
    assert np.allclose(e.weights, 0.25)
    # contains 1, X, Z, XZ in key order
    assert np.allclose(e.unitaries[0], np.eye(2))
    assert np.allclose(e.unitaries[1], weyl(2, 1, 0))
    assert np.allclose(e.unitaries[2], weyl(2, 0, 1))
    assert np.allclose(e.unitaries[3], weyl(2, 1, 1))


def test_pauli_ensemble_qutrit_count():
    e = pauli_ensemble(3, 1)
    assert e.size == 9 and e.d == 3
    assert np.allclose(e.weights, 1 / 9)


def test_pauli_ensemble_two_qudits():
    e = pauli_ensemble(2, 2)
    assert e.size == 16 and e.d == 4


def test_pauli_ensemble_rejects_composite():
    with pytest.raises(ValueError):
        pauli_ensemble(4, 1)
    with pytest.raises(ValueError):
        pauli_ensemble(2, 0)


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_pauli_ensemble_is_perfect_one_design(p, n):
    assert one_design_distance(pauli_ensemble(p, n)) <= 1e-12


@pytest.mark.parametrize("p,n", [(2, 1), (3, 1), (2, 2)])
def test_pauli_ensemble_is_not_a_two_design(p, n):
    e = pauli_ensemble(p, n)
    report = certify_design(e)
    assert report.two_design_trace_dist > 0.1
    d = p**n
    assert num_rank(ensemble_choi(e), 1e-10) == d * d
    assert d * d < (d * d - 1) ** 2 + 1


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mtc_forge.algebra_core import (
    Tolerance,
    is_hermitian_pd,
    is_unitary,
    parallel_map,
    worst_of,
)
from mtc_forge.config import Precision
from mtc_forge.errors import DimensionError, DomainError


def test_tolerance_rule():
    tol = Tolerance(1e-9, 1e-9)
    assert tol.close(1.0, 1.0 + 1e-9)
    assert not tol.close(1.0, 1.0 + 1e-8)
    assert tol.close(1e6, 1e6 + 1e-4)  # relative part dominates
    with pytest.raises(DomainError):
        Tolerance(-1.0, 0.0)


@pytest.mark.parametrize("M", [
    np.eye(3),
    np.array([[0, 1], [1, 0]]),
    np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    np.diag(np.exp(1j * np.array([0.3, 1.2]))),
])
def test_unitary_matrices(M):
    ok, res = is_unitary(M)
    assert ok
    assert res < 1e-12
    ok_adj, _ = is_unitary(np.conj(M).T)
    assert ok_adj


def test_non_unitary_reports_residual():
    ok, res = is_unitary(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not ok
    assert_allclose(res, 1.0)
    with pytest.raises(DimensionError):
        is_unitary(np.ones((2, 3)))


def test_hermitian_pd():
    verdict = is_hermitian_pd(np.array([[2.0, 1.0], [1.0, 2.0]]))
    assert verdict.hermitian and verdict.positive_definite
    assert_allclose(verdict.min_eigenvalue, 1.0)
    assert verdict.cholesky_agrees

    singular = is_hermitian_pd(np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert singular.hermitian and not singular.positive_definite

    skew = is_hermitian_pd(np.array([[1.0, 2.0], [0.0, 1.0]]))
    assert not skew.hermitian and not skew.positive_definite

    with pytest.raises(DimensionError):
        is_hermitian_pd(np.ones((3, 2)))


def test_pd_extended_precision_crosscheck():
    A = np.array([[4.0, 1j], [-1j, 3.0]])
    verdict = is_hermitian_pd(A, precision=Precision.EXTENDED)
    assert verdict.positive_definite and verdict.cholesky_agrees


def test_pd_closed_under_sums_and_permutations(np_random):
    X = np_random.normal(size=(4, 4)) + 1j * np_random.normal(size=(4, 4))
    A = X @ X.conj().T + np.eye(4)
    B = np.diag([1.0, 2.0, 3.0, 4.0])
    assert is_hermitian_pd(A + B).positive_definite
    P = np.eye(4)[[2, 0, 3, 1]]
    assert_allclose(is_hermitian_pd(P @ A @ P.T).min_eigenvalue, is_hermitian_pd(A).min_eigenvalue)


def test_worst_of_is_deterministic():
    results = [(0.5, (2, 0)), (1.0, (3, 1)), (1.0, (1, 4)), (float("nan"), (9, 9))]
    assert worst_of(results) == (float("inf"), (9, 9))
    assert worst_of(results[:3]) == (1.0, (1, 4))
    assert worst_of([]) == (0.0, None)


def test_parallel_map_keeps_order():
    items = list(range(50))
    assert parallel_map(lambda x: x * x, items, jobs=8) == [x * x for x in items]

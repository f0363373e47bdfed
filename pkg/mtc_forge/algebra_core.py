"""
Numeric substrate for mtc-forge.

Complex scalars and dense matrices are plain numpy objects; this module adds
the tolerance rule and the structural tests (unitarity, Hermiticity, positive
definiteness) every verifier is built on.
"""

import logging
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, TypeVar

import mpmath
import numpy as np
import scipy.linalg

from .config import (
    CHOLESKY_CROSSCHECK_MAX_DIM,
    DEFAULT_ABS_EPS,
    DEFAULT_REL_EPS,
    EXTENDED_PRECISION_DPS,
    Precision,
)
from .errors import DimensionError, DomainError, NumericError

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Tolerance:
    """Mixed absolute/relative tolerance: |x - y| <= abs_eps + rel_eps * max(|x|, |y|)."""
    abs_eps: float = DEFAULT_ABS_EPS
    rel_eps: float = DEFAULT_REL_EPS

    def __post_init__(self):
        if not (self.abs_eps >= 0 and self.rel_eps >= 0):
            raise DomainError(f"tolerances must be nonnegative, got {self.abs_eps}, {self.rel_eps}")

    def threshold(self, scale: float = 1.0) -> float:
        """Allowed residual for quantities of magnitude `scale`."""
        return self.abs_eps + self.rel_eps * abs(scale)

    def close(self, x, y) -> bool:
        return abs(x - y) <= self.threshold(max(abs(x), abs(y)))

    def to_dict(self) -> dict:
        return {"abs_eps": self.abs_eps, "rel_eps": self.rel_eps}


@dataclass(frozen=True)
class PDVerdict:
    """Outcome of is_hermitian_pd."""
    hermitian: bool
    positive_definite: bool
    min_eigenvalue: float
    hermitian_residual: float
    cholesky_agrees: bool = True


def as_matrix(M) -> np.ndarray:
    """Coerce to a complex 2-D array."""
    arr = np.asarray(M, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got array of shape {arr.shape}")
    return arr


def _require_square(M: np.ndarray) -> None:
    if M.shape[0] != M.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {M.shape}")


def max_abs(x) -> float:
    """Max-norm of an array (0 for empty input)."""
    arr = np.asarray(x)
    if arr.size == 0:
        return 0.0
    return float(np.max(np.abs(arr)))


def residual(a, b) -> float:
    """Max-norm of a - b."""
    return max_abs(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))


def is_unitary(M, tol: Tolerance = Tolerance()) -> Tuple[bool, float]:
    """
    Test M^dagger M = I.

    Args:
        M: Square matrix
        tol: Tolerance (residual compared against tol.threshold(1))

    Returns:
        tuple: (is_unitary, max_residual)
    """
    M = as_matrix(M)
    _require_square(M)
    if M.shape[0] == 0:
        return True, 0.0
    res = residual(M.conj().T @ M, np.eye(M.shape[0]))
    return res <= tol.threshold(1.0), res


def is_hermitian_pd(M, tol: Tolerance = Tolerance(),
                    precision: Precision = Precision.DOUBLE) -> PDVerdict:
    """
    Hermiticity and positive-definiteness certificate.

    The symmetric eigendecomposition is the primary certificate; a Cholesky
    factorization of H - abs_eps*I cross-checks it for small matrices (mpmath
    when extended precision is requested).

    Args:
        M: Square matrix
        tol: Tolerance
        precision: Precision of the cross-check

    Returns:
        PDVerdict
    """
    M = as_matrix(M)
    _require_square(M)
    n = M.shape[0]
    if n == 0:
        return PDVerdict(True, True, float("inf"), 0.0)

    herm_res = residual(M, M.conj().T)
    hermitian = herm_res <= tol.threshold(max_abs(M))
    H = 0.5 * (M + M.conj().T)

    try:
        eigenvalues = scipy.linalg.eigh(H, eigvals_only=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        match = re.search(r"\d+", str(exc))
        raise NumericError(f"eigensolver failed: {exc}",
                           iterations=int(match.group()) if match else None)

    min_eig = float(eigenvalues[0])
    eig_pd = min_eig > tol.abs_eps

    agrees = True
    if n <= CHOLESKY_CROSSCHECK_MAX_DIM:
        shifted = H - tol.abs_eps * np.eye(n)
        chol_pd = _cholesky_succeeds(shifted, precision)
        agrees = chol_pd == eig_pd
        if not agrees:
            logger.warning("Cholesky and eigenvalue certificates disagree (min eigenvalue %.3e)", min_eig)

    return PDVerdict(
        hermitian=hermitian,
        positive_definite=bool(hermitian and eig_pd and agrees),
        min_eigenvalue=min_eig,
        hermitian_residual=herm_res,
        cholesky_agrees=agrees,
    )


def _cholesky_succeeds(H: np.ndarray, precision: Precision) -> bool:
    if precision == Precision.EXTENDED:
        with mpmath.workdps(EXTENDED_PRECISION_DPS):
            try:
                mpmath.cholesky(mpmath.matrix(H.tolist()))
                return True
            except (ValueError, ZeroDivisionError):
                return False
    try:
        scipy.linalg.cholesky(H, lower=True)
        return True
    except np.linalg.LinAlgError:
        return False


# ============================================================================
# Sweeps
# ============================================================================

def parallel_map(fn: Callable[[T], R], items: Sequence[T], jobs: int = 1) -> List[R]:
    """Map fn over items with up to `jobs` threads; results keep input order."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def worst_of(results: Iterable[Tuple[float, Index]]) -> Tuple[float, Optional[Index]]:
    """
    Deterministic max-residual reduction.

    Args:
        results: (residual, tuple) pairs

    Returns:
        tuple: (max residual, lexicographically smallest tuple attaining it)
    """
    best_res = 0.0
    best_tuple = None
    for res, tup in results:
        if np.isnan(res):
            res = float("inf")
        if best_tuple is None or res > best_res or (res == best_res and tup < best_tuple):
            best_res, best_tuple = res, tup
    return best_res, best_tuple

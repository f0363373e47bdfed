"""
Skeletal braided-category data.

F-blocks follow the convention

    X^{ae}_d (1 x X^{bc}_e) = sum_f F^{abc}_d[e, f] X^{fc}_d (X^{ab}_f x 1)

with rows e in b x c and columns f in a x b, both ascending; R-symbols satisfy
X^{ab}_c o c_{b,a} = R^{ab}_c X^{ba}_c.  Only multiplicity-free data is
supported by the verifiers.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra_core import Index, Tolerance, as_matrix, is_unitary, parallel_map, worst_of
from .errors import CatalogValidationError, DataError, DomainError, UnsupportedDataError
from .fusion_ring import FusionRing
from .report import Entry, Section

logger = logging.getLogger(__name__)

Block = Tuple[List[int], List[int], np.ndarray]


@dataclass(frozen=True)
class HomBasis:
    """Index set of Hom(i x j, k); size is N^k_{ij}."""
    i: int
    j: int
    k: int
    size: int


class _FBlock:
    """One F-block with row/column position lookups and a lazy inverse."""

    def __init__(self, rows: List[int], cols: List[int], matrix: np.ndarray):
        self.rows = rows
        self.cols = cols
        self.matrix = matrix
        self.row_pos = {e: n for n, e in enumerate(rows)}
        self.col_pos = {f: n for n, f in enumerate(cols)}
        self._inverse: Optional[np.ndarray] = None

    def inverse(self, key) -> np.ndarray:
        if self._inverse is None:
            if self.matrix.shape[0] == 0:
                self._inverse = self.matrix
            else:
                try:
                    self._inverse = np.linalg.inv(self.matrix)
                except np.linalg.LinAlgError:
                    raise DataError(f"F-block {key} is singular")
                if not np.all(np.isfinite(self._inverse)):
                    raise DataError(f"F-block {key} is singular")
        return self._inverse


class SkeletalData:
    """F, R and evaluation-map norms over a fusion ring."""

    def __init__(self, ring: FusionRing, F: Dict[Tuple[int, int, int, int], object],
                 R: Dict[Tuple[int, int, int], complex], ev_norms: Optional[Sequence[complex]] = None):
        """
        Args:
            ring: Fusion ring
            F: (a, b, c, d) -> square matrix over admissible internal channels;
               blocks with a unit leg may be omitted (identity)
            R: (a, b, c) -> nonzero R^{ab}_c for every admissible triple
            ev_norms: mu_i per label (default all ones)

        Raises:
            CatalogValidationError: missing or misshapen blocks, zero R-symbols
        """
        self.ring = ring
        n = ring.rank
        self.ev_norms = np.ones(n, dtype=complex) if ev_norms is None else np.asarray(ev_norms, dtype=complex)
        if self.ev_norms.shape != (n,):
            raise CatalogValidationError("ev_norms", f"expected {n} norms, got {self.ev_norms.shape}")
        if np.any(self.ev_norms == 0):
            raise CatalogValidationError("ev_norms", "evaluation norms must be nonzero")

        self.R: Dict[Tuple[int, int, int], complex] = {}
        for key, value in R.items():
            key = tuple(int(x) for x in key)
            if not ring.admissible(*key):
                raise CatalogValidationError("r labels", f"R-symbol {key} is not an admissible channel")
            self.R[key] = complex(value)
        for key in ring.admissible_triples():
            if key not in self.R:
                raise CatalogValidationError("r missing", f"R-symbol {key} is missing")
            if self.R[key] == 0:
                raise CatalogValidationError("r nonzero", f"R-symbol {key} vanishes")

        self._blocks: Dict[Tuple[int, int, int, int], _FBlock] = {}
        self.multiplicity_free = ring.is_multiplicity_free()
        given = {tuple(int(x) for x in key): as_matrix(m) for key, m in F.items()}
        for key, matrix in given.items():
            if len(key) != 4 or any(not 0 <= x < n for x in key):
                raise CatalogValidationError("f labels", f"F-block key {key} is not a label quadruple")
        if not self.multiplicity_free:
            # Kept only for storage; every verifier rejects this data.
            self._raw_F = given
            return

        for key in itertools.product(range(n), repeat=4):
            rows, cols = self.channels(*key)
            if not rows:
                if key in given and given[key].size:
                    raise CatalogValidationError("f labels", f"F-block {key} is not admissible")
                continue
            if key in given:
                matrix = given[key]
                if matrix.shape != (len(rows), len(cols)):
                    raise CatalogValidationError(
                        "f block shape", f"F-block {key} has shape {matrix.shape}, expected {(len(rows), len(cols))}")
            elif 0 in key[:3]:
                matrix = np.eye(len(rows), dtype=complex)
            else:
                raise CatalogValidationError("f block missing", f"F-block {key} is missing")
            self._blocks[key] = _FBlock(rows, cols, matrix)
        self._raw_F = {key: blk.matrix for key, blk in self._blocks.items()}

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    def channels(self, a: int, b: int, c: int, d: int) -> Tuple[List[int], List[int]]:
        """Row channels e in b x c (d in a x e) and column channels f in a x b (d in f x c)."""
        ring = self.ring
        rows = [e for e in ring.outcomes(b, c) if ring.N[a, e, d]]
        cols = [f for f in ring.outcomes(a, b) if ring.N[f, c, d]]
        return rows, cols

    def _block(self, a: int, b: int, c: int, d: int) -> Optional[_FBlock]:
        self.require_multiplicity_free()
        return self._blocks.get((a, b, c, d))

    def f_block(self, a: int, b: int, c: int, d: int) -> Block:
        """(rows, cols, matrix) of F^{abc}_d; empty when no tree is admissible."""
        for x in (a, b, c, d):
            self.ring.check_label(x)
        blk = self._block(a, b, c, d)
        if blk is None:
            return [], [], np.zeros((0, 0), dtype=complex)
        return list(blk.rows), list(blk.cols), blk.matrix.copy()

    def f_inverse_block(self, a: int, b: int, c: int, d: int) -> Block:
        """(cols, rows, inverse) of F^{abc}_d: rows indexed by f, columns by e."""
        blk = self._block(a, b, c, d)
        if blk is None:
            return [], [], np.zeros((0, 0), dtype=complex)
        return list(blk.cols), list(blk.rows), blk.inverse((a, b, c, d)).copy()

    def f(self, a: int, b: int, c: int, d: int, e: int, f: int) -> complex:
        """F^{abc}_d[e, f]; zero for inadmissible channels."""
        blk = self._block(a, b, c, d)
        if blk is None or e not in blk.row_pos or f not in blk.col_pos:
            return 0j
        return complex(blk.matrix[blk.row_pos[e], blk.col_pos[f]])

    def finv(self, a: int, b: int, c: int, d: int, f: int, e: int) -> complex:
        """(F^{-1})^{abc}_d[f, e]."""
        blk = self._block(a, b, c, d)
        if blk is None or e not in blk.row_pos or f not in blk.col_pos:
            return 0j
        return complex(blk.inverse((a, b, c, d))[blk.col_pos[f], blk.row_pos[e]])

    def r(self, a: int, b: int, c: int) -> complex:
        """R^{ab}_c; zero for inadmissible channels."""
        return self.R.get((a, b, c), 0j)

    def mu(self, i: int) -> complex:
        return complex(self.ev_norms[self.ring.check_label(i)])

    def dual(self, i: int) -> int:
        return self.ring.dual[i]

    @property
    def F(self) -> Dict[Tuple[int, int, int, int], np.ndarray]:
        return dict(self._raw_F)

    def block_keys(self) -> List[Tuple[int, int, int, int]]:
        return sorted(self._blocks)

    def hom_basis(self, i: int, j: int, k: int) -> HomBasis:
        return HomBasis(i, j, k, self.ring.multiplicity(i, j, k))

    def require_multiplicity_free(self) -> None:
        if not self.multiplicity_free:
            raise UnsupportedDataError("F/R verification supports multiplicity-free fusion only")


# ============================================================================
# Coherence: pentagon, hexagon, unitarity of F
# ============================================================================

def _pentagon_for(data: SkeletalData, a: int) -> List[Tuple[float, float, Index]]:
    ring = data.ring
    n = ring.rank
    out = []
    for b, c, d, e in itertools.product(range(n), repeat=4):
        for f in ring.outcomes(a, b):
            for g in ring.outcomes(f, c):
                if not ring.N[g, d, e]:
                    continue
                for j in ring.outcomes(c, d):
                    if not ring.N[f, j, e]:
                        continue
                    for i in ring.outcomes(b, j):
                        if not ring.N[a, i, e]:
                            continue
                        lhs = data.f(f, c, d, e, j, g) * data.f(a, b, j, e, i, f)
                        rhs = sum(
                            data.f(a, b, c, g, h, f) * data.f(a, h, d, e, i, g) * data.f(b, c, d, i, j, h)
                            for h in ring.outcomes(b, c)
                        )
                        scale = max(abs(lhs), abs(rhs))
                        out.append((abs(lhs - rhs), scale, (a, b, c, d, e, f, g, j, i)))
    return out


def verify_pentagon(data: SkeletalData, tol: Tolerance = Tolerance(), jobs: int = 1) -> Section:
    """
    Pentagon equation over every admissible nonet (a,b,c,d,e,f,g,j,i):

        F(f,c,d,e;j,g) F(a,b,j,e;i,f) = sum_h F(a,b,c,g;h,f) F(a,h,d,e;i,g) F(b,c,d,i;j,h)

    Returns:
        Section "pentagon" with a single "pentagon" entry
    """
    data.require_multiplicity_free()
    chunks = parallel_map(lambda a: _pentagon_for(data, a), list(range(data.ring.rank)), jobs)
    results = [item for chunk in chunks for item in chunk]
    entry = _sweep_entry("pentagon", results, tol)
    logger.info("pentagon: %d tuples, max residual %.3e", len(results), entry.residual)
    return Section.from_entries("pentagon", [entry])


def _hexagon_for(data: SkeletalData, a: int, inverse: bool) -> List[Tuple[float, float, Index]]:
    ring = data.ring
    n = ring.rank
    if inverse:
        def r(x, y, z):
            return 1.0 / data.r(y, x, z)
    else:
        r = data.r
    out = []
    for b, c, d in itertools.product(range(n), repeat=3):
        for e in ring.outcomes(a, c):
            if not ring.N[e, b, d]:
                continue
            for g in ring.outcomes(c, b):
                if not ring.N[a, g, d]:
                    continue
                lhs = r(a, c, e) * data.f(a, c, b, d, g, e) * r(b, c, g)
                rhs = sum(
                    data.f(c, a, b, d, f, e) * r(f, c, d) * data.f(a, b, c, d, g, f)
                    for f in ring.outcomes(a, b) if ring.N[f, c, d]
                )
                out.append((abs(lhs - rhs), max(abs(lhs), abs(rhs)), (a, c, b, d, g, e)))
    return out


def verify_hexagon(data: SkeletalData, tol: Tolerance = Tolerance(), jobs: int = 1) -> Section:
    """
    Hexagon equations on sextets (a,c,b,d,g,e):

        R(a,c,e) F(a,c,b,d;g,e) R(b,c,g) = sum_f F(c,a,b,d;f,e) R(f,c,d) F(a,b,c,d;g,f)

    and the same with every R(x,y,z) replaced by 1/R(y,x,z).  Both sides pick up
    the same factor u(a,g;d) u(b,c;g) / (u(c,a;e) u(e,b;d)) under gauge_transform.
    """
    data.require_multiplicity_free()
    entries = []
    for name, inverse in (("hexagon_plus", False), ("hexagon_minus", True)):
        chunks = parallel_map(lambda a: _hexagon_for(data, a, inverse), list(range(data.ring.rank)), jobs)
        results = [item for chunk in chunks for item in chunk]
        entries.append(_sweep_entry(name, results, tol))
    return Section.from_entries("hexagon", entries)


def verify_f_unitarity(data: SkeletalData, tol: Tolerance = Tolerance()) -> Section:
    """Every F-block is a unitary matrix."""
    data.require_multiplicity_free()
    results = []
    for key in data.block_keys():
        _, _, matrix = data.f_block(*key)
        _, res = is_unitary(matrix, tol)
        results.append((res, 1.0, key))
    return Section.from_entries("fusion", [_sweep_entry("f_unitarity", results, tol)])


def _sweep_entry(name: str, results: List[Tuple[float, float, Index]], tol: Tolerance) -> Entry:
    """Fold (residual, scale, tuple) triples into one entry, failing on any tuple out of tolerance."""
    failing = [(res, tup) for res, scale, tup in results if not res <= tol.threshold(scale)]
    worst, worst_tuple = worst_of((res, tup) for res, _, tup in results)
    return Entry(name, not failing, worst, worst_tuple,
                 detail={"checked": len(results), "failing": len(failing)})


# ============================================================================
# Gauge
# ============================================================================

def gauge_transform(data: SkeletalData, u: Dict[Tuple[int, int, int], complex]) -> SkeletalData:
    """
    Apply a vertex rescaling X^{ab}_c -> u(a,b;c) X^{ab}_c.

        F'[e,f] = F[e,f] u(b,c;e) u(a,e;d) / (u(a,b;f) u(f,c;d))
        R'      = R u(a,b;c) / u(b,a;c)

    Missing triples default to 1.

    Raises:
        DomainError: a gauge scalar is zero
    """
    data.require_multiplicity_free()
    for key, value in u.items():
        if value == 0:
            raise DomainError(f"gauge scalar for {key} is zero")

    def g(a, b, c):
        return complex(u.get((a, b, c), 1.0))

    F = {}
    for (a, b, c, d) in data.block_keys():
        rows, cols, matrix = data.f_block(a, b, c, d)
        scaled = matrix.copy()
        for x, e in enumerate(rows):
            for y, f in enumerate(cols):
                scaled[x, y] *= g(b, c, e) * g(a, e, d) / (g(a, b, f) * g(f, c, d))
        F[(a, b, c, d)] = scaled
    R = {(a, b, c): value * g(a, b, c) / g(b, a, c) for (a, b, c), value in data.R.items()}
    return SkeletalData(data.ring, F, R, data.ev_norms.copy())


def random_unit_gauge(ring: FusionRing, seed: int = 0) -> Dict[Tuple[int, int, int], complex]:
    """Random phases on every admissible vertex; couplings with a unit leg stay 1."""
    rng = np.random.default_rng(seed)
    u = {}
    for (a, b, c) in ring.admissible_triples():
        if a == 0 or b == 0:
            u[(a, b, c)] = 1.0 + 0j
        else:
            u[(a, b, c)] = complex(np.exp(2j * np.pi * rng.random()))
    return u


# ============================================================================
# Rigidity data read off F and R
# ============================================================================

def gram(data: SkeletalData, a: int, b: int, c: int) -> float:
    """
    Dagger Gram of the vertex X^{ab}_c, G = 1/|F^{a b bbar}_a[0, c]| = sqrt(d_a d_b / d_c).

    Raises:
        DomainError: (a, b, c) is not admissible
        DataError: the bending entry vanishes
    """
    if not data.ring.admissible(a, b, c):
        raise DomainError(f"({a}, {b}, {c}) is not an admissible vertex")
    value = abs(data.f(a, b, data.dual(b), a, 0, c))
    if value == 0:
        raise DataError(f"vanishing bending entry for ({a}, {b}, {c})")
    return 1.0 / value


def data_quantum_dims(data: SkeletalData) -> np.ndarray:
    """d_i = 1/|F^{i ibar i}_i[0, 0]|."""
    dims = []
    for i in range(data.ring.rank):
        value = abs(data.f(i, data.dual(i), i, i, 0, 0))
        if value == 0:
            raise DataError(f"vanishing F^{{i ibar i}}_i[0,0] for label {i}")
        dims.append(1.0 / value)
    return np.array(dims)


def frobenius_schur(data: SkeletalData, i: int) -> complex:
    """kappa_i = d_i F^{i ibar i}_i[0, 0]."""
    value = data.f(i, data.dual(i), i, i, 0, 0)
    return value / abs(value)


def data_twist(data: SkeletalData, i: int) -> complex:
    """theta_i = sum_c (d_c / d_i) R^{ii}_c."""
    d = data_quantum_dims(data)
    return complex(sum(d[c] / d[i] * data.r(i, i, c) for c in data.ring.outcomes(i, i)))


# ============================================================================
# Dagger map
# ============================================================================

def dagger_scalar(data: SkeletalData, i: int, j: int, k: int, orthonormal: bool = False) -> complex:
    """
    Coefficient D with (X^{ij}_k)* = D X^{ibar k}_j.

    D = conj(F^{ibar i j}_j[k, 0]) G^{ibar i}_0 / G^{ibar k}_j, of unit modulus for
    unitary data; the orthonormal variant multiplies by sqrt(G^{ibar k}_j / G^{ij}_k).
    """
    ib = data.dual(i)
    D = np.conj(data.f(ib, i, j, j, k, 0)) * gram(data, ib, i, 0) / gram(data, ib, k, j)
    if orthonormal:
        D *= np.sqrt(gram(data, ib, k, j) / gram(data, i, j, k))
    return complex(D)


def dagger_map(data: SkeletalData, i: int, j: int, k: int, orthonormal: bool = False) -> np.ndarray:
    """
    Matrix of alpha -> alpha* from Hom(i x j, k) to Hom(ibar x k, j).

    Returns:
        1x1 matrix for admissible triples, 0x0 otherwise
    """
    data.require_multiplicity_free()
    for x in (i, j, k):
        data.ring.check_label(x)
    if not data.ring.admissible(i, j, k):
        return np.zeros((0, 0), dtype=complex)
    return np.array([[dagger_scalar(data, i, j, k, orthonormal)]], dtype=complex)


def dagger_roundtrip(data: SkeletalData, i: int, j: int, k: int) -> complex:
    """Coefficient c with alpha** = c alpha for alpha = X^{ij}_k (the map is antilinear)."""
    data.require_multiplicity_free()
    if not data.ring.admissible(i, j, k):
        raise DomainError(f"({i}, {j}, {k}) is not an admissible vertex")
    first = dagger_scalar(data, i, j, k)
    second = dagger_scalar(data, data.dual(i), k, j)
    return complex(np.conj(first) * second)

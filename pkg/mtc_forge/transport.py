"""
Transport matrices and the positivity, rigidity and reflection checks built on them.

For an admissible triple (i, j, k) the transport matrix is the coefficient of
the vacuum tree mu_i (ev_{ibar,i} x id_j) in the basis of dagger-paired
couplings through channel k.  In the isotopy-normalized basis every route
gives Lambda = mu_i sqrt(d_k / (d_i d_j)); the routes only agree when the
data is coherent.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.linalg

from .algebra_core import Index, Tolerance, is_hermitian_pd, max_abs, parallel_map, residual, worst_of
from .category_data import SkeletalData, dagger_scalar, data_twist, frobenius_schur, gram
from .config import Precision
from .errors import DomainError
from .modular_data import ModularData, quantum_dims
from .report import Entry, Section

logger = logging.getLogger(__name__)

ROUTES = ("f_move", "gram", "braid")


@dataclass
class TransportMatrix:
    """Lambda over Hom(i x j, k), computed along one route."""
    i: int
    j: int
    k: int
    Lambda: np.ndarray
    route: str
    scale: complex = 1.0

    @property
    def value(self) -> complex:
        """The single entry of a multiplicity-free transport matrix."""
        return complex(self.Lambda[0, 0]) if self.Lambda.size else 0j


@dataclass
class PositivityCertificate:
    """Verdict that Lambda is a positive definite Hermitian form."""
    i: int
    j: int
    k: int
    min_eigenvalue: float
    hermitian_residual: float
    route_agreement_residual: float
    verdict: bool
    magnitude: float = 1.0  # max |Lambda|, the scale both residuals were judged at


@dataclass
class FullFieldGram:
    """Block-diagonal Gram matrix of the diagonal full-field pairing."""
    blocks: List[Tuple[Index, np.ndarray]] = field(default_factory=list)
    matrix: np.ndarray = field(default_factory=lambda: np.zeros((0, 0), dtype=complex))
    min_eigenvalue: float = float("inf")
    positive_definite: bool = True


def _empty(i: int, j: int, k: int, route: str, scale: complex) -> TransportMatrix:
    return TransportMatrix(i, j, k, np.zeros((0, 0), dtype=complex), route, scale)


def _check_triple(data: SkeletalData, i: int, j: int, k: int) -> bool:
    data.require_multiplicity_free()
    for x in (i, j, k):
        data.ring.check_label(x)
    return data.ring.admissible(i, j, k)


def transport_matrix(data: SkeletalData, i: int, j: int, k: int) -> TransportMatrix:
    """
    Lambda by the F-move: mu_i (F^{-1})^{ibar i j}_j[0, k] / D_k.

    Args:
        data: Skeletal data
        i, j, k: Triple; an inadmissible triple gives an empty matrix

    Returns:
        TransportMatrix with route "f_move"
    """
    admissible = _check_triple(data, i, j, k)
    mu = data.mu(i)
    if not admissible:
        return _empty(i, j, k, "f_move", mu)
    ib = data.dual(i)
    value = mu * data.finv(ib, i, j, j, 0, k) / dagger_scalar(data, i, j, k)
    return TransportMatrix(i, j, k, np.array([[value]], dtype=complex), "f_move", mu)


def transport_matrix_gram(data: SkeletalData, i: int, j: int, k: int) -> TransportMatrix:
    """Lambda as mu_i times the inverse dagger Gram of X^{ij}_k."""
    admissible = _check_triple(data, i, j, k)
    mu = data.mu(i)
    if not admissible:
        return _empty(i, j, k, "gram", mu)
    value = mu / gram(data, i, j, k)
    return TransportMatrix(i, j, k, np.array([[value]], dtype=complex), "gram", mu)


def transport_matrix_braided(data: SkeletalData, i: int, j: int, k: int) -> TransportMatrix:
    """
    Lambda with the j and i legs braided before the F-move:

        L = mu_i sum_f F^{j ibar i}_j[0, f] (R^{ibar j}_f)^{-1} (F^{-1})^{ibar j i}_j[f, k]
        Lambda = L / (D_k R^{ij}_k)
    """
    admissible = _check_triple(data, i, j, k)
    mu = data.mu(i)
    if not admissible:
        return _empty(i, j, k, "braid", mu)
    ring = data.ring
    ib = data.dual(i)
    total = 0j
    for f in ring.outcomes(j, ib):
        if not ring.N[f, i, j]:
            continue
        total += data.f(j, ib, i, j, 0, f) / data.r(ib, j, f) * data.finv(ib, j, i, j, f, k)
    value = mu * total / (dagger_scalar(data, i, j, k) * data.r(i, j, k))
    return TransportMatrix(i, j, k, np.array([[value]], dtype=complex), "braid", mu)


def verify_positivity(data: SkeletalData, i: int, j: int, tol: Tolerance = Tolerance(),
                      precision: Precision = Precision.DOUBLE) -> List[PositivityCertificate]:
    """
    Certify Lambda > 0 for every channel k of i x j.

    Route agreement is the largest entrywise difference of the gram and braid
    routes from the f_move route.

    Returns:
        One certificate per admissible k, ascending
    """
    certificates = []
    for k in data.ring.outcomes(i, j):
        fm = transport_matrix(data, i, j, k).Lambda
        agreement = max(residual(transport_matrix_gram(data, i, j, k).Lambda, fm),
                        residual(transport_matrix_braided(data, i, j, k).Lambda, fm))
        pd = is_hermitian_pd(fm, tol, precision)
        magnitude = max_abs(fm)
        verdict = (pd.positive_definite
                   and pd.hermitian_residual <= tol.threshold(magnitude)
                   and agreement <= tol.threshold(magnitude))
        certificates.append(PositivityCertificate(i, j, k, pd.min_eigenvalue, pd.hermitian_residual,
                                                  agreement, bool(verdict), magnitude))
    return certificates


def verify_transport(data: SkeletalData, tol: Tolerance = Tolerance(), jobs: int = 1,
                     precision: Precision = Precision.DOUBLE) -> Section:
    """Positivity certificates over every pair (i, j), folded into section "transport"."""
    n = data.ring.rank
    pairs = [(i, j) for i in range(n) for j in range(n)]
    chunks = parallel_map(lambda p: verify_positivity(data, p[0], p[1], tol, precision), pairs, jobs)
    certs = [c for chunk in chunks for c in chunk]

    lowest, lowest_tuple = float("inf"), None
    for c in certs:
        if c.min_eigenvalue < lowest:
            lowest, lowest_tuple = c.min_eigenvalue, (c.i, c.j, c.k)
    failing = [(c.i, c.j, c.k) for c in certs if not c.verdict]

    herm, herm_tuple = worst_of((c.hermitian_residual, (c.i, c.j, c.k)) for c in certs)
    agree, agree_tuple = worst_of((c.route_agreement_residual, (c.i, c.j, c.k)) for c in certs)
    entries = [
        Entry("positivity", not failing, None, failing[0] if failing else lowest_tuple,
              detail={"min_eigenvalue": lowest, "certificates": len(certs), "failing": len(failing)}),
        Entry("hermiticity", all(c.hermitian_residual <= tol.threshold(c.magnitude) for c in certs),
              herm, herm_tuple),
        Entry("route_agreement", all(c.route_agreement_residual <= tol.threshold(c.magnitude) for c in certs),
              agree, agree_tuple),
    ]
    if failing:
        logger.warning("transport: %d of %d certificates failed, first %s", len(failing), len(certs), failing[0])
    return Section.from_entries("transport", entries)


# ============================================================================
# Rigidity
# ============================================================================

def _rigidity_residuals(data: SkeletalData, i: int,
                        s_dims: Optional[np.ndarray]) -> Dict[str, Tuple[float, float]]:
    ib = data.dual(i)
    kappa = frobenius_schur(data, i)
    d_i = gram(data, i, ib, 0)
    d_ib = gram(data, ib, i, 0)
    out = {
        "zigzag_left": (abs(np.conj(kappa) * data.f(i, ib, i, i, 0, 0) * d_i - 1.0), 1.0),
        "zigzag_right": (abs(kappa * data.finv(i, ib, i, i, 0, 0) * d_ib - 1.0), 1.0),
        "dual_dims": (abs(d_ib - d_i), d_i),
    }
    lam = transport_matrix(data, ib, i, 0).value
    out["lambda_norm"] = (abs(data.mu(ib) / lam - d_i), d_i)
    if s_dims is not None:
        out["dims_match_s"] = (abs(s_dims[i] - d_i), d_i)
    return out


def verify_rigidity(data: SkeletalData, i: int, tol: Tolerance = Tolerance(),
                    md: Optional[ModularData] = None) -> Section:
    """
    Zig-zag identities and the quantum dimension d_i = ev o coev for one label.

    d_i is cross-checked against d_ibar, the vacuum transport mu_ibar / Lambda(ibar, i, 0)
    and, when modular data is given, the S-matrix ratio.
    """
    data.require_multiplicity_free()
    data.ring.check_label(i)
    s_dims = quantum_dims(md.S, tol) if md is not None else None
    entries = []
    for name, (res, scale) in _rigidity_residuals(data, i, s_dims).items():
        entries.append(Entry(name, res <= tol.threshold(scale), res, (i,)))
    entries.append(Entry("d_value", True, None, (i,), detail={"d": gram(data, i, data.dual(i), 0)}))
    return Section.from_entries("rigidity", entries)


def rigidity_section(data: SkeletalData, tol: Tolerance = Tolerance(),
                     md: Optional[ModularData] = None) -> Section:
    """verify_rigidity folded over every label."""
    data.require_multiplicity_free()
    s_dims = quantum_dims(md.S, tol) if md is not None else None
    per_name: Dict[str, List[Tuple[float, float, Index]]] = {}
    for i in range(data.ring.rank):
        for name, (res, scale) in _rigidity_residuals(data, i, s_dims).items():
            per_name.setdefault(name, []).append((res, scale, (i,)))
    entries = []
    for name, results in per_name.items():
        worst, worst_tuple = worst_of((res, tup) for res, _, tup in results)
        ok = all(res <= tol.threshold(scale) for res, scale, _ in results)
        entries.append(Entry(name, ok, worst, worst_tuple))
    dims = [gram(data, i, data.dual(i), 0) for i in range(data.ring.rank)]
    entries.append(Entry("d_value", True, None, None, detail={"d": dims}))
    return Section.from_entries("rigidity", entries)


# ============================================================================
# Twist compatibility
# ============================================================================

def verify_twist_compat(data: SkeletalData, md: ModularData, tol: Tolerance = Tolerance()) -> Section:
    """
    Twist identities relating theta (from modular data) to kappa and R.

    Raises:
        DomainError: the two label sets differ
    """
    data.require_multiplicity_free()
    if md.ring != data.ring:
        raise DomainError("modular data and skeletal data are over different fusion rings")
    n = data.ring.rank
    theta = np.asarray(md.theta, dtype=complex)
    dual = data.ring.dual
    threshold = tol.threshold(1.0)

    first, second, matches_t, from_data = [], [], [], []
    for i in range(n):
        ib = dual[i]
        kappa = frobenius_schur(data, i)
        r0 = data.r(ib, i, 0)
        first.append((abs(kappa - theta[i] * r0), (i,)))
        second.append((abs(np.conj(kappa) - np.conj(theta[ib]) * np.conj(r0)), (i,)))
        matches_t.append((abs(theta[i] - md.T[i, i] / md.T[0, 0]), (i,)))
        from_data.append((abs(theta[i] - data_twist(data, i)), (i,)))
    ribbon = [
        (abs(theta[k] / (theta[i] * theta[j]) - data.r(i, j, k) * data.r(j, i, k)), (i, j, k))
        for (i, j, k) in data.ring.admissible_triples()
    ]

    entries = []
    for name, results in (("twist_ev_right", first), ("twist_ev_left", second), ("ribbon", ribbon),
                          ("twist_matches_t", matches_t), ("data_twist", from_data)):
        worst, worst_tuple = worst_of(results)
        entries.append(Entry(name, worst <= threshold, worst, worst_tuple))
    return Section.from_entries("twist", entries)


# ============================================================================
# Full field algebra
# ============================================================================

def reflection_positivity_check(data: SkeletalData, tol: Tolerance = Tolerance()) -> Section:
    """
    Gram(C alpha) = (d_k / d_j) Gram(alpha) for the contragredient map
    C: Hom(i x j, k) -> Hom(kbar x i, jbar) on every admissible triple.
    """
    data.require_multiplicity_free()
    dual = data.ring.dual
    d = [gram(data, x, dual[x], 0) for x in range(data.ring.rank)]
    results = []
    for (i, j, k) in data.ring.admissible_triples():
        jb, kb = dual[j], dual[k]
        c = (np.conj(frobenius_schur(data, j)) * gram(data, j, jb, 0)
             * data.finv(i, j, jb, i, k, 0) * data.finv(kb, k, jb, jb, 0, i))
        lhs = abs(c) ** 2 * gram(data, kb, i, jb)
        rhs = d[k] / d[j] * gram(data, i, j, k)
        results.append((abs(lhs - rhs), max(abs(lhs), abs(rhs)), (i, j, k)))
    worst, worst_tuple = worst_of((res, tup) for res, _, tup in results)
    ok = all(res <= tol.threshold(scale) for res, scale, _ in results)
    return Section.from_entries("reflection", [
        Entry("contragredient_gram", ok, worst, worst_tuple, detail={"checked": len(results)})
    ])


def full_field_gram(data: SkeletalData, tol: Tolerance = Tolerance(),
                    precision: Precision = Precision.DOUBLE) -> FullFieldGram:
    """
    Gram matrix of the diagonal pairing on sum_i W_i x W_ibar.

    Each admissible (i, j, k) contributes d_k^{-1} Lambda(i,j,k) x conj(Lambda(ibar,jbar,kbar)).
    """
    data.require_multiplicity_free()
    dual = data.ring.dual
    blocks = []
    for (i, j, k) in data.ring.admissible_triples():
        left = transport_matrix(data, i, j, k).Lambda
        right = transport_matrix(data, dual[i], dual[j], dual[k]).Lambda
        d_k = gram(data, k, dual[k], 0)
        blocks.append(((i, j, k), np.kron(left, right.conj()) / d_k))
    if not blocks:
        return FullFieldGram()
    matrix = scipy.linalg.block_diag(*[b for _, b in blocks])
    verdict = is_hermitian_pd(matrix, tol, precision)
    return FullFieldGram(blocks, matrix, verdict.min_eigenvalue, verdict.positive_definite)


def full_field_section(data: SkeletalData, tol: Tolerance = Tolerance(),
                       precision: Precision = Precision.DOUBLE) -> Section:
    gram_matrix = full_field_gram(data, tol, precision)
    return Section.from_entries("fullfield", [
        Entry("full_field_gram", gram_matrix.positive_definite, None, None,
              detail={"min_eigenvalue": gram_matrix.min_eigenvalue,
                      "dimension": int(gram_matrix.matrix.shape[0])})
    ])

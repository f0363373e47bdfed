"""
Generators for the shipped families.

* Virasoro minimal models M(m, m+1): modular data only (S from the closed
  form, fusion from Verlinde, cross-checked against the BPZ rules).
* SU(2)_k: full skeletal data from q-6j symbols in the unitary gauge at
  q = exp(i pi / (k+2)), plus modular data.
* The trivial and Fibonacci categories.

Generators check their own output and raise GenerationError on failure.
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Tuple

import mpmath
import numpy as np

from .algebra_core import Tolerance
from .category_data import SkeletalData, verify_hexagon, verify_pentagon
from .config import EXTENDED_PRECISION_DPS, Precision
from .errors import DomainError, GenerationError, NotModularError, PreconditionError
from .fusion_ring import FusionRing
from .modular_data import ModularData, verlinde_fusion

logger = logging.getLogger(__name__)


# ============================================================================
# Virasoro minimal models
# ============================================================================

@dataclass
class KacTable:
    """Kac-table classes of M(m, m+1), one canonical (r, s) per label."""
    m: int
    labels: List[Tuple[int, int]]
    weights: List[float]
    central_charge: float
    classes: Dict[Tuple[int, int], int] = field(default_factory=dict)

    @property
    def names(self) -> List[str]:
        return [f"({r},{s})" for r, s in self.labels]

    def label_of(self, r: int, s: int) -> int:
        """Label id of the class containing (r, s)."""
        try:
            return self.classes[(r, s)]
        except KeyError:
            raise DomainError(f"({r}, {s}) is outside the Kac table of m={self.m}")


def _require_m(m: int) -> None:
    if not isinstance(m, (int, np.integer)) or m < 2:
        raise DomainError(f"minimal models need integer m >= 2, got {m!r}")


def central_charge(m: int) -> float:
    """c = 1 - 6/(m(m+1))."""
    _require_m(m)
    return 1.0 - 6.0 / (m * (m + 1))


def kac_weight(m: int, r: int, s: int) -> float:
    """
    h_{r,s} = (((m+1) r - m s)^2 - 1) / (4 m (m+1)).

    Raises:
        DomainError: m < 2 or (r, s) outside 1 <= r <= m-1, 1 <= s <= m
    """
    _require_m(m)
    if not (1 <= r <= m - 1 and 1 <= s <= m):
        raise DomainError(f"(r, s) = ({r}, {s}) outside the Kac table of m={m}")
    return (((m + 1) * r - m * s) ** 2 - 1) / (4.0 * m * (m + 1))


def kac_table(m: int) -> KacTable:
    """Classes (r, s) ~ (m-r, m+1-s), ordered by (h, r, s) so the vacuum is label 0."""
    _require_m(m)
    reps = set()
    for r in range(1, m):
        for s in range(1, m + 1):
            reps.add(min((r, s), (m - r, m + 1 - s)))
    ordered = sorted(reps, key=lambda rs: (kac_weight(m, *rs), rs))
    classes = {}
    for idx, (r, s) in enumerate(ordered):
        classes[(r, s)] = idx
        classes[(m - r, m + 1 - s)] = idx
    return KacTable(
        m=m,
        labels=ordered,
        weights=[kac_weight(m, r, s) for r, s in ordered],
        central_charge=central_charge(m),
        classes=classes,
    )


def _minimal_s_matrix(table: KacTable) -> np.ndarray:
    m = table.m
    n = len(table.labels)
    S = np.zeros((n, n))
    norm = 2.0 * math.sqrt(2.0 / (m * (m + 1)))
    for (a, (r, s)), (b, (rho, sigma)) in itertools.product(enumerate(table.labels), repeat=2):
        sign = -1.0 if (1 + s * rho + r * sigma) % 2 else 1.0
        S[a, b] = (norm * sign * math.sin(math.pi * (m + 1) * r * rho / m)
                   * math.sin(math.pi * m * s * sigma / (m + 1)))
    return S


def bpz_fusion(m: int) -> FusionRing:
    """
    Fusion ring from the BPZ rules, independent of any S-matrix:
    r3 in |r1-r2|+1 .. min(r1+r2-1, 2m-r1-r2-1) and
    s3 in |s1-s2|+1 .. min(s1+s2-1, 2(m+1)-s1-s2-1), both in steps of 2.
    """
    table = kac_table(m)

    def rule(a: int, b: int):
        (r1, s1), (r2, s2) = table.labels[a], table.labels[b]
        out = set()
        for r3 in range(abs(r1 - r2) + 1, min(r1 + r2 - 1, 2 * m - r1 - r2 - 1) + 1, 2):
            for s3 in range(abs(s1 - s2) + 1, min(s1 + s2 - 1, 2 * (m + 1) - s1 - s2 - 1) + 1, 2):
                out.add(table.label_of(r3, s3))
        return sorted(out)

    n = len(table.labels)
    return FusionRing.from_rule(table.names, list(range(n)), rule)


def minimal_model(m: int, tol: Tolerance = Tolerance()) -> Tuple[ModularData, KacTable]:
    """
    Modular data of M(m, m+1).

    Raises:
        DomainError: m < 2
        GenerationError: Verlinde fusion is not integral or differs from BPZ
    """
    table = kac_table(m)
    if m == 2:
        md = ModularData.from_weights(FusionRing(table.names, [0], np.ones((1, 1, 1))),
                                      np.ones((1, 1)), [0.0], 0.0, tol)
        return md, table

    S = _minimal_s_matrix(table)
    try:
        ring = verlinde_fusion(S, tol, names=table.names)
    except (NotModularError, PreconditionError) as exc:
        raise GenerationError(f"minimal model m={m}: {exc}")
    if ring != bpz_fusion(m):
        raise GenerationError(f"minimal model m={m}: Verlinde fusion differs from the BPZ rules")
    md = ModularData.from_weights(ring, S, table.weights, table.central_charge, tol)
    logger.info("minimal model m=%d: %d labels, c=%.6f", m, ring.rank, table.central_charge)
    return md, table


# ============================================================================
# SU(2)_k
# ============================================================================

def _require_level(k: int) -> None:
    if not isinstance(k, (int, np.integer)) or k < 1:
        raise DomainError(f"SU(2) level must be an integer >= 1, got {k!r}")


def q_number(k: int, n: int, precision: Precision = Precision.DOUBLE):
    """[n] = sin(n pi/(k+2)) / sin(pi/(k+2))."""
    _require_level(k)
    if precision == Precision.EXTENDED:
        with mpmath.workdps(EXTENDED_PRECISION_DPS):
            return mpmath.sin(n * mpmath.pi / (k + 2)) / mpmath.sin(mpmath.pi / (k + 2))
    return math.sin(n * math.pi / (k + 2)) / math.sin(math.pi / (k + 2))


@lru_cache(maxsize=None)
def _q_factorials(k: int, precision: Precision) -> tuple:
    """[0]!, [1]!, ...; entries from [k+2]! on vanish."""
    with mpmath.workdps(EXTENDED_PRECISION_DPS):
        values = [mpmath.mpf(1) if precision == Precision.EXTENDED else 1.0]
        for n in range(1, 2 * k + 5):
            values.append(values[-1] * q_number(k, n, precision) if n < k + 2 else 0 * values[0])
    return tuple(values)


def su2_admissible(k: int, a: int, b: int, c: int) -> bool:
    """Truncated Clebsch-Gordan rule in twice-spin labels."""
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c <= 2 * k


def su2_fusion_ring(k: int) -> FusionRing:
    """Labels 0..k (twice the spin); c in a x b iff |a-b| <= c <= min(a+b, 2k-a-b), step 2."""
    _require_level(k)
    return FusionRing.from_rule(
        [str(a) for a in range(k + 1)], list(range(k + 1)),
        lambda a, b: range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2),
    )


def su2_modular_data(k: int, ring: FusionRing = None, tol: Tolerance = Tolerance()) -> ModularData:
    """S_ab = sqrt(2/(k+2)) sin(pi (a+1)(b+1)/(k+2)), h_a = a(a+2)/(4(k+2)), c = 3k/(k+2)."""
    _require_level(k)
    ring = ring if ring is not None else su2_fusion_ring(k)
    idx = np.arange(k + 1)
    S = math.sqrt(2.0 / (k + 2)) * np.sin(np.pi * np.outer(idx + 1, idx + 1) / (k + 2))
    weights = idx * (idx + 2) / (4.0 * (k + 2))
    return ModularData.from_weights(ring, S, weights, 3.0 * k / (k + 2), tol)


def q6j(k: int, a: int, b: int, c: int, d: int, e: int, f: int,
        precision: Precision = Precision.DOUBLE) -> float:
    """
    Unitary q-6j symbol {a/2 b/2 c/2; d/2 e/2 f/2} at q = exp(i pi/(k+2)).

    Zero unless the triads (a,b,c), (a,e,f), (d,b,f), (d,e,c) are admissible
    at level k. Extended precision carries 30 digits through the Racah sum;
    the returned value is rounded to a double.

    Raises:
        DomainError: a label outside 0..k
    """
    return float(_q6j_value(k, a, b, c, d, e, f, precision))


def _q6j_value(k: int, a: int, b: int, c: int, d: int, e: int, f: int, precision: Precision):
    """q6j at the working precision (an mpf under extended precision)."""
    _require_level(k)
    for x in (a, b, c, d, e, f):
        if not isinstance(x, (int, np.integer)) or not 0 <= x <= k:
            raise DomainError(f"label {x!r} outside 0..{k}")
    triads = ((a, b, c), (a, e, f), (d, b, f), (d, e, c))
    if not all(su2_admissible(k, *t) for t in triads):
        return 0.0

    fact = _q_factorials(k, precision)
    sqrt = mpmath.sqrt if precision == Precision.EXTENDED else math.sqrt

    def delta(x, y, z):
        return sqrt(fact[(-x + y + z) // 2] * fact[(x - y + z) // 2] * fact[(x + y - z) // 2]
                    / fact[(x + y + z) // 2 + 1])

    with mpmath.workdps(EXTENDED_PRECISION_DPS):
        lower = [sum(t) // 2 for t in triads]
        upper = [(a + b + d + e) // 2, (a + c + d + f) // 2, (b + c + e + f) // 2]
        total = 0
        for z in range(max(lower), min(upper) + 1):
            term = fact[z + 1]
            if term == 0:
                continue
            for t in lower:
                term /= fact[z - t]
            for t in upper:
                term /= fact[t - z]
            total += -term if z % 2 else term
        return total * delta(a, b, c) * delta(a, e, f) * delta(d, b, f) * delta(d, e, c)


def su2_f_symbol(k: int, a: int, b: int, c: int, d: int, e: int, f: int,
                 precision: Precision = Precision.DOUBLE) -> float:
    """
    F^{abc}_d[e, f] = sqrt([e+1][f+1]) (-1)^{(a+b+c+d)/2} {a b f; c d e}.

    Under extended precision the whole product is formed at 30 digits and
    rounded to a double once; stored catalogs hold doubles either way.
    """
    with mpmath.workdps(EXTENDED_PRECISION_DPS):
        value = _q6j_value(k, a, b, f, c, d, e, precision)
        if value == 0:
            return 0.0
        sign = -1 if ((a + b + c + d) // 2) % 2 else 1
        return float(sign * mpmath.sqrt(q_number(k, e + 1, precision) * q_number(k, f + 1, precision)) * value)


def su2_r_symbol(k: int, a: int, b: int, c: int) -> complex:
    """R^{ab}_c = (-1)^{(a+b-c)/2} q^{(c(c+2) - a(a+2) - b(b+2))/4}."""
    _require_level(k)
    if not su2_admissible(k, a, b, c):
        raise DomainError(f"({a}, {b}, {c}) is not admissible at level {k}")
    sign = -1.0 if ((a + b - c) // 2) % 2 else 1.0
    exponent = (c * (c + 2) - a * (a + 2) - b * (b + 2)) / 4.0
    return sign * complex(np.exp(1j * np.pi * exponent / (k + 2)))


def su2_data(k: int, precision: Precision = Precision.DOUBLE,
             tol: Tolerance = Tolerance()) -> Tuple[SkeletalData, ModularData]:
    """
    Skeletal and modular data of SU(2)_k.

    Raises:
        DomainError: k < 1
        GenerationError: the generated data fails pentagon or hexagon
    """
    _require_level(k)
    ring = su2_fusion_ring(k)
    n = ring.rank
    F = {}
    for a, b, c, d in itertools.product(range(n), repeat=4):
        rows = [e for e in ring.outcomes(b, c) if ring.N[a, e, d]]
        cols = [f for f in ring.outcomes(a, b) if ring.N[f, c, d]]
        if not rows:
            continue
        F[(a, b, c, d)] = np.array(
            [[su2_f_symbol(k, a, b, c, d, e, f, precision) for f in cols] for e in rows], dtype=complex)
    R = {(a, b, c): su2_r_symbol(k, a, b, c) for (a, b, c) in ring.admissible_triples()}
    data = SkeletalData(ring, F, R)

    for check in (verify_pentagon, verify_hexagon):
        section = check(data, tol)
        if not section.passed:
            worst = max(section.entries, key=lambda e: e.residual)
            raise GenerationError(
                f"SU(2)_{k} failed {section.name}: residual {worst.residual:.3e} at {worst.worst_tuple}")
    logger.info("SU(2)_%d: %d labels, %d F-blocks, coherence verified", k, n, len(F))
    return data, su2_modular_data(k, ring, tol)


# ============================================================================
# Small categories
# ============================================================================

def trivial_data() -> Tuple[SkeletalData, ModularData]:
    """The category with only the unit."""
    ring = FusionRing.trivial()
    data = SkeletalData(ring, {}, {(0, 0, 0): 1.0})
    md = ModularData.from_weights(ring, np.ones((1, 1)), [0.0], 0.0)
    return data, md


def fibonacci_data(tol: Tolerance = Tolerance()) -> Tuple[SkeletalData, ModularData]:
    """Fibonacci category: tau x tau = 1 + tau, h_tau = 2/5, c = 14/5."""
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    ring = FusionRing.from_rule(
        ["1", "tau"], [0, 1],
        lambda a, b: [a + b] if a * b == 0 else [0, 1],
    )
    F = {
        (1, 1, 1, 0): np.ones((1, 1), dtype=complex),
        (1, 1, 1, 1): np.array([[1.0 / phi, phi ** -0.5], [phi ** -0.5, -1.0 / phi]], dtype=complex),
    }
    R = {
        (0, 0, 0): 1.0, (0, 1, 1): 1.0, (1, 0, 1): 1.0,
        (1, 1, 0): complex(np.exp(-4j * np.pi / 5)),
        (1, 1, 1): complex(np.exp(3j * np.pi / 5)),
    }
    data = SkeletalData(ring, F, R)
    D = math.sqrt(2.0 + phi)
    S = np.array([[1.0, phi], [phi, -1.0]]) / D
    md = ModularData.from_weights(ring, S, [0.0, 0.4], 2.8, tol)
    for check in (verify_pentagon, verify_hexagon):
        section = check(data, tol)
        if not section.passed:
            raise GenerationError(f"Fibonacci data failed {section.name}")
    return data, md

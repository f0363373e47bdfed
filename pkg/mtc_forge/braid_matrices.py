"""
Braid matrices B+ and B- and the identities relating them to F, R and the
dagger map.

For charges (i, j), source l and target n, B+_{ij}(l, n) has rows m in j x l
with n in i x m and columns m' in i x l with n in j x m':

    B+[m, m'] = sum_f F^{ijl}_n[m, f] R^{ij}_f (F^{-1})^{jil}_n[f, m']

B- replaces R^{ij}_f by 1/R^{ji}_f.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from .algebra_core import Tolerance, is_unitary, residual, worst_of
from .category_data import SkeletalData, dagger_scalar
from .errors import DomainError
from .report import Entry, Section

logger = logging.getLogger(__name__)

PLUS = +1
MINUS = -1


@dataclass
class BraidMatrix:
    """One block of B+ or B- between fixed source and target."""
    i: int
    j: int
    source: int
    target: int
    sign: int
    rows: List[int]
    cols: List[int]
    M: np.ndarray

    def entry(self, m: int, m_prime: int) -> complex:
        return complex(self.M[self.rows.index(m), self.cols.index(m_prime)])


def braid_matrix(data: SkeletalData, i: int, j: int, source: int, target: int, sign: int = PLUS) -> BraidMatrix:
    """
    Build B+-_{ij}(source, target).

    Args:
        data: Multiplicity-free skeletal data
        i, j: Charges, in the order they are braided
        source, target: Outer labels l and n
        sign: PLUS (uses R) or MINUS (uses the inverse braiding)

    Returns:
        BraidMatrix, empty when no chain is admissible
    """
    if sign not in (PLUS, MINUS):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    data.require_multiplicity_free()
    ring = data.ring
    l, n = source, target
    for x in (i, j, l, n):
        ring.check_label(x)
    rows = [m for m in ring.outcomes(j, l) if ring.N[i, m, n]]
    cols = [m for m in ring.outcomes(i, l) if ring.N[j, m, n]]
    M = np.zeros((len(rows), len(cols)), dtype=complex)
    channels = [f for f in ring.outcomes(i, j) if ring.N[f, l, n]]
    for x, m in enumerate(rows):
        for y, mp in enumerate(cols):
            total = 0j
            for f in channels:
                phase = data.r(i, j, f) if sign == PLUS else 1.0 / data.r(j, i, f)
                total += data.f(i, j, l, n, m, f) * phase * data.finv(j, i, l, n, f, mp)
            M[x, y] = total
    return BraidMatrix(i, j, l, n, sign, rows, cols, M)


def braid_blocks(data: SkeletalData, i: int, j: int, sign: int = PLUS) -> List[BraidMatrix]:
    """All nonempty blocks of B+-_{ij}, ordered by (source, target)."""
    n = data.ring.rank
    blocks = []
    for l, t in itertools.product(range(n), repeat=2):
        block = braid_matrix(data, i, j, l, t, sign)
        if block.rows:
            blocks.append(block)
    return blocks


class _BraidTable:
    """Every nonempty block of a category, cached for repeated lookups."""

    def __init__(self, data: SkeletalData):
        self.data = data
        n = data.ring.rank
        self.blocks: Dict[Tuple[int, int, int, int, int], BraidMatrix] = {}
        for i, j, l, t in itertools.product(range(n), repeat=4):
            for sign in (PLUS, MINUS):
                block = braid_matrix(data, i, j, l, t, sign)
                if block.rows:
                    self.blocks[(i, j, l, t, sign)] = block
        self._dhat: Dict[Tuple[int, int, int], complex] = {}

    def get(self, i, j, l, t, sign) -> BraidMatrix:
        return self.blocks[(i, j, l, t, sign)]

    def dhat(self, i: int, j: int, k: int) -> complex:
        key = (i, j, k)
        if key not in self._dhat:
            self._dhat[key] = dagger_scalar(self.data, i, j, k, orthonormal=True)
        return self._dhat[key]


def verify_braid_relations(data: SkeletalData, tol: Tolerance = Tolerance()) -> Section:
    """
    Check the braid-matrix identities over every block.

    Entries: conjugation, adjoint_symmetry, unitarity, fusion_from_braid,
    orthonormal_images and inverse.  Tuples are (sign, i, j, l, n, m, m')
    with sign 0 for B+ and 1 for B-.
    """
    data.require_multiplicity_free()
    table = _BraidTable(data)
    dual = data.ring.dual
    dh = table.dhat

    conj_res, adj_res, unit_res, image_res, inv_res, fuse_res = [], [], [], [], [], []
    for (i, j, l, n, sign), block in sorted(table.blocks.items()):
        s = 0 if sign == PLUS else 1
        opposite = -sign
        eye = np.eye(len(block.rows))

        _, res = is_unitary(block.M, tol)
        unit_res.append((res, (s, i, j, l, n)))
        image_res.append((residual(block.M @ block.M.conj().T, eye), (s, i, j, l, n)))
        inv_res.append((residual(block.M @ table.get(j, i, l, n, opposite).M, eye), (s, i, j, l, n)))

        conj_block = table.get(dual[j], dual[i], n, l, opposite)
        mirror_block = table.get(dual[i], dual[j], n, l, sign)
        for (x, m), (y, mp) in itertools.product(enumerate(block.rows), enumerate(block.cols)):
            value = block.M[x, y]
            tup = (s, i, j, l, n, m, mp)

            ratio = dh(j, l, m) * dh(i, m, n) / (dh(i, l, mp) * dh(j, mp, n))
            conj_res.append((abs(np.conj(value) - ratio * conj_block.entry(m, mp)), tup))

            swap_block = table.get(j, dual[i], mp, m, opposite)
            first = dh(i, l, mp) / dh(i, m, n) * swap_block.entry(l, n)
            second = (dh(i, l, mp) * dh(j, mp, n) / (dh(j, l, m) * dh(i, m, n))
                      * mirror_block.entry(mp, m))
            adj_res.append((max(abs(value - first), abs(value - second)), tup))

    # F^{ijl}_n[m, f] = R^{jl}_m B+_{il}(j, n)[m, f] / R^{fl}_n
    for key in data.block_keys():
        i, j, l, n = key
        rows, cols, F = data.f_block(*key)
        block = table.get(i, l, j, n, PLUS)
        for (x, m), (y, f) in itertools.product(enumerate(rows), enumerate(cols)):
            rebuilt = data.r(j, l, m) * block.entry(m, f) / data.r(f, l, n)
            fuse_res.append((abs(F[x, y] - rebuilt), (0, i, j, l, n, m, f)))

    threshold = tol.threshold(1.0)
    entries = []
    for name, results in (("conjugation", conj_res), ("adjoint_symmetry", adj_res),
                          ("unitarity", unit_res), ("fusion_from_braid", fuse_res),
                          ("orthonormal_images", image_res), ("inverse", inv_res)):
        worst, worst_tuple = worst_of(results)
        entries.append(Entry(name, worst <= threshold, worst, worst_tuple,
                             detail={"checked": len(results)}))
    section = Section.from_entries("braid", entries)
    logger.info("braid: %d blocks checked", len(table.blocks))
    return section

"""
Fusion rings.

A FusionRing holds the simple labels, the duality involution and the integer
multiplicities N^k_{ij}.  Construction only checks what every later step
relies on (unit, duality, unique vacuum channel); associativity and the other
ring axioms are reported by verify_ring.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .algebra_core import Tolerance, worst_of
from .errors import CatalogValidationError, DomainError
from .report import Entry, Section

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Label:
    """A simple object: dense integer id plus a display name."""
    id: int
    display_name: str

    def __str__(self) -> str:
        return self.display_name


class FusionRing:
    """Based ring with unit 0, involution `dual` and multiplicities N[i, j, k] = N^k_{ij}."""

    def __init__(self, labels: Sequence, dual: Sequence[int], N):
        """
        Build and validate a fusion ring.

        Args:
            labels: Label objects or display names, in id order
            dual: dual[i] is the id of the dual label
            N: (n, n, n) array of nonnegative integers, N[i, j, k] = N^k_{ij}

        Raises:
            CatalogValidationError: if a structural invariant fails
        """
        self.labels: List[Label] = [
            lab if isinstance(lab, Label) else Label(idx, str(lab))
            for idx, lab in enumerate(labels)
        ]
        n = len(self.labels)
        if n == 0:
            raise CatalogValidationError("shape", "a fusion ring needs at least the unit label")
        for idx, lab in enumerate(self.labels):
            if lab.id != idx:
                raise CatalogValidationError("dense ids", f"label {lab.display_name!r} has id {lab.id}, expected {idx}")

        arr = np.asarray(N)
        if arr.shape != (n, n, n):
            raise CatalogValidationError("shape", f"fusion tensor has shape {arr.shape}, expected {(n, n, n)}")
        if not np.all(np.equal(np.mod(arr, 1), 0)) or np.any(arr < 0):
            raise CatalogValidationError("nonnegative integers", "fusion multiplicities must be nonnegative integers")
        self.N = arr.astype(np.int64)

        self.dual = [int(x) for x in dual]
        if len(self.dual) != n or any(not 0 <= x < n for x in self.dual):
            raise CatalogValidationError("dual involution", "dual must map label ids to label ids")
        if self.dual[0] != 0 or any(self.dual[self.dual[i]] != i for i in range(n)):
            raise CatalogValidationError("dual involution", f"dual {self.dual} is not an involution fixing 0")

        eye = np.eye(n, dtype=np.int64)
        for i in range(n):
            if not (np.array_equal(self.N[0, i], eye[i]) and np.array_equal(self.N[i, 0], eye[i])):
                raise CatalogValidationError("unit", f"0 x {self.labels[i]} != {self.labels[i]}")

        for i in range(n):
            for j in range(n):
                expected = 1 if j == self.dual[i] else 0
                if self.N[i, j, 0] != expected:
                    raise CatalogValidationError(
                        "vacuum channel multiplicity",
                        f"N^0_({self.labels[i]},{self.labels[j]}) = {self.N[i, j, 0]}, expected {expected}",
                    )

        self._by_name: Dict[str, int] = {lab.display_name: lab.id for lab in self.labels}

    @classmethod
    def trivial(cls) -> "FusionRing":
        return cls(["1"], [0], np.ones((1, 1, 1), dtype=np.int64))

    @classmethod
    def from_rule(cls, labels: Sequence, dual: Sequence[int],
                  rule: Callable[[int, int], Iterable[int]]) -> "FusionRing":
        """
        Build a multiplicity-free ring from a fusion rule.

        Args:
            labels: Display names in id order
            dual: Duality involution
            rule: rule(i, j) yields the ids k with N^k_{ij} = 1
        """
        n = len(labels)
        N = np.zeros((n, n, n), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                for k in rule(i, j):
                    N[i, j, k] += 1
        return cls(labels, dual, N)

    @property
    def rank(self) -> int:
        return len(self.labels)

    @property
    def names(self) -> List[str]:
        return [lab.display_name for lab in self.labels]

    def check_label(self, i: int) -> int:
        if not isinstance(i, (int, np.integer)) or not 0 <= i < self.rank:
            raise DomainError(f"invalid label id {i!r} (rank {self.rank})")
        return int(i)

    def label_index(self, name: str) -> int:
        try:
            return self._by_name[name]
        except KeyError:
            raise DomainError(f"unknown label {name!r}")

    def dual_of(self, i: int) -> int:
        return self.dual[self.check_label(i)]

    def multiplicity(self, i: int, j: int, k: int) -> int:
        return int(self.N[self.check_label(i), self.check_label(j), self.check_label(k)])

    def admissible(self, i: int, j: int, k: int) -> bool:
        """True iff k appears in i x j."""
        return self.multiplicity(i, j, k) > 0

    def outcomes(self, i: int, j: int) -> List[int]:
        """Labels k with N^k_{ij} > 0, ascending."""
        return [int(k) for k in np.nonzero(self.N[self.check_label(i), self.check_label(j)])[0]]

    def is_multiplicity_free(self) -> bool:
        return bool(np.all(self.N <= 1))

    def admissible_triples(self) -> List[Tuple[int, int, int]]:
        """All (i, j, k) with N^k_{ij} > 0 in lexicographic order."""
        return [tuple(int(x) for x in t) for t in np.argwhere(self.N > 0)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.dual == other.dual and np.array_equal(self.N, other.N)

    def __repr__(self) -> str:
        return f"FusionRing(rank={self.rank}, labels={self.names})"


def fuse(ring: FusionRing, i: int, j: int) -> List[Tuple[int, int]]:
    """
    Fusion product of two labels.

    Returns:
        list: (k, N^k_{ij}) for every k with nonzero multiplicity, ascending k
    """
    return [(k, int(ring.N[i, j, k])) for k in ring.outcomes(i, j)]


def verify_ring(ring: FusionRing, tol: Optional[Tolerance] = None) -> Section:
    """
    Check the ring axioms.

    Multiplicities are integers, so every residual is an exact integer
    discrepancy and `tol` is accepted only for a uniform verifier signature.

    Returns:
        Section "ring" with unit, duality, associativity, frobenius and
        commutativity entries
    """
    n = ring.rank
    N = ring.N
    dual = ring.dual
    labels = range(n)
    entries = []

    unit_res = max(
        int(np.max(np.abs(N[0] - np.eye(n, dtype=np.int64)))),
        int(np.max(np.abs(N[:, 0, :] - np.eye(n, dtype=np.int64)))),
    )
    entries.append(Entry("unit", unit_res == 0, float(unit_res)))

    duality = worst_of(
        (float(abs(N[i, j, 0] - (1 if j == dual[i] else 0))), (i, j))
        for i in labels for j in labels
    )
    involution_ok = dual[0] == 0 and all(dual[dual[i]] == i for i in labels)
    entries.append(Entry("duality", duality[0] == 0 and involution_ok, duality[0],
                         duality[1] if duality[0] else None))

    # (i x j) x k versus i x (j x k), coefficient of l
    left = np.einsum("ijm,mkl->ijkl", N, N)
    right = np.einsum("jkm,iml->ijkl", N, N)
    assoc = worst_of(
        (float(abs(left[t] - right[t])), tuple(int(x) for x in t))
        for t in itertools.product(labels, repeat=4)
    )
    entries.append(Entry("associativity", assoc[0] == 0, assoc[0],
                         assoc[1] if assoc[0] else None))

    frob = worst_of(
        (float(abs(N[i, j, k] - N[dual[j], dual[i], dual[k]])), (i, j, k))
        for i, j, k in itertools.product(labels, repeat=3)
    )
    entries.append(Entry("frobenius", frob[0] == 0, frob[0], frob[1] if frob[0] else None))

    comm = worst_of(
        (float(abs(N[i, j, k] - N[j, i, k])), (i, j, k))
        for i, j, k in itertools.product(labels, repeat=3)
    )
    entries.append(Entry("commutativity", comm[0] == 0, comm[0], comm[1] if comm[0] else None))

    section = Section.from_entries("ring", entries)
    if not section.passed:
        logger.warning("ring axioms failed: %s", [e.name for e in entries if not e.passed])
    return section

"""
Modular data: S, T, quantum dimensions and twists over a fusion ring.

The fusion ring of a modular category is recovered from S by the Verlinde
formula, which is also how generated families are cross-checked.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .algebra_core import Tolerance, as_matrix, is_unitary, max_abs, residual, worst_of
from .config import VERLINDE_ROUNDING_FACTOR
from .errors import (
    CatalogValidationError,
    DimensionError,
    NotModularError,
    NotUnitaryModularError,
    PreconditionError,
)
from .fusion_ring import FusionRing
from .report import Entry, Section

logger = logging.getLogger(__name__)


@dataclass
class ModularData:
    """S, T, dimensions d_i = S_0i/S_00 and twists theta_i over a ring."""
    ring: FusionRing
    S: np.ndarray
    T: np.ndarray
    d: np.ndarray
    theta: np.ndarray
    central_charge: float
    weights: Optional[np.ndarray] = None

    @classmethod
    def from_weights(cls, ring: FusionRing, S, weights: Sequence[float], central_charge: float,
                     tol: Tolerance = Tolerance()) -> "ModularData":
        """
        Build modular data from conformal weights.

        T_ii = exp(2 pi i (h_i - c/24)) and theta_i = exp(2 pi i h_i).

        Args:
            ring: Fusion ring the labels belong to
            S: Modular S-matrix
            weights: Conformal weight h_i per label
            central_charge: Central charge c
            tol: Tolerance for the dimension extraction

        Returns:
            ModularData
        """
        S = as_matrix(S)
        h = np.asarray(weights, dtype=float)
        if S.shape != (ring.rank, ring.rank) or h.shape != (ring.rank,):
            raise DimensionError(f"S {S.shape} / weights {h.shape} do not match rank {ring.rank}")
        theta = np.exp(2j * np.pi * h)
        T = np.diag(np.exp(2j * np.pi * (h - central_charge / 24.0)))
        return cls(
            ring=ring,
            S=S,
            T=T,
            d=quantum_dims(S, tol),
            theta=theta,
            central_charge=float(central_charge),
            weights=h,
        )

    @property
    def rank(self) -> int:
        return self.ring.rank


def _verlinde_tensor(S: np.ndarray) -> np.ndarray:
    """Raw N^k_ij = sum_m S_im S_jm conj(S_km) / S_0m."""
    return np.einsum("im,jm,km->ijk", S, S, S.conj() / S[0][None, :])


def verlinde_fusion(S, tol: Tolerance = Tolerance(), names: Optional[List[str]] = None) -> FusionRing:
    """
    Recover the fusion ring from S.

    Args:
        S: Unitary S-matrix with S_0m != 0
        tol: Tolerance; entries are rounded within 10 * abs_eps
        names: Optional display names

    Returns:
        FusionRing whose duality is read off N^0_ij

    Raises:
        PreconditionError: S not unitary or S_0m = 0
        NotModularError: non-integral or negative multiplicities
    """
    S = as_matrix(S)
    unitary, res = is_unitary(S, tol)
    if not unitary:
        raise PreconditionError(f"S is not unitary (residual {res:.3e})")
    if np.any(np.abs(S[0]) <= tol.abs_eps):
        raise PreconditionError("S has a vanishing vacuum row entry")

    raw = _verlinde_tensor(S)
    rounded = np.rint(raw.real)
    threshold = VERLINDE_ROUNDING_FACTOR * tol.abs_eps
    n = S.shape[0]
    deviation, worst = worst_of(
        (float(abs(raw[t] - rounded[t])), t) for t in itertools.product(range(n), repeat=3)
    )
    if deviation > threshold:
        raise NotModularError("Verlinde formula is not integral", worst, deviation)
    if np.any(rounded < 0):
        neg = tuple(int(x) for x in np.argwhere(rounded < 0)[0])
        raise NotModularError("Verlinde formula gives a negative multiplicity", neg, float(-rounded[neg]))

    N = rounded.astype(np.int64)
    dual = []
    for i in range(n):
        partners = np.nonzero(N[i, :, 0])[0]
        if len(partners) != 1:
            raise NotModularError("no unique dual label", (i, i, 0), float(len(partners)))
        dual.append(int(partners[0]))
    labels = names if names is not None else [str(i) for i in range(n)]
    try:
        return FusionRing(labels, dual, N)
    except CatalogValidationError as exc:
        raise NotModularError(f"Verlinde ring is malformed ({exc})", (0, 0, 0), 0.0)


def quantum_dims(S, tol: Tolerance = Tolerance()) -> np.ndarray:
    """
    d_i = S_0i / S_00.

    Raises:
        NotUnitaryModularError: a dimension is complex or below 1
    """
    S = as_matrix(S)
    ratios = S[0] / S[0, 0]
    for i, value in enumerate(ratios):
        if abs(value.imag) > tol.threshold(abs(value)) or value.real < 1.0 - tol.threshold(1.0):
            raise NotUnitaryModularError(f"label {i} has quantum dimension {value}")
    return ratios.real.copy()


def global_dimension(d) -> float:
    """sqrt(sum d_i^2)."""
    d = np.asarray(d, dtype=float)
    return float(np.sqrt(np.sum(d * d)))


def verify_modular(md: ModularData, tol: Tolerance = Tolerance()) -> Section:
    """
    Check the modular data against itself and against its fusion ring.

    Returns:
        Section "modular"
    """
    S, T, ring = md.S, md.T, md.ring
    n = ring.rank
    entries = []

    res = residual(S, S.T)
    entries.append(Entry("s_symmetric", res <= tol.threshold(1.0), res))

    unitary, res = is_unitary(S, tol)
    entries.append(Entry("s_unitary", unitary, res))

    C = np.zeros((n, n))
    for i in range(n):
        C[i, ring.dual[i]] = 1.0
    S2 = S @ S
    res = residual(S2, C)
    entries.append(Entry("s_squared_is_conjugation", res <= tol.threshold(1.0), res))

    ST = S @ T
    ST3 = ST @ ST @ ST
    lam = complex(np.vdot(S2, ST3) / np.vdot(S2, S2))
    res = residual(ST3, lam * S2)
    entries.append(Entry("st_cubed", res <= tol.threshold(1.0), res, detail={"lambda": lam}))

    try:
        recovered = verlinde_fusion(S, tol)
        raw = _verlinde_tensor(S)
        deviation = max_abs(raw - np.rint(raw.real))
        matches = np.array_equal(recovered.N, ring.N)
        mismatch = max_abs(recovered.N - ring.N)
        entries.append(Entry("verlinde_integrality", matches, max(deviation, float(mismatch)),
                             detail={"matches_ring": bool(matches)}))
    except (PreconditionError, NotModularError) as exc:
        logger.warning("Verlinde formula failed: %s", exc)
        entries.append(Entry("verlinde_integrality", False, float("inf"), detail={"error": str(exc)}))

    d = np.asarray(md.d, dtype=float)
    scale = float(np.max(d)) ** 2
    hom = worst_of(
        (float(abs(d[i] * d[j] - np.dot(ring.N[i, j], d))), (i, j))
        for i in range(n) for j in range(n)
    )
    entries.append(Entry("dimension_homomorphism", hom[0] <= tol.threshold(scale), hom[0], hom[1]))

    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = (S[0] / S[0, 0])
    dims = worst_of(
        (float(max(abs(d[i] - ratio[i]), abs(d[ring.dual[i]] - d[i]))), (i,))
        for i in range(n)
    )
    entries.append(Entry("dims_match_s", dims[0] <= tol.threshold(float(np.max(d))), dims[0], dims[1]))

    mods = worst_of((float(abs(abs(md.theta[i]) - 1.0)), (i,)) for i in range(n))
    entries.append(Entry("twist_unit_modulus", mods[0] <= tol.threshold(1.0), mods[0], mods[1]))

    return Section.from_entries("modular", entries)

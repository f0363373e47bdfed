import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import cached_su2, replace_f, replace_r
from mtc_forge.braid_matrices import verify_braid_relations
from mtc_forge.category_data import (
    SkeletalData,
    dagger_map,
    dagger_roundtrip,
    dagger_scalar,
    data_quantum_dims,
    data_twist,
    frobenius_schur,
    gauge_transform,
    gram,
    random_unit_gauge,
    verify_f_unitarity,
    verify_hexagon,
    verify_pentagon,
)
from mtc_forge.errors import CatalogValidationError, DomainError, UnsupportedDataError
from mtc_forge.fusion_ring import FusionRing
from mtc_forge.transport import transport_matrix, verify_transport

SIGMA, PSI = 1, 2


def check_coherent(data):
    for section in (verify_pentagon(data), verify_hexagon(data), verify_f_unitarity(data)):
        assert section.passed, (section.name, [e.to_dict() for e in section.entries])


def test_ising_fixture_is_coherent(ising):
    check_coherent(ising)
    assert verify_pentagon(ising).entry("pentagon").detail["checked"] > 0


def test_f_block_layout(ising):
    rows, cols, F = ising.f_block(SIGMA, SIGMA, SIGMA, SIGMA)
    assert rows == [0, PSI] and cols == [0, PSI]
    assert_allclose(F, np.array([[1, 1], [1, -1]]) / math.sqrt(2))
    assert ising.f(SIGMA, SIGMA, SIGMA, SIGMA, PSI, PSI) == pytest.approx(-1 / math.sqrt(2))
    # unit legs are filled in as identities
    rows, cols, F = ising.f_block(0, SIGMA, SIGMA, PSI)
    assert rows == [PSI] and cols == [SIGMA]
    assert_allclose(F, [[1.0]])
    assert ising.f_block(SIGMA, SIGMA, SIGMA, 0)[2].shape == (0, 0)


def test_negated_f_block_fails_pentagon(ising):
    _, _, F = ising.f_block(SIGMA, PSI, SIGMA, PSI)
    broken = replace_f(ising, (SIGMA, PSI, SIGMA, PSI), -F)
    entry = verify_pentagon(broken).entry("pentagon")
    assert not entry.passed
    assert entry.detail["failing"] > 0
    assert verify_f_unitarity(broken).passed


def test_conjugated_r_symbol_fails_hexagon(ising):
    broken = replace_r(ising, (SIGMA, SIGMA, PSI), np.conj(ising.r(SIGMA, SIGMA, PSI)))
    section = verify_hexagon(broken)
    assert not section.passed
    assert verify_pentagon(broken).passed


def test_construction_errors(ising):
    R = dict(ising.R)
    del R[(SIGMA, SIGMA, PSI)]
    with pytest.raises(CatalogValidationError) as excinfo:
        SkeletalData(ising.ring, ising.F, R)
    assert excinfo.value.invariant == "r missing"

    R = dict(ising.R)
    R[(SIGMA, SIGMA, PSI)] = 0
    with pytest.raises(CatalogValidationError) as excinfo:
        SkeletalData(ising.ring, ising.F, R)
    assert excinfo.value.invariant == "r nonzero"

    with pytest.raises(CatalogValidationError) as excinfo:
        SkeletalData(ising.ring, ising.F, ising.R, [1.0, 1.0])
    assert excinfo.value.invariant == "ev_norms"

    F = ising.F
    F[(SIGMA, SIGMA, SIGMA, SIGMA)] = np.eye(3)
    with pytest.raises(CatalogValidationError) as excinfo:
        SkeletalData(ising.ring, F, ising.R)
    assert excinfo.value.invariant == "f block shape"

    F = ising.F
    del F[(SIGMA, SIGMA, SIGMA, SIGMA)]
    with pytest.raises(CatalogValidationError) as excinfo:
        SkeletalData(ising.ring, F, ising.R)
    assert excinfo.value.invariant == "f block missing"


def test_multiplicity_is_rejected_by_verifiers():
    N = np.zeros((2, 2, 2), dtype=int)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = 1
    N[1, 1, 1] = 2
    ring = FusionRing(["1", "x"], [0, 1], N)
    R = {t: 1.0 for t in ring.admissible_triples()}
    data = SkeletalData(ring, {}, R)
    with pytest.raises(UnsupportedDataError):
        verify_pentagon(data)
    with pytest.raises(UnsupportedDataError):
        verify_hexagon(data)
    with pytest.raises(UnsupportedDataError):
        data.f_block(1, 1, 1, 1)


# ============================================================================
# Gauge
# ============================================================================

@pytest.mark.parametrize("seed", [0, 1, 2])
def test_unitary_gauge_preserves_everything(ising, seed):
    gauged = gauge_transform(ising, random_unit_gauge(ising.ring, seed))
    check_coherent(gauged)
    for (i, j, k) in ising.ring.admissible_triples():
        assert transport_matrix(gauged, i, j, k).value == pytest.approx(transport_matrix(ising, i, j, k).value)
    assert_allclose(data_quantum_dims(gauged), data_quantum_dims(ising))
    for i in range(ising.ring.rank):
        assert data_twist(gauged, i) == pytest.approx(data_twist(ising, i))


@pytest.mark.parametrize("k", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1])
def test_su2_unitary_gauge_preserves_coherence(k, seed):
    data, _ = cached_su2(k)
    gauged = gauge_transform(data, random_unit_gauge(data.ring, seed))
    check_coherent(gauged)
    for entry in verify_hexagon(gauged).entries:
        assert entry.residual < 1e-12
    assert verify_braid_relations(gauged).passed
    assert verify_transport(gauged).passed
    for (i, j, l) in data.ring.admissible_triples():
        assert transport_matrix(gauged, i, j, l).value == pytest.approx(transport_matrix(data, i, j, l).value)


def test_gauge_asymmetric_in_vertex_legs_keeps_hexagon():
    data, _ = cached_su2(2)
    # rescale X^{12}_1 but not X^{21}_1
    gauged = gauge_transform(data, {(1, 2, 1): 1j})
    assert gauged.r(1, 2, 1) != pytest.approx(gauged.r(2, 1, 1))
    assert verify_hexagon(gauged).passed
    assert verify_pentagon(gauged).passed


def test_su2_conjugated_r_phase_fails_hexagon():
    data, _ = cached_su2(3)
    broken = replace_r(data, (1, 1, 2), np.conj(data.r(1, 1, 2)))
    section = verify_hexagon(broken)
    assert not section.passed
    assert max(e.residual for e in section.entries) > 1e-2
    assert verify_pentagon(broken).passed


def test_non_unitary_gauge_breaks_only_unitarity(ising):
    gauged = gauge_transform(ising, {(SIGMA, SIGMA, 0): 2.0})
    assert not verify_f_unitarity(gauged).passed
    assert verify_pentagon(gauged).passed
    assert verify_hexagon(gauged).passed


def test_zero_gauge_scalar(ising):
    with pytest.raises(DomainError):
        gauge_transform(ising, {(SIGMA, SIGMA, 0): 0.0})


# ============================================================================
# Dimensions, twists and the dagger map
# ============================================================================

def test_ising_dimensions_and_twists(ising, ising_md):
    assert_allclose(data_quantum_dims(ising), [1.0, math.sqrt(2), 1.0])
    assert gram(ising, SIGMA, SIGMA, 0) == pytest.approx(math.sqrt(2))
    assert gram(ising, SIGMA, SIGMA, PSI) == pytest.approx(math.sqrt(2))
    for i in range(3):
        assert frobenius_schur(ising, i) == pytest.approx(1.0)
        assert data_twist(ising, i) == pytest.approx(ising_md.theta[i])
    with pytest.raises(DomainError):
        gram(ising, SIGMA, SIGMA, SIGMA)


def test_su2_frobenius_schur_alternates():
    data, _ = cached_su2(3)
    for a in range(4):
        assert frobenius_schur(data, a) == pytest.approx((-1) ** a)


@pytest.mark.parametrize("k", [None, 2, 3, 4])
def test_dagger_has_unit_modulus(ising, k):
    data = ising if k is None else cached_su2(k)[0]
    for (i, j, l) in data.ring.admissible_triples():
        assert abs(dagger_scalar(data, i, j, l)) == pytest.approx(1.0)
        assert abs(dagger_roundtrip(data, i, j, l)) == pytest.approx(1.0)


def test_orthonormal_dagger(ising):
    assert dagger_scalar(ising, SIGMA, SIGMA, 0) == pytest.approx(1.0)
    assert dagger_scalar(ising, SIGMA, SIGMA, 0, orthonormal=True) == pytest.approx(2 ** -0.25)
    assert dagger_map(ising, SIGMA, SIGMA, 0).shape == (1, 1)
    assert dagger_map(ising, SIGMA, SIGMA, SIGMA).shape == (0, 0)
    with pytest.raises(DomainError):
        dagger_roundtrip(ising, SIGMA, SIGMA, SIGMA)

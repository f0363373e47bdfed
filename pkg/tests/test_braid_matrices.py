import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import cached_su2, replace_r
from mtc_forge.braid_matrices import MINUS, PLUS, braid_blocks, braid_matrix, verify_braid_relations
from mtc_forge.errors import DomainError

SIGMA, PSI = 1, 2

BRAID_ENTRIES = {"conjugation", "adjoint_symmetry", "unitarity", "fusion_from_braid",
                 "orthonormal_images", "inverse"}


def test_ising_braid_relations(ising):
    section = verify_braid_relations(ising)
    assert {e.name for e in section.entries} == BRAID_ENTRIES
    assert section.passed, [e.to_dict() for e in section.entries if not e.passed]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_su2_braid_relations(k):
    data, _ = cached_su2(k)
    section = verify_braid_relations(data)
    assert section.passed, [e.to_dict() for e in section.entries if not e.passed]


def test_sigma_exchange_over_sigma(ising):
    assert braid_matrix(ising, SIGMA, SIGMA, SIGMA, 0).rows == []
    plus = braid_matrix(ising, SIGMA, SIGMA, SIGMA, SIGMA)
    assert plus.rows == [0, PSI] and plus.cols == [0, PSI]
    minus = braid_matrix(ising, SIGMA, SIGMA, SIGMA, SIGMA, MINUS)
    assert_allclose(plus.M @ minus.M, np.eye(2), atol=1e-12)
    assert_allclose(plus.M @ plus.M.conj().T, np.eye(2), atol=1e-12)


def test_trivial_charge_braids_trivially(ising):
    for block in braid_blocks(ising, 0, SIGMA):
        assert_allclose(block.M, np.eye(len(block.rows)), atol=1e-12)


def test_blocks_are_ordered(ising):
    blocks = braid_blocks(ising, SIGMA, PSI, PLUS)
    keys = [(b.source, b.target) for b in blocks]
    assert keys == sorted(keys)
    assert all(b.rows for b in blocks)


def test_bad_sign(ising):
    with pytest.raises(DomainError):
        braid_matrix(ising, SIGMA, SIGMA, 0, 0, sign=0)


def test_broken_r_symbol_is_detected(ising):
    broken = replace_r(ising, (SIGMA, SIGMA, PSI), 2 * ising.r(SIGMA, SIGMA, PSI))
    section = verify_braid_relations(broken)
    assert not section.entry("unitarity").passed
    assert not section.passed

"""Shared fixtures: bundled catalogs, cached family data and the default tolerance."""

from functools import lru_cache

import numpy as np
import pytest

from mtc_forge.algebra_core import Tolerance
from mtc_forge.catalog_io import FixtureLibrary
from mtc_forge.category_data import SkeletalData
from mtc_forge.families import su2_data


@lru_cache(maxsize=None)
def cached_su2(k: int):
    return su2_data(k)


@pytest.fixture
def tol():
    return Tolerance()


@pytest.fixture(scope="session")
def fixtures():
    return FixtureLibrary()


@pytest.fixture
def ising_catalog(fixtures):
    return fixtures.load("ising")


@pytest.fixture
def ising(ising_catalog):
    return ising_catalog.skeletal_data


@pytest.fixture
def ising_md(ising_catalog):
    return ising_catalog.modular_data


@pytest.fixture
def trivial_catalog(fixtures):
    return fixtures.load("trivial")


@pytest.fixture
def np_random():
    return np.random.default_rng(1234)


def replace_f(data, key, matrix):
    """Copy of skeletal data with one F-block replaced."""
    F = {k: data.f_block(*k)[2] for k in data.block_keys()}
    F[key] = np.asarray(matrix, dtype=complex)
    return SkeletalData(data.ring, F, dict(data.R), data.ev_norms.copy())


def replace_r(data, key, value):
    """Copy of skeletal data with one R-symbol replaced."""
    F = {k: data.f_block(*k)[2] for k in data.block_keys()}
    R = dict(data.R)
    R[key] = value
    return SkeletalData(data.ring, F, R, data.ev_norms.copy())

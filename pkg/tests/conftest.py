"""
shared fixtures for the confsplit test suite
"""
import pytest

from src.catalog import affine_space, curve_open, elliptic, p2_minus_curve, torus


@pytest.fixture
def line():
    """C"""
    return affine_space(1)


@pytest.fixture
def torus1():
    return torus(1)


@pytest.fixture
def elliptic_curve():
    return elliptic()


@pytest.fixture
def once_punctured_elliptic():
    """Sigma_{1,1} = E - O"""
    return elliptic().punctured()


@pytest.fixture
def open_genus_one():
    return curve_open(1, 1)


@pytest.fixture
def plane_curve_complement():
    return p2_minus_curve(1)

"""Pytest configuration and fixtures."""

from fractions import Fraction

import pytest

from jet_poisson.models.polynomial import var
from jet_poisson.services.jet import build_jet_ring
from jet_poisson.services.liealg import make_sl2, regular_slice_sl2
from jet_poisson.utils.parsing import fixture_path, load_ring


@pytest.fixture
def sl2():
    """sl2 as a Lie-Poisson algebra on the free ring C[e, h, f]."""
    return make_sl2()


@pytest.fixture
def sl2_ring(sl2):
    return sl2.presentation


@pytest.fixture
def cone_ring():
    """The nilpotent cone of sl2, as shipped in sl2.json."""
    return load_ring(fixture_path("sl2.json"))


@pytest.fixture
def plane_ring():
    return load_ring(fixture_path("symplectic_plane.json"))


@pytest.fixture
def slice_ring():
    return regular_slice_sl2().presentation


@pytest.fixture
def sl2_jet(sl2_ring):
    """Factory for jet rings of the free sl2 ring."""
    return lambda n: build_jet_ring(sl2_ring, n)


@pytest.fixture
def ehf():
    """The coordinates e, h, f as polynomials."""
    return var("e"), var("h"), var("f")


@pytest.fixture
def omega(ehf):
    """The sl2 Casimir ef + h^2/4."""
    e, h, f = ehf
    return e * f + (h * h).scale(Fraction(1, 4))

import math

import pytest

from gerstner_waves import PhysicalConstants, resolve_classical, resolve_geophysical_from_m

G = 9.8
OMEGA = 7.3e-5


@pytest.fixture
def classical_constants():
    return PhysicalConstants(omega=0.0)


@pytest.fixture
def geo_constants():
    return PhysicalConstants()


@pytest.fixture
def gerstner(classical_constants):
    """Classical zero-current wave: m = c = sqrt(g/k), k = 1."""
    return resolve_classical(classical_constants, 1.0, +1, 0.0, b0=0.0)


@pytest.fixture
def gerstner_deep(classical_constants):
    """Classical zero-current wave with the surface at b0 = -0.5."""
    return resolve_classical(classical_constants, 1.0, +1, 0.0, b0=-0.5)


@pytest.fixture
def classical_with_current(classical_constants):
    """Classical wave over a moderate favorable current, b0 = -0.5."""
    return resolve_classical(classical_constants, 1.0, +1, G ** 0.25, b0=-0.5)


@pytest.fixture
def geo_from_m(geo_constants):
    """Geophysical wave with m = -sqrt(g): near-zero wave speed, O(1) current."""
    return resolve_geophysical_from_m(geo_constants, 1.0, -math.sqrt(G), b0=-0.5)

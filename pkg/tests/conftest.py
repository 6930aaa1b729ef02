import pytest

from src.groebner import GroebnerIdeal, QuotientRing
from src.polynomial import PolyRing


@pytest.fixture
def xy2():
    """F_2[x, y] under graded reverse lex."""
    return PolyRing.create(2, ['x', 'y'])


@pytest.fixture
def plane(xy2):
    return QuotientRing.polynomial_ring(xy2)


@pytest.fixture
def hypersurface(xy2):
    """F_2[x, y]/(x^2 + xy), one-dimensional with depth 1."""
    return QuotientRing(xy2, GroebnerIdeal(xy2, [xy2.parse('x^2 + x*y')]))

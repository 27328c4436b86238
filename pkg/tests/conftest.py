import pytest

from hyperell.domains import QQ
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly


@pytest.fixture
def QT() -> TowerField:
    """Fresh rational tower (depth 0)."""
    return TowerField(QQ)


def ipoly(dom, *coeffs):
    """Polynomial from integer coefficients, low to high."""
    return UniPoly.from_ints(dom, list(coeffs))

"""Number-field towers: adjunction, arithmetic, promotion."""

import pytest

from conftest import ipoly
from hyperell.domains import QQ, rational
from hyperell.errors import ReduciblePolynomialError, ResourceLimitError
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly


def sqrt2_tower():
    t = TowerField(QQ)
    return t.adjoin(ipoly(t, -2, 0, 1), name="a")


def test_adjoin_and_relation():
    t = sqrt2_tower()
    a = t.generator(0)
    assert t.elements_equal(t.mul(a, a), t.from_int(2))


def test_inverse_in_extension():
    t = sqrt2_tower()
    a = t.generator(0)
    # 1/(1 + sqrt2) = sqrt2 - 1
    v = t.add(t.one, a)
    inv = t.inv(v)
    assert t.elements_equal(inv, t.sub(a, t.one))
    assert t.elements_equal(t.mul(v, inv), t.one)


def test_nested_tower_arithmetic():
    t = sqrt2_tower()
    t2 = t.adjoin(UniPoly(t, [t.neg(t.generator(0)), t.zero, t.one]), name="b")
    b = t2.generator(1)  # b^2 = sqrt2, so b^4 = 2
    b2 = t2.mul(b, b)
    b4 = t2.mul(b2, b2)
    assert t2.elements_equal(b4, t2.from_int(2))
    assert t2.degree == 4


def test_reducible_minpoly_rejected():
    t = TowerField(QQ)
    with pytest.raises(ReduciblePolynomialError):
        t.adjoin(ipoly(t, -4, 0, 1), name="a")  # x^2 - 4 = (x-2)(x+2)


def test_promote_and_project():
    t = sqrt2_tower()
    t2 = t.adjoin(ipoly(t, -3, 0, 1), name="c")
    v = t.add(t.generator(0), t.from_int(7))
    up = t.promote(v, t2)
    sqrt2_up = t.promote(t.generator(0), t2)
    assert t2.elements_equal(t2.mul(up, up),
                             t2.add(t2.from_int(51),
                                    t2.mul(t2.from_int(14), sqrt2_up)))
    back = t2.project(up, t)
    assert t.elements_equal(back, v)


def test_degree_budget():
    t = TowerField(QQ, budget=2)
    t = t.adjoin(ipoly(t, -2, 0, 1), name="a")
    with pytest.raises(ResourceLimitError):
        t.adjoin(ipoly(t, -3, 0, 1), name="b")


def test_to_str_roundtrip_structure():
    t = sqrt2_tower()
    v = t.add(t.mul(t.generator(0), t.lift_from_base(rational(1, 2))), t.one)
    assert t.to_str(v) == "1 + (1/2)*a"

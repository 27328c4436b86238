"""Dense univariate polynomials over exact domains."""

from hypothesis import given, settings, strategies as st

from conftest import ipoly
from hyperell.domains import QQ
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly, lcm_polys

QT = TowerField(QQ)

small_polys = st.lists(st.integers(-9, 9), min_size=1, max_size=7).map(
    lambda cs: UniPoly.from_ints(QT, cs))


def test_arithmetic():
    p = ipoly(QT, 1, 2, 1)   # (x+1)^2
    q = ipoly(QT, 1, 1)      # x+1
    assert p == q * q
    assert (p - q * q).is_zero
    assert p.divmod(q) == (q, UniPoly.zero(QT))


def test_divmod_remainder():
    p = ipoly(QT, 1, 0, 0, 1)  # x^3 + 1
    d = ipoly(QT, 1, 1)        # x + 1
    quo, rem = p.divmod(d)
    assert rem.is_zero
    assert quo == ipoly(QT, 1, -1, 1)


def test_derivative_product_rule():
    p = ipoly(QT, 3, 0, 1)
    q = ipoly(QT, -1, 2)
    lhs = (p * q).derivative()
    rhs = p.derivative() * q + p * q.derivative()
    assert lhs == rhs


@settings(max_examples=60)
@given(small_polys, small_polys)
def test_gcd_divides_both(a, b):
    if a.is_zero or b.is_zero:
        return
    g = a.gcd(b)
    assert a.divmod(g)[1].is_zero
    assert b.divmod(g)[1].is_zero


@settings(max_examples=40)
@given(small_polys, small_polys)
def test_lcm_is_common_multiple(a, b):
    if a.is_zero or b.is_zero:
        return
    m = lcm_polys([a, b])
    assert m.divmod(a)[1].is_zero
    assert m.divmod(b)[1].is_zero


def test_compose_and_evaluate():
    p = ipoly(QT, -2, 0, 1)          # x^2 - 2
    q = ipoly(QT, 1, 1)              # x + 1
    comp = p.compose(q)              # (x+1)^2 - 2
    assert comp == ipoly(QT, -1, 2, 1)
    v = comp.evaluate(QT.from_int(3))
    assert QT.elements_equal(v, QT.from_int(14))


def test_shift_pow():
    p = ipoly(QT, 1, 1)
    assert p.shift_pow(2) == ipoly(QT, 0, 0, 1, 1)


def test_to_str_parse_stability():
    p = ipoly(QT, -3, 0, 2, 1)
    assert p.to_str() == "x^3 + 2*x^2 - 3"

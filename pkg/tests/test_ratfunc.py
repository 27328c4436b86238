"""Rational functions and partial fractions."""

import random

from conftest import ipoly
from hyperell.domains import QQ
from hyperell.ratfunc import RationalFunction, partial_fractions
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly

QT = TowerField(QQ)


def test_simplification():
    num = ipoly(QT, -1, 0, 1)   # x^2 - 1
    den = ipoly(QT, 1, 1)       # x + 1
    rf = RationalFunction(num, den)
    assert rf.is_polynomial
    assert rf.num == ipoly(QT, -1, 1)


def test_derivative_quotient_rule():
    rf = RationalFunction(ipoly(QT, 0, 1), ipoly(QT, -1, 1))  # x/(x-1)
    d = rf.derivative()
    assert d == RationalFunction(ipoly(QT, -1), ipoly(QT, 1, -2, 1))


def test_partial_fractions_recombines():
    rng = random.Random(7)
    for _ in range(20):
        num = UniPoly.from_ints(QT, [rng.randint(-5, 5) for _ in range(4)])
        den = (ipoly(QT, -1, 1) ** rng.randint(1, 2)
               * ipoly(QT, 2, 1)
               * ipoly(QT, rng.randint(3, 6), 1))
        if num.is_zero:
            continue
        rf = RationalFunction(num, den)
        pf = partial_fractions(rf)
        acc = RationalFunction.from_poly(pf.poly_part)
        for p, j, t in pf.terms:
            acc = acc + RationalFunction(t, p ** j)
        assert acc == rf


def test_partial_fractions_simple_pole_data():
    # 1/((x-1)(x+2)) = (1/3)/(x-1) - (1/3)/(x+2)
    rf = RationalFunction(ipoly(QT, 1), ipoly(QT, -1, 1) * ipoly(QT, 2, 1))
    pf = partial_fractions(rf)
    assert pf.poly_part.is_zero
    assert sorted(j for _, j, _ in pf.terms) == [1, 1]


def test_compose():
    rf = RationalFunction(ipoly(QT, 0, 1), ipoly(QT, 1, 1))  # x/(x+1)
    inner = RationalFunction(ipoly(QT, 1, 1), ipoly(QT, 0, 1))  # (x+1)/x
    comp = rf.compose(inner)
    assert comp == RationalFunction(ipoly(QT, 1, 1), ipoly(QT, 1, 2))

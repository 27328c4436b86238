"""The differentiation oracle on curve functions and integral terms."""

import pytest

from conftest import ipoly
from hyperell.curves import normalize_curve
from hyperell.domains import QQ
from hyperell.expressions import (
    CurveFunction,
    EllipticExpression,
    FirstKind,
    LogTerm,
    SecondKind,
    ThirdKind,
    differentiate,
)
from hyperell.morphisms import elliptic_factors
from hyperell.ratfunc import RationalFunction
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly

QT = TowerField(QQ)
S = ipoly(QT, 0, 2, -3, 1)  # x(x-1)(x-2)


def x_rf():
    return RationalFunction.from_poly(ipoly(QT, 0, 1))


def test_curve_function_square_of_y():
    y = CurveFunction(S, RationalFunction.zero(QT), RationalFunction.one(QT))
    y2 = y * y
    assert y2.b.is_zero
    assert y2.a == RationalFunction.from_poly(S)


def test_derivative_of_y():
    y = CurveFunction(S, RationalFunction.zero(QT), RationalFunction.one(QT))
    dy = y.derivative()
    # y' = S'/(2y) = (S'/(2S)) * y
    expect = RationalFunction.from_poly(S.derivative()) \
        / RationalFunction.from_poly(S)
    assert dy.a.is_zero
    assert dy.b + dy.b == expect


def test_first_kind_derivative():
    mor = elliptic_factors(normalize_curve(S), 2)[0]
    t = mor.tower
    term = FirstKind(t.one, mor)
    # d/dx F(F(x)|kappa) = F'/(G*sqrt(S))
    assert term.derivative_b() == mor.F.derivative() / mor.G


def test_second_kind_derivative():
    mor = elliptic_factors(normalize_curve(S), 2)[0]
    t = mor.tower
    term = SecondKind(t.one, mor)
    assert term.derivative_b() == mor.F * mor.F.derivative() / mor.G


def test_third_kind_rejects_bad_parameter():
    mor = elliptic_factors(normalize_curve(S), 2)[0]
    t = mor.tower
    with pytest.raises(ValueError):
        ThirdKind(t.one, mor, t.from_int(5), t.from_int(1))


def test_log_term_derivative_is_rational_in_y():
    # R = x + y: d/dx ln(R/conj(R)) has a pure y/sqrt(S) derivative shape
    R = CurveFunction(S, x_rf(), RationalFunction.one(QT))
    term = LogTerm(QT.one, R)
    d = term.derivative_cf()
    assert d.a.is_zero  # the symmetric part cancels


def test_expression_oracle_zero_for_algebraic_identity():
    # d/dx of the pure algebraic function y is the expression's own oracle
    y = CurveFunction(S, RationalFunction.zero(QT), RationalFunction.one(QT))
    expr = EllipticExpression(S, y, [])
    d = differentiate(expr)
    assert d == y.derivative()

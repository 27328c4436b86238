"""The shared polynomial text grammar."""

import pytest

from hyperell.domains import QQ, rational
from hyperell.errors import ParseError, ReduciblePolynomialError
from hyperell.parsing import (
    extend_tower,
    parse_element,
    parse_poly,
    parse_ratfunc,
)
from hyperell.towers import TowerField

QT = TowerField(QQ)


def test_plain_polynomial():
    p = parse_poly("x^3 - 3*x^2 + 2*x", QT)
    assert p.to_str() == "x^3 - 3*x^2 + 2*x"


def test_products_and_parens():
    p = parse_poly("x*(x-1)*(x-2)", QT)
    assert p == parse_poly("x^3 - 3*x^2 + 2*x", QT)


def test_rational_coefficients():
    p = parse_poly("1/2*x + 3/4", QT)
    assert QQ.elements_equal(p.coeff(1), rational(1, 2))
    assert QQ.elements_equal(p.coeff(0), rational(3, 4))


def test_unary_minus_and_precedence():
    p = parse_poly("-x^2 + -3*-x", QT)
    assert p == parse_poly("3*x - x^2", QT)


def test_rational_function():
    rf = parse_ratfunc("(x + 1/2)/(x^2 - x - 1/2)", QT)
    assert rf.num.degree == 1 and rf.den.degree == 2
    assert parse_ratfunc(rf.to_str(), QT) == rf


def test_generators():
    t = extend_tower(QT, "a^2 - 2")
    v = parse_element("1/2*a + 3", t)
    a = t.generator(0)
    assert t.elements_equal(v, t.add(t.mul(t.lift_from_base(rational(1, 2)), a),
                                     t.from_int(3)))


def test_nested_extension():
    t = extend_tower(QT, "a^2 - 2")
    t2 = extend_tower(t, "b^2 - a")  # b^4 = 2
    b = t2.generator(1)
    b4 = t2.mul(t2.mul(b, b), t2.mul(b, b))
    assert t2.elements_equal(b4, t2.from_int(2))


def test_errors():
    with pytest.raises(ParseError):
        parse_poly("x + $", QT)
    with pytest.raises(ParseError):
        parse_poly("1/(x-1)", QT)  # not a polynomial
    with pytest.raises(ParseError):
        parse_poly("x^y", QT)  # non-integer exponent
    with pytest.raises(ParseError):
        parse_poly("y + 1", QT)  # undeclared symbol
    with pytest.raises(ParseError):
        parse_poly("x + (1", QT)  # unbalanced
    with pytest.raises(ReduciblePolynomialError):
        extend_tower(QT, "a^2 - 4")
    with pytest.raises(ParseError):
        extend_tower(QT, "a*b - 1")  # two new symbols


def test_division_by_zero_poly():
    with pytest.raises(ParseError):
        parse_ratfunc("1/(x - x)", QT)

"""Hermite reduction: multiple poles are stripped, exactly."""

import random

import pytest

from conftest import ipoly
from hyperell.curves import normalize_curve
from hyperell.domains import QQ
from hyperell.expressions import CurveFunction, differentiate
from hyperell.factor import factor_unipoly
from hyperell.integrate import HyperellipticIntegrand, hermite_reduce
from hyperell.morphisms import elliptic_factors
from hyperell.ratfunc import RationalFunction, _lift
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly

QT = TowerField(QQ)


def check_contract(I, L):
    """d/dx(H) + J/sqrt(S) == I, J simple poles off S and infinity."""
    H, J = hermite_reduce(I, L)
    M = H.dom
    S = H.S
    dH = differentiate(H)
    target = I.promote(M).as_curve_function()
    resid = CurveFunction(S, RationalFunction.zero(M),
                          J / RationalFunction.from_poly(S))
    assert (dH + resid - target).is_zero
    if not J.is_zero:
        for pi, e in factor_unipoly(J.den):
            assert e == 1
            assert not _lift(S, M).divmod(pi)[1].is_zero
        assert J.num.degree - J.den.degree <= I.curve.genus - 1
    return H, J


@pytest.fixture(scope="module")
def genus1():
    S = ipoly(QT, 0, 2, -3, 1)
    curve = normalize_curve(S)
    return curve, elliptic_factors(curve, 2)


@pytest.fixture(scope="module")
def genus2():
    S = ipoly(QT, 1, 6, 9, -4, -10, 4)
    curve = normalize_curve(S)
    return curve, elliptic_factors(curve, 2, normalized=True)


def test_second_kind_needed(genus1):
    curve, L = genus1
    I = HyperellipticIntegrand(ipoly(QT, 0, 1), ipoly(QT, 1), curve)
    H, J = check_contract(I, L)
    assert any(t.kind == "second" for t in H.terms)


def test_double_pole_stripped(genus1):
    curve, L = genus1
    I = HyperellipticIntegrand(ipoly(QT, 1), ipoly(QT, 9, -6, 1), curve)
    H, J = check_contract(I, L)  # 1/((x-3)^2 sqrt(S))
    if not J.is_zero:
        assert all(pi.degree == 1 and e == 1
                   for pi, e in factor_unipoly(J.den))


def test_branch_pole(genus1):
    curve, L = genus1
    # 1/(x^2 sqrt(S)): pole at a root of S
    I = HyperellipticIntegrand(ipoly(QT, 1), ipoly(QT, 0, 0, 1), curve)
    H, J = check_contract(I, L)
    if not J.is_zero:
        assert all(not curve.S.divmod(pi)[1].is_zero
                   for pi, _ in factor_unipoly(J.den))


def test_random_genus2_poles(genus2):
    curve, L = genus2
    rng = random.Random(11)
    for _ in range(6):
        r = rng.randint(-4, 4)
        e = rng.randint(1, 3)
        num = UniPoly.from_ints(QT, [rng.randint(-3, 3) for _ in range(3)]
                                or [1])
        if num.is_zero:
            num = UniPoly.one(QT)
        den = ipoly(QT, -r, 1) ** e
        if curve.S.evaluate(QT.from_int(r)) == QT.zero:
            continue
        I = HyperellipticIntegrand(num, den, curve)
        check_contract(I, L)


def test_no_morphisms_can_fail_honestly(genus1):
    curve, _ = genus1
    I = HyperellipticIntegrand(ipoly(QT, 0, 0, 1), ipoly(QT, 1), curve)
    # x^2/sqrt(S) grows at infinity; without morphisms the ansatz cannot
    # absorb the second-kind direction
    from hyperell.errors import NotDecomposableError
    with pytest.raises(NotDecomposableError) as exc:
        hermite_reduce(I, [])
    assert exc.value.stage == "hermite"

"""Elliptic morphism search and verification."""

from conftest import ipoly
from hyperell.curves import normalize_curve
from hyperell.domains import QQ
from hyperell.morphisms import (
    elliptic_factors,
    independence_rank,
    verify_morphism,
)
from hyperell.ratfunc import RationalFunction
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly

QT = TowerField(QQ)


def test_genus1_always_has_a_morphism():
    S = ipoly(QT, 0, 2, -3, 1)  # x(x-1)(x-2)
    curve = normalize_curve(S)
    L = elliptic_factors(curve, 2)
    assert len(L) == 1
    assert verify_morphism(S, L[0])


def test_relation_is_exact():
    S = ipoly(QT, 0, 2, -3, 1)
    curve = normalize_curve(S)
    mor = elliptic_factors(curve, 2)[0]
    t = mor.tower
    one = RationalFunction.one(t)
    kap = RationalFunction.from_poly(UniPoly.const(t, mor.kappa))
    S_t = S.map_coeffs(t, lambda c: QT.promote(c, t)) if t.depth else S
    lhs = RationalFunction.from_poly(S_t) * mor.G * mor.G
    assert lhs == mor.F * (mor.F - one) * (mor.F - kap)


def test_split_genus2_curve_rank2():
    S = ipoly(QT, 1, 6, 9, -4, -10, 4)  # 4x^5 - 10x^4 - 4x^3 + 9x^2 + 6x + 1
    curve = normalize_curve(S)
    L = elliptic_factors(curve, 2)
    assert len(L) == 2
    assert independence_rank(L) == 2
    for mor in L:
        assert verify_morphism(S, mor)


def test_generic_quintic_has_no_morphisms():
    S = ipoly(QT, 1, 1, 0, 0, 0, 1)  # x^5 + x + 1, rank bound 0 at p=11
    curve = normalize_curve(S)
    assert elliptic_factors(curve, 2) == []


def test_x6_minus_1_two_degree2_morphisms():
    S = ipoly(QT, -1, 0, 0, 0, 0, 0, 1)
    curve = normalize_curve(S)
    L = elliptic_factors(curve, 4)
    assert len(L) == 2
    assert independence_rank(L) == 2
    for mor in L:
        assert verify_morphism(S, mor)
        assert max(mor.F.num.degree, mor.F.den.degree) == 2


def test_morphism_json_mentions_invariants():
    S = ipoly(QT, 0, 2, -3, 1)
    curve = normalize_curve(S)
    doc = elliptic_factors(curve, 2)[0].to_json()
    assert {"kappa", "F", "G"} <= set(doc)

"""Factorization over Q, finite fields, and towers; splitting fields."""

import random

from conftest import ipoly
from hyperell.domains import QQ
from hyperell.factor import factor_unipoly, splitting_field
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly

QT = TowerField(QQ)


def reassemble(p, factors):
    lead = p.coeff(p.degree)
    acc = UniPoly.const(p.dom, lead)
    for h, e in factors:
        acc = acc * h ** e
    return acc


def test_rational_factorization_basic():
    p = ipoly(QT, -1, 0, 0, 0, 0, 1)  # x^5 - 1
    fs = factor_unipoly(p)
    degs = sorted(h.degree for h, _ in fs)
    assert degs == [1, 4]
    assert reassemble(p, fs) == p


def test_repeated_factors():
    p = ipoly(QT, 1, 2, 1) * ipoly(QT, -2, 1)  # (x+1)^2 (x-2)
    fs = dict((h.to_str(), e) for h, e in factor_unipoly(p))
    assert fs == {"x + 1": 2, "x - 2": 1}


def test_random_reexpansion():
    rng = random.Random(20240817)
    for _ in range(40):
        cs = [rng.randint(-8, 8) for _ in range(rng.randint(2, 9))]
        if not any(cs):
            continue
        while cs and cs[-1] == 0:
            cs.pop()
        if len(cs) < 2:
            continue
        p = UniPoly.from_ints(QT, cs)
        assert reassemble(p, factor_unipoly(p)) == p


def test_factor_over_extension():
    t = QT.adjoin(ipoly(QT, -2, 0, 1), name="a")  # Q(sqrt2)
    p = ipoly(t, -2, 0, 1)
    fs = factor_unipoly(p)
    assert sorted(h.degree for h, _ in fs) == [1, 1]
    assert reassemble(p, fs) == p


def test_splitting_field_vieta():
    p = ipoly(QT, -2, 0, 0, 1)  # x^3 - 2, splitting field of degree 6
    L, roots = splitting_field(p)
    assert len(roots) == 3
    prod = UniPoly.one(L)
    for r in roots:
        prod = prod * UniPoly(L, [L.neg(r), L.one])
    lifted = p.map_coeffs(L, lambda c: QT.promote(c, L)) if L.depth else p
    assert prod == lifted
    assert L.degree == 6


def test_splitting_field_cyclotomic():
    p = ipoly(QT, -1, 0, 0, 1)  # x^3 - 1
    L, roots = splitting_field(p)
    assert len(roots) == 3
    assert L.degree == 2  # Q(omega)

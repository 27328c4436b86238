"""Sparse multivariate polynomials, Groebner bases, zero-dimensional solving."""

from conftest import ipoly
from hyperell.domains import QQ
from hyperell.multipoly import PolyRing, multi_gcd
from hyperell.solve import groebner, is_zero_dimensional, solve_zero_dim
from hyperell.towers import TowerField

QT = TowerField(QQ)


def ring2():
    return PolyRing(QT, ["x", "y"], "lex")


def test_ring_arithmetic():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    p = (x + y) * (x - y)
    assert p == x * x - y * y


def test_multi_gcd():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    a = (x + y) * (x + y) * x
    b = (x + y) * y
    g = multi_gcd(a, b)
    # gcd is x + y up to a unit
    assert g.total_degree() == 1


def test_groebner_linear():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G = groebner([x + y, x - y], R)
    lead_monoms = sorted(g.terms[0][0] for g in G)
    assert lead_monoms == [(0, 1), (1, 0)]  # {x, y}


def test_groebner_inconsistent():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G = groebner([x * y - R.one(), x * x], R)
    assert any(g.total_degree() == 0 for g in G)


def test_zero_dimensional_detection():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    G = groebner([x * x - R.one(), y * y * y - R.one()], R)
    assert is_zero_dimensional(G, R)
    G2 = groebner([x * y - R.one()], R)
    assert not is_zero_dimensional(G2, R)


def test_solve_zero_dim_rational_points():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    # x^2 = 1, y = x + 1  ->  (1, 2), (-1, 0)
    sols = solve_zero_dim([x * x - R.one(), y - x - R.one()], QT, R)
    pts = set()
    for s in sols:
        t = s.tower
        xv, yv = s.assignment["x"], s.assignment["y"]
        pts.add((t.to_str(xv), t.to_str(yv)))
    assert pts == {("1", "2"), ("-1", "0")}


def test_solve_extends_tower():
    R = ring2()
    x, y = R.var("x"), R.var("y")
    # x^2 = 2 needs an extension; y pinned linearly
    sols = solve_zero_dim([x * x - R.const(QT.from_int(2)), y - x], QT, R)
    assert len(sols) == 2
    for s in sols:
        t = s.tower
        assert t.depth >= 1
        xv = s.assignment["x"]
        assert t.elements_equal(t.mul(xv, xv), t.from_int(2))

"""Zeta numerators mod p and the elliptic-factor rank bound."""

import pytest

from conftest import ipoly
from hyperell.curves import normalize_curve
from hyperell.domains import QQ
from hyperell.errors import BadReductionError
from hyperell.towers import TowerField
from hyperell.unipoly import UniPoly
from hyperell.zeta import (
    UNBOUNDED,
    count_points,
    psi_from_counts,
    psi_power,
    rank_bound,
)

QT = TowerField(QQ)


def curve_of(*coeffs):
    return normalize_curve(UniPoly.from_ints(QT, list(coeffs)))


def test_count_points_genus1():
    # y^2 = x^3 + x + 1 over F_5: direct enumeration
    C = curve_of(1, 1, 0, 1)
    n, _ = count_points(C, 5, 1)
    brute = 1
    for x in range(5):
        v = (x**3 + x + 1) % 5
        brute += sum(1 for y in range(5) if (y * y) % 5 == v)
    assert n == brute


def test_bad_reduction_detected():
    C = curve_of(1, 1, 0, 0, 0, 1)  # disc(x^5+x+1) divisible by 3
    with pytest.raises(BadReductionError):
        count_points(C, 3, 1)


def test_functional_equation_enforced():
    C = curve_of(2, 1, 0, 0, 0, 1)
    g = C.genus
    counts, mods = [], []
    for i in range(1, g + 1):
        n, m = count_points(C, 7, i)
        counts.append(n)
        mods.append(m)
    psi = psi_from_counts(counts, 7, modulus_polys=mods)
    q = 7
    for i in range(g + 1):
        assert psi.coeffs[2 * g - i] == q ** (g - i) * psi.coeffs[i]


def test_psi_power_matches_counting():
    C = curve_of(2, 1, 0, 0, 0, 1)
    g = C.genus
    counts = [count_points(C, 5, i)[0] for i in range(1, g + 1)]
    psi = psi_from_counts(counts, 5)
    psi2 = psi_power(psi, 2)
    n2, _ = count_points(C, 5, 2)
    # a1 of Psi_{q} equals #C(F_q) - q - 1
    assert psi2.coeffs[1] == n2 - 25 - 1


def test_rank_bound_table_spot():
    assert rank_bound(curve_of(-1, 0, 0, 0, 0, 1), 11).value == 0
    assert rank_bound(curve_of(-1, 0, 0, 0, 0, 0, 0, 0, 0, 1), 19).value == 1


def test_rank_bound_unbounded_at_bad_prime():
    rb = rank_bound(curve_of(-1, 0, 0, 0, 0, 1), 5)  # 5 | disc(x^5 - 1)
    assert rb.value == UNBOUNDED
    assert not rb.is_bounded


def test_rank_bound_json_shape():
    rb = rank_bound(curve_of(-1, 0, 0, 0, 0, 1), 11)
    doc = rb.to_json()
    assert doc["prime"] == 11 and doc["value"] == 0
    assert all(isinstance(v, int) for v in doc["perK"].values())

"""Zeta-function data mod p and the elliptic-factor rank bound.

For a good prime p, the numerator Ψ_p of the local zeta function is
assembled from exact point counts N_1..N_g over F_p..F_{p^g}; Ψ_{p^k} is
then obtained by powering Ψ_p's roots through an exact resultant.  The
number of irreducible factors of degree ≤ 2 of Ψ_{p^k} over Q (degree-1
factors counted 1/2) bounds the number of elliptic factors of the
Jacobian; the bound reported is the maximum over all useful k.
"""

from __future__ import annotations

import sympy

from .curves import HyperellipticCurve
from .domains import QQ, mpq, rat_den, rat_num
from .errors import BadReductionError, DomainMismatchError, ResourceLimitError
from .factor import factor_unipoly
from .finitefields import ExtField, PrimeField, is_probable_prime
from .towers import TowerField
from .unipoly import UniPoly

UNBOUNDED = "UNBOUNDED"

DEFAULT_COUNT_BUDGET = 10 ** 9


class ZetaPsi:
    """Ψ_{p^k}(T): integer coefficients a_0..a_2g, plus counting provenance."""

    __slots__ = ("p", "k", "coeffs", "counts", "modulus_polys")

    def __init__(self, p, k, coeffs, counts=(), modulus_polys=()):
        self.p = p
        self.k = k
        self.coeffs = tuple(int(c) for c in coeffs)
        self.counts = tuple(counts)
        self.modulus_polys = tuple(modulus_polys)
        g = self.genus
        q = p ** k
        if self.coeffs[0] != 1:
            raise ValueError("zeta numerator must have constant term 1")
        for i in range(g + 1):
            if self.coeffs[2 * g - i] != q ** (g - i) * self.coeffs[i]:
                raise ValueError("functional equation violated")
        _check_root_moduli(self.coeffs, q)

    @property
    def genus(self) -> int:
        return (len(self.coeffs) - 1) // 2

    def poly(self) -> UniPoly:
        return UniPoly.from_ints(QQ, self.coeffs)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "coefficients": list(self.coeffs),
            "counts": list(self.counts),
            "modulusPolynomials": [list(m) for m in self.modulus_polys],
        }

    def __repr__(self):
        return f"ZetaPsi(p={self.p}, k={self.k}, {self.poly().to_str('T')})"


class RankBound:
    """Upper bound for the number of elliptic factors, or UNBOUNDED."""

    __slots__ = ("prime", "value", "breakdown")

    def __init__(self, prime, value, breakdown=None):
        self.prime = prime
        self.value = value  # int or UNBOUNDED
        self.breakdown = dict(breakdown or {})
        if value != UNBOUNDED and self.breakdown:
            assert value == max(self.breakdown.values())

    @property
    def is_bounded(self) -> bool:
        return self.value != UNBOUNDED

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "value": self.value,
            "perK": {str(k): v for k, v in sorted(self.breakdown.items())},
        }

    def __repr__(self):
        return f"RankBound(p={self.prime}, {self.value})"


def _check_root_moduli(coeffs, q, tol=1e-6):
    # reciprocal roots must have |beta|^2 = q (Weil bound sanity check)
    rev = sympy.Poly(list(coeffs), sympy.Symbol("T"))
    rev = rev.quo(rev.gcd(rev.diff()))  # repeated roots break mpmath's solver
    for r in rev.nroots(n=30, maxsteps=200):
        m2 = abs(complex(r)) ** 2
        if abs(m2 - q) > tol * q:
            raise ValueError(f"zeta root modulus check failed: |root|^2 = {m2}")


def reduce_poly_mod_p(S: UniPoly, p: int):
    """Coefficients of S mod p as ints; raises on bad denominators."""
    out = []
    for c in _rational_coeffs(S):
        d = rat_den(c)
        if d % p == 0:
            raise BadReductionError(f"coefficient denominator divisible by {p}")
        out.append(rat_num(c) * pow(d, -1, p) % p)
    return out


def _rational_coeffs(S: UniPoly):
    dom = S.dom
    if dom == QQ:
        return list(S.cs)
    if isinstance(dom, TowerField):
        out = []
        for c in S.cs:
            flat = dom.flatten(c)
            if any(q != 0 for q in flat[1:]):
                raise DomainMismatchError(
                    "curve model has irrational coefficients; reduction mod p "
                    "needs a model over Q"
                )
            out.append(flat[0])
        return out
    raise DomainMismatchError("expected a curve over Q or a tower over Q")


def count_points(C: HyperellipticCurve, p: int, k: int = 1,
                 budget: int = DEFAULT_COUNT_BUDGET):
    """N_k = #{(x, y) in F_{p^k}^2 : y^2 = S(x)} + 1 (point at infinity)."""
    if p ** k > budget:
        raise ResourceLimitError(
            f"point count over F_{p}^{k} exceeds budget {budget}", stage="count_points"
        )
    scoeffs = reduce_poly_mod_p(C.S, p)
    disc_check_mod(C.S, p)
    if k == 1:
        coeffs = [c % p for c in scoeffs]
        squares = [0] * p
        for y in range(p):
            squares[y * y % p] += 1
        total = 1
        for x in range(p):
            acc = 0
            for c in reversed(coeffs):
                acc = (acc * x + c) % p
            total += squares[acc]
        return total, (0, 1)
    F = ExtField.of_degree(p, k)
    coeffs = [F.from_base(c) for c in scoeffs]
    squares = {}
    for y in F.elements():
        v = F.mul(y, y)
        squares[v] = squares.get(v, 0) + 1
    total = 1
    for x in F.elements():
        acc = F.zero
        for c in reversed(coeffs):
            acc = F.add(F.mul(acc, x), c)
        total += squares.get(acc, 0)
    return total, F.modulus


def disc_check_mod(S: UniPoly, p: int):
    """Raise BadReductionError if p = 2 or the reduced curve is singular."""
    if p == 2:
        raise BadReductionError("p = 2 is always bad for y^2 = S(x)")
    disc = S.discriminant()
    flat = disc if S.dom == QQ else S.dom.flatten(disc)[0]
    num, den = rat_num(flat), rat_den(flat)
    if den % p == 0:
        raise BadReductionError(f"discriminant denominator divisible by {p}")
    if num % p == 0:
        raise BadReductionError(f"p = {p} divides disc(S): bad reduction")


def psi_from_counts(counts, p: int, modulus_polys=()) -> ZetaPsi:
    """Ψ_p from the g point counts N_1..N_g (exact exp of the zeta series)."""
    g = len(counts)
    # e(T) = exp(sum N_i T^i / i) up to degree g
    e = [mpq(1)] + [mpq(0)] * g
    for n in range(1, g + 1):
        acc = mpq(0)
        for i in range(1, n + 1):
            acc += mpq(counts[i - 1]) * e[n - i]
        e[n] = acc / n
    # Ψ = e(T)·(1−T)(1−pT) truncated at degree g
    mult = [mpq(1), mpq(-1 - p), mpq(p)]
    a = [mpq(0)] * (2 * g + 1)
    for n in range(g + 1):
        acc = mpq(0)
        for i in range(min(n, 2) + 1):
            acc += mult[i] * e[n - i]
        a[n] = acc
    for i in range(g):
        a[2 * g - i] = mpq(p) ** (g - i) * a[i]
    ints = []
    for c in a:
        if rat_den(c) != 1:
            raise ValueError(f"non-integer zeta coefficient {c}: counting bug "
                             "or bad reduction")
        ints.append(rat_num(c))
    return ZetaPsi(p, 1, ints, counts=counts, modulus_polys=modulus_polys)


def psi_power(psi: ZetaPsi, k: int) -> ZetaPsi:
    """Ψ_{p^k}: the polynomial whose reciprocal roots are the k-th powers."""
    if k == 1:
        return psi
    T, z = sympy.symbols("T z")
    psi_z = sum(int(c) * z ** i for i, c in enumerate(psi.coeffs))
    res = sympy.resultant(sympy.Poly(psi_z, z), sympy.Poly(T - z ** k, z))
    poly = sympy.Poly(res, T)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    if coeffs[0] == -1:
        coeffs = [-c for c in coeffs]
    if coeffs[0] != 1:
        raise ValueError("unexpected unit in root-powering resultant")
    return ZetaPsi(psi.p, k, coeffs, counts=psi.counts,
                   modulus_polys=psi.modulus_polys)


def useful_exponents(genus: int):
    """All k with φ(k) ≤ 2·genus (cyclotomic degrees that can contribute)."""
    bound = 2 * genus
    out = []
    for k in range(1, 2 * (2 * genus) ** 2 + 1):
        if sympy.totient(k) <= bound:
            out.append(k)
    return out


def rank_bound(C: HyperellipticCurve, p: int,
               budget: int = DEFAULT_COUNT_BUDGET) -> RankBound:
    """Upper bound on the number of elliptic factors of Jac(y² = S)."""
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    g = C.genus
    try:
        counts = []
        mods = []
        for i in range(1, g + 1):
            n, m = count_points(C, p, i, budget=budget)
            counts.append(n)
            mods.append(m)
        psi1 = psi_from_counts(counts, p, modulus_polys=mods)
    except BadReductionError:
        return RankBound(p, UNBOUNDED)
    breakdown = {}
    for k in useful_exponents(g):
        psik = psi_power(psi1, k)
        halves = 0  # twice the count, to keep it integral while summing
        for f, mult in factor_unipoly(psik.poly()):
            if f.degree == 1:
                halves += mult
            elif f.degree == 2:
                halves += 2 * mult
        assert halves % 2 == 0, "degree-1 factors must pair up"
        breakdown[k] = halves // 2
    value = max(breakdown.values())
    assert value <= g
    return RankBound(p, value, breakdown)

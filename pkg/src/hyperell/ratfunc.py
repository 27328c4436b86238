"""Univariate rational functions and partial fraction decompositions.

``RationalFunction`` keeps gcd(num, den) = 1 with a monic denominator.
``PartialFractionForm`` stores, per irreducible denominator factor P_i and
pole order j, a numerator T_ij written as a polynomial in a formal root α
of P_i; the input equals

    poly_part + sum_i sum_j sum_{P_i(α)=0} T_ij(α) / (x − α)^j.

Conjugate-sum reconstruction is exact: it is a coefficient-wise trace from
K(α) down to K, computed with Newton power sums, so the decomposition can
be verified without ever leaving the base field.
"""

from __future__ import annotations

from .domains import QQ
from .errors import DivisionByZeroError, DomainMismatchError
from .factor import _poly_key, factor_unipoly
from .towers import TowerField, newton_power_sums, rational_tower
from .unipoly import UniPoly


class RationalFunction:
    """Quotient of two UniPolys in lowest terms, denominator monic."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly):
        if den.is_zero:
            raise DivisionByZeroError("zero denominator")
        if num.dom != den.dom:
            raise DomainMismatchError("numerator/denominator domain mismatch")
        g = num.gcd(den) if not num.is_zero else den
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.lc
        if not den.dom.is_one(lc):
            num = num.scale(den.dom.inv(lc))
            den = den.monic()
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p: UniPoly) -> "RationalFunction":
        return cls(p, UniPoly.one(p.dom))

    @classmethod
    def zero(cls, dom) -> "RationalFunction":
        return cls(UniPoly.zero(dom), UniPoly.one(dom))

    @classmethod
    def one(cls, dom) -> "RationalFunction":
        return cls(UniPoly.one(dom), UniPoly.one(dom))

    @property
    def dom(self):
        return self.num.dom

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunction({self.to_str()})"

    def __add__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        other = self._coerce(other)
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __mul__(self, other):
        other = self._coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise DivisionByZeroError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __pow__(self, e: int):
        if e >= 0:
            return RationalFunction(self.num ** e, self.den ** e)
        inv = RationalFunction(self.den, self.num)
        return inv ** (-e)

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, UniPoly):
            return RationalFunction.from_poly(other)
        raise TypeError(f"cannot combine RationalFunction with {type(other)!r}")

    def scale(self, c) -> "RationalFunction":
        return RationalFunction(self.num.scale(c), self.den)

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def evaluate(self, v):
        dnm = self.den.evaluate(v)
        if self.dom.is_zero(dnm):
            raise DivisionByZeroError("pole of rational function")
        return self.dom.div(self.num.evaluate(v), dnm)

    def compose(self, other: "RationalFunction") -> "RationalFunction":
        """Substitute a rational function for x."""
        other = self._coerce(other)
        n = max(self.num.degree, self.den.degree)
        # f(u/v) * v^n for both num and den, then divide
        num = _poly_at_ratfunc(self.num, other, n)
        den = _poly_at_ratfunc(self.den, other, n)
        return RationalFunction(num, den)

    def map_coeffs(self, new_dom, fn) -> "RationalFunction":
        return RationalFunction(
            self.num.map_coeffs(new_dom, fn), self.den.map_coeffs(new_dom, fn)
        )

    def to_str(self, var: str = "x") -> str:
        if self.den.degree == 0 and self.dom.is_one(self.den.lc):
            return self.num.to_str(var)
        ns = self.num.to_str(var)
        ds = self.den.to_str(var)
        if any(op in ns[1:] for op in "+-"):
            ns = f"({ns})"
        if any(op in ds[1:] for op in "+-") or "*" in ds or "/" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"


def _poly_at_ratfunc(p: UniPoly, f: RationalFunction, n: int) -> UniPoly:
    """p(num/den) * den^n as a polynomial (n >= deg p)."""
    out = UniPoly.zero(p.dom)
    u, v = f.num, f.den
    for i in range(p.degree + 1):
        c = p.coeff(i)
        if p.dom.is_zero(c):
            continue
        out = out + (u ** i * v ** (n - i)).scale(c)
    return out


class PartialFractionForm:
    """poly_part + sum over (P_i, j, T_ij) of sum_{P_i(α)=0} T_ij(α)/(x−α)^j."""

    __slots__ = ("poly_part", "terms")

    def __init__(self, poly_part: UniPoly, terms):
        self.poly_part = poly_part
        # terms: list of (P_i: monic irreducible UniPoly over K,
        #                 j: pole order, T_ij: UniPoly in α over K, deg < deg P_i)
        self.terms = list(terms)

    def reconstruct(self) -> RationalFunction:
        total = RationalFunction.from_poly(self.poly_part)
        for p, j, t in self.terms:
            total = total + conjugate_sum(p, j, t)
        return total

    def __repr__(self):
        bits = [self.poly_part.to_str()]
        for p, j, t in self.terms:
            bits.append(f"Sum_{{{p.to_str('a')}=0}} ({t.to_str('a')})/(x-a)^{j}")
        return " + ".join(bits)


def as_tower(dom) -> TowerField:
    """View a coefficient field as a tower (Q becomes the trivial tower)."""
    if isinstance(dom, TowerField):
        return dom
    if dom == QQ:
        return rational_tower()
    return TowerField(dom, ())


def quotient_ring(K: TowerField, p: UniPoly) -> TowerField:
    """K[α]/(p(α)) as a one-step extension; p monic irreducible over K."""
    return K.adjoin(p.monic(), check=False)


def trace_down(Ki: TowerField, elem, power_sums):
    """Trace of an element of K(α) down to K, given power sums of the minpoly.

    ``power_sums`` is [p_0, p_1, ...] with p_j = sum of α_conj^j.
    """
    K = Ki.down
    acc = K.zero
    for j, e in enumerate(elem):
        acc = K.add(acc, K.mul(e, power_sums[j]))
    return acc


def conjugate_sum(p: UniPoly, j: int, t: UniPoly) -> RationalFunction:
    """sum_{p(α)=0} t(α)/(x−α)^j as a rational function over p's field."""
    K = as_tower(p.dom)
    pK = _lift(p, K).monic()
    tK = _lift(t, K)
    d = pK.degree
    Ki = quotient_ring(K, pK)
    alpha = Ki.generator(-1)
    # q(x) = p(x)/(x−α) over K(α)
    pKi = pK.map_coeffs(Ki, Ki.lift_down)
    q, r = pKi.divmod(UniPoly(Ki, [Ki.neg(alpha), Ki.one]))
    assert r.is_zero
    t_alpha = _eval_mod(tK, Ki)
    num_ext = (q ** j).scale(t_alpha)
    sums = [K.from_int(d)] + newton_power_sums(pK, max(1, d - 1))
    num = UniPoly(K, [trace_down(Ki, c, sums) for c in num_ext.cs] or [K.zero])
    return RationalFunction(num, pK ** j)


def _eval_mod(t: UniPoly, Ki: TowerField):
    """t(α) as an element of K[α]/(p)."""
    alpha = Ki.generator(-1)
    acc = Ki.zero
    for c in reversed(t.cs):
        acc = Ki.add(Ki.mul(acc, alpha), Ki.lift_down(c))
    return acc


def partial_fractions(f: RationalFunction, factored_den=None) -> PartialFractionForm:
    """Full partial fraction decomposition with conjugate roots kept grouped.

    Works over Q or a number-field tower.  If the caller has already
    factored the denominator it can pass ``factored_den`` as a list of
    (irreducible monic factor, multiplicity).
    """
    K = as_tower(f.dom)
    num = _lift(f.num, K)
    den = _lift(f.den, K)
    poly_part, rem = num.divmod(den)
    terms = []
    factors = factored_den or factor_unipoly(den)
    for p, m in factors:
        p = _lift(p, K).monic()
        d = p.degree
        Ki = quotient_ring(K, p)
        alpha = Ki.generator(-1)
        shift = UniPoly(Ki, [alpha, Ki.one])  # x = α + u
        rest = den.exact_div(p ** m)
        a_u = _truncate(rem.map_coeffs(Ki, Ki.lift_down).compose(shift), m)
        rest_u = _truncate(rest.map_coeffs(Ki, Ki.lift_down).compose(shift), m)
        p_u = p.map_coeffs(Ki, Ki.lift_down).compose(shift)
        s_u = UniPoly(Ki, p_u.cs[1:])  # p(α+u)/u; s_u(0) = p′(α) ≠ 0
        h = _truncate(_pow_trunc(s_u, m, m) * rest_u, m)
        w = _truncate(a_u * _series_inv(h, m), m)
        for l in range(1, m + 1):
            coef = w.coeff(m - l)
            if Ki.is_zero(coef):
                continue
            t = UniPoly(K, coef)
            terms.append((p, l, t))
    terms.sort(key=lambda plt: (plt[0].degree, _poly_key(plt[0]), plt[1]))
    return PartialFractionForm(poly_part, terms)


def _lift(p: UniPoly, K: TowerField) -> UniPoly:
    if p.dom == K:
        return p
    if p.dom == QQ or (isinstance(p.dom, TowerField) and p.dom.depth == 0):
        return UniPoly(K, [K.from_mpq(c) for c in p.cs] or [K.zero])
    if isinstance(p.dom, TowerField) and K.extends(p.dom):
        return p.map_coeffs(K, lambda c: p.dom.promote(c, K))
    raise DomainMismatchError("cannot lift polynomial into the tower")


def _truncate(p: UniPoly, n: int) -> UniPoly:
    if p.degree < n:
        return p
    return UniPoly(p.dom, p.cs[:n])


def _series_inv(h: UniPoly, n: int) -> UniPoly:
    """Inverse of h as a power series mod u^n; h(0) must be invertible."""
    dom = h.dom
    c0 = dom.inv(h.coeff(0))
    out = [c0]
    for k in range(1, n):
        acc = dom.zero
        for i in range(1, k + 1):
            acc = dom.add(acc, dom.mul(h.coeff(i), out[k - i]))
        out.append(dom.neg(dom.mul(c0, acc)))
    return UniPoly(dom, out)


def _pow_trunc(p: UniPoly, e: int, n: int) -> UniPoly:
    out = UniPoly.one(p.dom)
    base = _truncate(p, n)
    while e:
        if e & 1:
            out = _truncate(out * base, n)
        base = _truncate(base * base, n)
        e >>= 1
    return out

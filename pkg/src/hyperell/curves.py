"""Hyperelliptic curve models y² = S(x) and their normalization.

The working model is monic, squarefree, and of odd degree.  An even-degree
input is converted by sending one of its roots ρ to infinity via
x ← ρ + 1/X, and any leading coefficient is absorbed by x ← x/a combined
with an exact rescaling of y; both steps are recorded so integrands and
results can be transported between the original and normalized
coordinates.  The record keeps the Möbius map φ with x_old = φ(x_new) and
a rational function w with  S_new = w² · S_old(φ)  (so y_old = y_new / w).
"""

from __future__ import annotations

from .errors import ExtensionRequiredError
from .factor import _poly_key, factor_unipoly
from .ratfunc import RationalFunction, as_tower, _lift
from .towers import TowerField
from .unipoly import UniPoly


class NormalizationRecord:
    """How a normalized curve relates to the raw input."""

    __slots__ = ("original", "mobius", "w")

    def __init__(self, original: UniPoly, mobius, w: RationalFunction):
        self.original = original
        self.mobius = mobius  # (a, b, c, d): x_old = (a·x + b)/(c·x + d)
        self.w = w

    @property
    def is_trivial(self) -> bool:
        a, b, c, d = self.mobius
        dom = self.w.dom
        return (
            dom.is_one(a)
            and dom.is_zero(b)
            and dom.is_zero(c)
            and dom.is_one(d)
            and self.w == RationalFunction.one(dom)
        )

    def mobius_ratfunc(self) -> RationalFunction:
        a, b, c, d = self.mobius
        dom = self.w.dom
        return RationalFunction(UniPoly(dom, [b, a]), UniPoly(dom, [d, c]))

    def inverse_mobius_ratfunc(self) -> RationalFunction:
        # x_new = (d·x_old − b)/(−c·x_old + a)
        a, b, c, d = self.mobius
        dom = self.w.dom
        return RationalFunction(
            UniPoly(dom, [dom.neg(b), d]), UniPoly(dom, [a, dom.neg(c)])
        )


class HyperellipticCurve:
    """y² = S(x) with S monic, squarefree, of odd degree."""

    __slots__ = ("S", "record")

    def __init__(self, S: UniPoly, record: NormalizationRecord | None = None):
        dom = S.dom
        if not isinstance(dom, TowerField):
            S = _lift(S, as_tower(dom))
            dom = S.dom
        if S.degree < 3 or S.degree % 2 == 0:
            raise ValueError("curve model must have odd degree >= 3")
        if not S.is_monic:
            raise ValueError("curve model must be monic")
        if S.gcd(S.derivative()).degree != 0:
            raise ValueError("curve polynomial must be squarefree")
        if record is None:
            record = NormalizationRecord(
                S,
                (dom.one, dom.zero, dom.zero, dom.one),
                RationalFunction.one(dom),
            )
        self.S = S
        self.record = record

    @property
    def dom(self) -> TowerField:
        return self.S.dom

    @property
    def genus(self) -> int:
        return (self.S.degree - 1) // 2

    def __repr__(self):
        return f"HyperellipticCurve(y^2 = {self.S.to_str()})"

    def __eq__(self, other):
        return isinstance(other, HyperellipticCurve) and self.S == other.S

    def __hash__(self):
        return hash(("HyperellipticCurve", self.S))


def normalize_curve(S_raw: UniPoly, extend: bool = True) -> HyperellipticCurve:
    """Odd-degree monic model of y² = S_raw(x) with a transport record.

    An even-degree input needs a root of S_raw in the base field to send
    to infinity; with ``extend`` the field is extended by a smallest-degree
    irreducible factor, otherwise an ExtensionRequiredError reports which
    factor to adjoin.
    """
    K = as_tower(S_raw.dom)
    S = _lift(S_raw, K)
    if S.degree < 3:
        raise ValueError("need degree >= 3")
    if S.gcd(S.derivative()).degree != 0:
        raise ValueError("radicand must be squarefree")
    mob = (K.one, K.zero, K.zero, K.one)
    w = RationalFunction.one(K)
    original = S

    if S.degree % 2 == 0:
        factors = sorted(
            (f for f, _ in factor_unipoly(S)), key=lambda f: (f.degree, _poly_key(f))
        )
        if factors[0].degree > 1:
            if not extend:
                raise ExtensionRequiredError(
                    "even-degree radicand has no root in the base field; "
                    f"adjoin a root of {factors[0].to_str()}",
                    factor=factors[0],
                )
            K2 = K.adjoin(factors[0], check=False)
            S = _lift(S, K2)
            original = S
            mob = (K2.one, K2.zero, K2.zero, K2.one)
            w = RationalFunction.one(K2)
            K = K2
        linear = sorted(
            (f for f, _ in factor_unipoly(S) if f.degree == 1), key=_poly_key
        )
        rho = K.neg(linear[0].coeff(0))
        n = S.degree
        # T(X) = X^n S(rho + 1/X): reverse the Taylor shift
        shifted = S.compose(UniPoly(K, [rho, K.one]))
        cs = list(shifted.cs) + [K.zero] * (n + 1 - len(shifted.cs))
        S = UniPoly(K, list(reversed(cs)))
        v = RationalFunction(UniPoly.x(K) ** (n // 2), UniPoly.one(K))
        mob, w = _compose_step(mob, w, (rho, K.one, K.one, K.zero), v, K)

    if not S.is_monic:
        a = S.lc
        n = S.degree
        ainv = K.inv(a)
        pows = [K.one]
        for _ in range(n):
            pows.append(K.mul(pows[-1], a))
        # S_hat(x) = a^(n-1) S(x/a): coefficient j picks up a^(n-1-j)
        cs = [
            K.mul(S.coeff(n), ainv) if j == n else K.mul(S.coeff(j), pows[n - 1 - j])
            for j in range(n + 1)
        ]
        S = UniPoly(K, cs)
        v = RationalFunction(UniPoly.const(K, pows[(n - 1) // 2]), UniPoly.one(K))
        mob, w = _compose_step(mob, w, (ainv, K.zero, K.zero, K.one), v, K)

    record = NormalizationRecord(original if original.dom == K else _lift(original, K), mob, w)
    curve = HyperellipticCurve(S, record)
    # invariant: S_new = w^2 · S_old(φ)
    phi = record.mobius_ratfunc()
    lhs = RationalFunction.from_poly(curve.S)
    rhs = _poly_at(record.original, phi) * (record.w * record.w)
    assert lhs == rhs, "normalization transport is inconsistent"
    return curve


def _poly_at(p: UniPoly, f: RationalFunction) -> RationalFunction:
    out = RationalFunction.zero(f.dom)
    xpow = RationalFunction.one(f.dom)
    for c in p.cs:
        out = out + xpow.scale(c)
        xpow = xpow * f
    return out


def _compose_step(mob, w, step_mob, v: RationalFunction, K):
    """Fold x_prev = ψ(x_new), S_new = v²·S_prev(ψ) into the running record."""
    a, b, c, d = mob
    e, f, g, h = step_mob
    new_mob = (
        K.add(K.mul(a, e), K.mul(b, g)),
        K.add(K.mul(a, f), K.mul(b, h)),
        K.add(K.mul(c, e), K.mul(d, g)),
        K.add(K.mul(c, f), K.mul(d, h)),
    )
    psi = RationalFunction(UniPoly(K, [f, e]), UniPoly(K, [h, g]))
    new_w = w.compose(psi) * v
    return new_mob, new_w

"""Functions on a hyperelliptic curve and elliptic-integral expressions.

A CurveFunction is a + b·y in K(x)[y]/(y² − S).  An EllipticExpression is
an algebraic part plus a list of elliptic-integral and logarithm terms;
``differentiate`` maps it back to a CurveFunction, which is the exactness
oracle for the whole integration pipeline.
"""

from __future__ import annotations

from .errors import DomainMismatchError
from .morphisms import EllipticMorphism
from .ratfunc import RationalFunction
from .towers import TowerField
from .unipoly import UniPoly


class CurveFunction:
    """a + b·y on the curve y² = S, with a, b rational functions."""

    __slots__ = ("S", "a", "b")

    def __init__(self, S: UniPoly, a: RationalFunction, b: RationalFunction):
        if a.dom != S.dom or b.dom != S.dom:
            raise DomainMismatchError("curve function components over a "
                                      "different field than the radicand")
        self.S = S
        self.a = a
        self.b = b

    @classmethod
    def zero(cls, S: UniPoly) -> "CurveFunction":
        z = RationalFunction.zero(S.dom)
        return cls(S, z, z)

    @classmethod
    def rational(cls, S: UniPoly, a: RationalFunction) -> "CurveFunction":
        return cls(S, a, RationalFunction.zero(S.dom))

    @property
    def dom(self):
        return self.S.dom

    @property
    def is_zero(self) -> bool:
        return self.a.is_zero and self.b.is_zero

    def __eq__(self, other):
        return (
            isinstance(other, CurveFunction)
            and self.S == other.S
            and self.a == other.a
            and self.b == other.b
        )

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        return CurveFunction(self.S, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "CurveFunction") -> "CurveFunction":
        return CurveFunction(self.S, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "CurveFunction":
        return CurveFunction(self.S, -self.a, -self.b)

    def __mul__(self, other: "CurveFunction") -> "CurveFunction":
        # (a1 + b1 y)(a2 + b2 y) = a1a2 + b1b2 S + (a1b2 + a2b1) y
        s_rf = RationalFunction.from_poly(self.S)
        a = self.a * other.a + self.b * other.b * s_rf
        b = self.a * other.b + self.b * other.a
        return CurveFunction(self.S, a, b)

    def conjugate(self) -> "CurveFunction":
        """The image under y → −y."""
        return CurveFunction(self.S, self.a, -self.b)

    def norm(self) -> RationalFunction:
        """(a + by)(a − by) = a² − b²S, a plain rational function."""
        return self.a * self.a - self.b * self.b * RationalFunction.from_poly(self.S)

    def derivative(self) -> "CurveFunction":
        # y' = S'/(2y) = S'·y/(2S)
        s_rf = RationalFunction.from_poly(self.S)
        ds = RationalFunction.from_poly(self.S.derivative())
        half = self.dom.inv(self.dom.from_int(2))
        b = self.b.derivative() + (self.b * ds / s_rf).scale(half)
        return CurveFunction(self.S, self.a.derivative(), b)

    def scale_rational(self, r: RationalFunction) -> "CurveFunction":
        return CurveFunction(self.S, self.a * r, self.b * r)

    def div_rational(self, r: RationalFunction) -> "CurveFunction":
        return CurveFunction(self.S, self.a / r, self.b / r)

    def map_coeffs(self, new_dom, fn) -> "CurveFunction":
        return CurveFunction(self.S.map_coeffs(new_dom, fn),
                             self.a.map_coeffs(new_dom, fn),
                             self.b.map_coeffs(new_dom, fn))

    def transport(self, new_s: UniPoly, phi_inv: RationalFunction,
                  w: RationalFunction) -> "CurveFunction":
        """Rewrite on another model of the same curve.

        If y_self = w(x̂)·y_new with x = φ(x̂) (i.e. S_self = w²·S_new∘φ),
        composing with φ⁻¹ gives a + b·y_self = a∘φ⁻¹ + (b·w)∘φ⁻¹ · y_new.
        """
        return CurveFunction(new_s, self.a.compose(phi_inv),
                             (self.b * w).compose(phi_inv))

    def to_str(self, var: str = "x") -> str:
        if self.is_zero:
            return "0"
        parts = []
        if not self.a.is_zero:
            parts.append(self.a.to_str(var))
        if not self.b.is_zero:
            parts.append(f"({self.b.to_str(var)})*sqrt({self.S.to_str(var)})")
        return " + ".join(parts)

    def __repr__(self):
        return f"CurveFunction({self.to_str()})"


class FirstKind:
    """coeff · F(F(x) | κ), derivative coeff·F′/(G√S)."""

    __slots__ = ("coeff", "morphism")
    kind = "first"

    def __init__(self, coeff, morphism: EllipticMorphism):
        self.coeff = coeff
        self.morphism = morphism

    def derivative_b(self) -> RationalFunction:
        m = self.morphism
        return (m.F.derivative() / m.G).scale(self.coeff)

    def to_str(self, var: str = "x") -> str:
        m = self.morphism
        return (f"({m.tower.to_str(self.coeff)})*F({m.F.to_str(var)}"
                f" | {m.tower.to_str(m.kappa)})")

    def to_json(self):
        m = self.morphism
        return {"kind": "F", "coeff": m.tower.to_str(self.coeff),
                "F": m.F.to_str(), "G": m.G.to_str(),
                "kappa": m.tower.to_str(m.kappa)}


class SecondKind:
    """coeff · E(F(x) | κ), derivative coeff·F·F′/(G√S)."""

    __slots__ = ("coeff", "morphism")
    kind = "second"

    def __init__(self, coeff, morphism: EllipticMorphism):
        self.coeff = coeff
        self.morphism = morphism

    def derivative_b(self) -> RationalFunction:
        m = self.morphism
        return (m.F * m.F.derivative() / m.G).scale(self.coeff)

    def to_str(self, var: str = "x") -> str:
        m = self.morphism
        return (f"({m.tower.to_str(self.coeff)})*E({m.F.to_str(var)}"
                f" | {m.tower.to_str(m.kappa)})")

    def to_json(self):
        m = self.morphism
        return {"kind": "E", "coeff": m.tower.to_str(self.coeff),
                "F": m.F.to_str(), "G": m.G.to_str(),
                "kappa": m.tower.to_str(m.kappa)}


class ThirdKind:
    """coeff · Π(F(x), c | κ) with d² = c(c−1)(c−κ), d ≠ 0.

    Derivative: coeff·d·F′/((F−c)·G·√S); storing d fixes the branch.
    """

    __slots__ = ("coeff", "morphism", "c", "d")
    kind = "third"

    def __init__(self, coeff, morphism: EllipticMorphism, c, d):
        t = morphism.tower
        if t.is_zero(d):
            raise ValueError("third-kind parameter must have d != 0")
        lhs = t.mul(d, d)
        rhs = t.mul(c, t.mul(t.sub(c, t.one), t.sub(c, morphism.kappa)))
        if not t.elements_equal(lhs, rhs):
            raise ValueError("third-kind parameter not on the elliptic curve")
        self.coeff = coeff
        self.morphism = morphism
        self.c = c
        self.d = d

    def derivative_b(self) -> RationalFunction:
        m = self.morphism
        t = m.tower
        c_rf = RationalFunction.from_poly(UniPoly.const(t, self.c))
        h = m.F.derivative() / ((m.F - c_rf) * m.G)
        return h.scale(t.mul(self.coeff, self.d))

    def to_str(self, var: str = "x") -> str:
        m = self.morphism
        t = m.tower
        return (f"({t.to_str(self.coeff)})*Pi({m.F.to_str(var)}, "
                f"{t.to_str(self.c)} | {t.to_str(m.kappa)})")

    def to_json(self):
        m = self.morphism
        t = m.tower
        return {"kind": "Pi", "coeff": t.to_str(self.coeff),
                "F": m.F.to_str(), "G": m.G.to_str(),
                "kappa": t.to_str(m.kappa),
                "c": t.to_str(self.c), "d": t.to_str(self.d)}


class LogTerm:
    """coeff · ln(R(x, y)/R(x, −y)) for a curve function R."""

    __slots__ = ("coeff", "R")
    kind = "log"

    def __init__(self, coeff, R: CurveFunction):
        self.coeff = coeff
        self.R = R

    def derivative_cf(self) -> CurveFunction:
        rp = self.R
        rm = rp.conjugate()
        num = rp.derivative() * rm - rm.derivative() * rp
        cf = num.div_rational(rp.norm())
        return CurveFunction(cf.S, cf.a.scale(self.coeff),
                             cf.b.scale(self.coeff))

    def to_str(self, var: str = "x") -> str:
        dom = self.R.dom
        rp = self.R.to_str(var)
        rm = self.R.conjugate().to_str(var)
        return f"({dom.to_str(self.coeff)})*ln(({rp})/({rm}))"

    def to_json(self):
        dom = self.R.dom
        return {"kind": "log", "coeff": dom.to_str(self.coeff),
                "a": self.R.a.to_str(), "b": self.R.b.to_str()}


class EllipticExpression:
    """Algebraic part plus elliptic-integral and log terms on one curve."""

    __slots__ = ("S", "algebraic", "terms")

    def __init__(self, S: UniPoly, algebraic: CurveFunction, terms):
        self.S = S
        self.algebraic = algebraic
        self.terms = list(terms)

    @property
    def dom(self):
        return self.S.dom

    def to_str(self, var: str = "x") -> str:
        parts = []
        if not self.algebraic.is_zero:
            parts.append(self.algebraic.to_str(var))
        parts.extend(t.to_str(var) for t in self.terms)
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        from .morphisms import tower_description

        return {
            "schemaVersion": 1,
            "radicand": self.S.to_str(),
            "field": tower_description(self.S.dom),
            "algebraic": {"a": self.algebraic.a.to_str(),
                          "b": self.algebraic.b.to_str()},
            "terms": [t.to_json() for t in self.terms],
        }

    def __repr__(self):
        return f"EllipticExpression({self.to_str()})"


def differentiate(expr: EllipticExpression) -> CurveFunction:
    """Exact derivative of the expression, as a function on the curve.

    Integral terms contribute pure 1/√S = y/S parts via the chain rule
    through the morphism relation S·G² = F(F−1)(F−κ).
    """
    S = expr.S
    dom = expr.dom
    out = expr.algebraic.derivative()
    s_rf = RationalFunction.from_poly(S)
    b_acc = RationalFunction.zero(dom)
    for term in expr.terms:
        if isinstance(term, LogTerm):
            out = out + term.derivative_cf()
        else:
            b_acc = b_acc + term.derivative_b()
    out = out + CurveFunction(S, RationalFunction.zero(dom), b_acc / s_rf)
    return out

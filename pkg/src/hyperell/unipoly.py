"""Dense univariate polynomials over an arbitrary coefficient field."""

from __future__ import annotations

from .domains import QQ, Domain, mpq
from .errors import DivisionByZeroError, DomainMismatchError


class UniPoly:
    """Immutable dense univariate polynomial.

    Coefficients are stored low-to-high with no trailing zeros; the zero
    polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("dom", "cs")

    def __init__(self, dom: Domain, coeffs):
        cs = list(coeffs)
        while cs and dom.is_zero(cs[-1]):
            cs.pop()
        self.dom = dom
        self.cs = tuple(cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, dom):
        return cls(dom, ())

    @classmethod
    def one(cls, dom):
        return cls(dom, (dom.one,))

    @classmethod
    def const(cls, dom, c):
        return cls(dom, (c,))

    @classmethod
    def x(cls, dom):
        return cls(dom, (dom.zero, dom.one))

    @classmethod
    def from_ints(cls, dom, ints):
        return cls(dom, [dom.from_int(n) for n in ints])

    @classmethod
    def from_rationals(cls, dom, rats):
        return cls(dom, [dom.from_mpq(mpq(r)) for r in rats])

    # -- basic queries -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.cs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.cs

    @property
    def lc(self):
        if not self.cs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.cs[-1]

    def coeff(self, i: int):
        return self.cs[i] if 0 <= i < len(self.cs) else self.dom.zero

    @property
    def is_constant(self) -> bool:
        return len(self.cs) <= 1

    @property
    def is_monic(self) -> bool:
        return bool(self.cs) and self.dom.is_one(self.cs[-1])

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.cs == other.cs
            and self.dom == other.dom
        )

    def __hash__(self):
        return hash((self.dom, self.cs))

    def __repr__(self):
        return f"UniPoly({self.to_str()})"

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if self.dom != other.dom:
            raise DomainMismatchError("polynomials over different domains")

    def __add__(self, other):
        self._check(other)
        dom = self.dom
        a, b = self.cs, other.cs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = dom.add(out[i], c)
        return UniPoly(dom, out)

    def __sub__(self, other):
        self._check(other)
        dom = self.dom
        n = max(len(self.cs), len(other.cs))
        out = [
            dom.sub(self.coeff(i), other.coeff(i))
            for i in range(n)
        ]
        return UniPoly(dom, out)

    def __neg__(self):
        dom = self.dom
        return UniPoly(dom, [dom.neg(c) for c in self.cs])

    def __mul__(self, other):
        self._check(other)
        dom = self.dom
        a, b = self.cs, other.cs
        if not a or not b:
            return UniPoly.zero(dom)
        out = [dom.zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if dom.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                out[i + j] = dom.add(out[i + j], dom.mul(ai, bj))
        return UniPoly(dom, out)

    def scale(self, c):
        dom = self.dom
        if dom.is_zero(c):
            return UniPoly.zero(dom)
        return UniPoly(dom, [dom.mul(c, a) for a in self.cs])

    def shift_pow(self, n: int):
        """Multiply by x^n."""
        if self.is_zero:
            return self
        return UniPoly(self.dom, (self.dom.zero,) * n + self.cs)

    def __pow__(self, e: int):
        result = UniPoly.one(self.dom)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other):
        self._check(other)
        dom = self.dom
        if other.is_zero:
            raise DivisionByZeroError("polynomial division by zero")
        a = list(self.cs)
        b = other.cs
        db = len(b) - 1
        if len(a) - 1 < db:
            return UniPoly.zero(dom), self
        inv_lead = dom.inv(b[-1])
        q = [dom.zero] * (len(a) - db)
        for i in range(len(a) - db - 1, -1, -1):
            c = dom.mul(a[i + db], inv_lead)
            if not dom.is_zero(c):
                q[i] = c
                for j in range(db + 1):
                    a[i + j] = dom.sub(a[i + j], dom.mul(c, b[j]))
        return UniPoly(dom, q), UniPoly(dom, a[:db])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other):
        q, r = self.divmod(other)
        if not r.is_zero:
            raise ValueError("exact_div: division is not exact")
        return q

    def monic(self):
        if self.is_zero or self.is_monic:
            return self
        return self.scale(self.dom.inv(self.lc))

    def derivative(self):
        dom = self.dom
        if len(self.cs) <= 1:
            return UniPoly.zero(dom)
        out = []
        for i in range(1, len(self.cs)):
            c = self.cs[i]
            out.append(dom.mul(dom.from_int(i), c))
        return UniPoly(dom, out)

    def evaluate(self, v):
        dom = self.dom
        acc = dom.zero
        for c in reversed(self.cs):
            acc = dom.add(dom.mul(acc, v), c)
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        """Substitute ``other`` for x (Horner over polynomials)."""
        dom = self.dom
        acc = UniPoly.zero(dom)
        for c in reversed(self.cs):
            acc = acc * other + UniPoly.const(dom, c)
        return acc

    def map_coeffs(self, new_dom, fn):
        return UniPoly(new_dom, [fn(c) for c in self.cs])

    # -- gcd / resultant ------------------------------------------------

    def gcd(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        if self.is_zero and other.is_zero:
            raise ValueError("gcd(0, 0) undefined")
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def ext_gcd(self, other):
        """Return (g, s, t) with g = s*self + t*other and g monic."""
        dom = self.dom
        a, b = self, other
        s0, s1 = UniPoly.one(dom), UniPoly.zero(dom)
        t0, t1 = UniPoly.zero(dom), UniPoly.one(dom)
        while not b.is_zero:
            q, r = a.divmod(b)
            a, b = b, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if a.is_zero:
            raise ValueError("ext_gcd(0, 0) undefined")
        c = dom.inv(a.lc)
        return a.scale(c), s0.scale(c), t0.scale(c)

    def squarefree_part(self) -> "UniPoly":
        if self.is_zero:
            raise ValueError("squarefree part of zero polynomial")
        d = self.derivative()
        if d.is_zero:
            # char 0 never reaches this; finite fields would need p-th roots
            raise NotImplementedError("inseparable polynomial")
        return self.exact_div(self.gcd(d)).monic()

    def resultant(self, other):
        """Resultant via the Euclidean remainder sequence (field coefficients)."""
        self._check(other)
        dom = self.dom
        a, b = self, other
        if a.is_zero or b.is_zero:
            return dom.zero
        sign_flip = False
        acc = dom.one
        while b.degree > 0:
            r = a % b
            if r.is_zero:
                return dom.zero
            da, db, dr = a.degree, b.degree, r.degree
            # res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * res(b, r)
            if (da * db) % 2 == 1:
                sign_flip = not sign_flip
            lead = b.lc
            powv = dom.one
            for _ in range(da - dr):
                powv = dom.mul(powv, lead)
            acc = dom.mul(acc, powv)
            a, b = b, r
        # b is a nonzero constant
        lead = b.cs[0]
        powv = dom.one
        for _ in range(a.degree):
            powv = dom.mul(powv, lead)
        acc = dom.mul(acc, powv)
        return dom.neg(acc) if sign_flip else acc

    def discriminant(self):
        """disc(a) = (-1)^(n(n-1)/2) res(a, a') / lc(a)."""
        dom = self.dom
        n = self.degree
        if n < 1:
            raise ValueError("discriminant needs degree >= 1")
        r = self.resultant(self.derivative())
        r = dom.div(r, self.lc)
        if (n * (n - 1) // 2) % 2 == 1:
            r = dom.neg(r)
        return r

    # -- printing --------------------------------------------------------

    def to_str(self, var: str = "x") -> str:
        dom = self.dom
        if self.is_zero:
            return "0"
        parts = []
        for i in range(len(self.cs) - 1, -1, -1):
            c = self.cs[i]
            if dom.is_zero(c):
                continue
            cstr = dom.to_str(c)
            wrap = any(op in cstr[1:] for op in "+-") or " " in cstr
            if i == 0:
                parts.append(f"({cstr})" if wrap else cstr)
                continue
            xs = var if i == 1 else f"{var}^{i}"
            if dom.is_one(c):
                parts.append(xs)
            elif wrap:
                parts.append(f"({cstr})*{xs}")
            else:
                parts.append(f"{cstr}*{xs}")
        out = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                out += " - " + p[1:]
            else:
                out += " + " + p
        return out


def lcm_polys(polys):
    """Least common multiple of a list of polynomials (monic)."""
    acc = None
    for p in polys:
        if p.is_zero:
            raise ValueError("lcm with zero polynomial")
        if acc is None:
            acc = p.monic()
        else:
            acc = acc.exact_div(acc.gcd(p)) * p
            acc = acc.monic()
    if acc is None:
        raise ValueError("lcm of empty list")
    return acc


def poly_from_roots(dom, roots):
    acc = UniPoly.one(dom)
    for r in roots:
        acc = acc * UniPoly(dom, (dom.neg(r), dom.one))
    return acc

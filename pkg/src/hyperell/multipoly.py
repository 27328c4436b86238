"""Sparse multivariate polynomials and their fraction fields.

``PolyRing`` fixes a coefficient domain, a variable list (earlier = bigger
in the term order), and a monomial order (lex or grevlex).  ``MultiPoly``
stores a sorted tuple of (exponent vector, coefficient) pairs, biggest
monomial first, with no zero coefficients.

``FractionField`` wraps a ring to provide K(c_1, ..., c_n); fractions are
kept in lowest terms using a recursive primitive-PRS multivariate gcd, so
elements stay canonical (monic-like normalization by the leading
coefficient of the denominator).
"""

from __future__ import annotations

from .domains import Domain
from .errors import DivisionByZeroError, DomainMismatchError
from .unipoly import UniPoly


class PolyRing:
    """Polynomial ring dom[v_0, ..., v_{n-1}] with a monomial order."""

    def __init__(self, dom: Domain, variables, order: str = "lex"):
        self.dom = dom
        self.vars = tuple(variables)
        if order not in ("lex", "grevlex"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.order = order
        self.nvars = len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.dom == other.dom
            and self.vars == other.vars
            and self.order == other.order
        )

    def __hash__(self):
        return hash(("PolyRing", self.dom, self.vars, self.order))

    def __repr__(self):
        return f"PolyRing({self.dom!r}, {list(self.vars)}, {self.order})"

    def mono_key(self, exp):
        if self.order == "lex":
            return exp
        return (sum(exp), tuple(-e for e in reversed(exp)))

    # -- constructors --------------------------------------------------

    def zero(self):
        return MultiPoly(self, ())

    def one(self):
        return self.const(self.dom.one)

    def const(self, c):
        if self.dom.is_zero(c):
            return self.zero()
        return MultiPoly(self, (((0,) * self.nvars, c),))

    def var(self, name):
        i = self.vars.index(name)
        exp = tuple(1 if j == i else 0 for j in range(self.nvars))
        return MultiPoly(self, ((exp, self.dom.one),))

    def from_terms(self, terms):
        agg = {}
        for exp, c in terms:
            exp = tuple(exp)
            if exp in agg:
                agg[exp] = self.dom.add(agg[exp], c)
            else:
                agg[exp] = c
        items = [(e, c) for e, c in agg.items() if not self.dom.is_zero(c)]
        items.sort(key=lambda t: self.mono_key(t[0]), reverse=True)
        return MultiPoly(self, tuple(items))

    def from_unipoly(self, p: UniPoly, name):
        i = self.vars.index(name)
        terms = []
        for k, c in enumerate(p.cs):
            if not p.dom.is_zero(c):
                exp = tuple(k if j == i else 0 for j in range(self.nvars))
                terms.append((exp, c))
        return self.from_terms(terms)

    def reorder(self, variables=None, order=None) -> "PolyRing":
        return PolyRing(self.dom, variables or self.vars, order or self.order)


class MultiPoly:
    """Immutable sparse polynomial; terms sorted descending by the ring order."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def lm(self):
        return self.terms[0][0]

    @property
    def lc(self):
        return self.terms[0][1]

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def degree_in(self, name) -> int:
        i = self.ring.vars.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e, _ in self.terms)

    def coeff_of(self, exp):
        exp = tuple(exp)
        for e, c in self.terms:
            if e == exp:
                return c
        return self.ring.dom.zero

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def __repr__(self):
        return f"MultiPoly({self.to_str()})"

    def _check(self, other):
        if self.ring != other.ring:
            raise DomainMismatchError("MultiPoly ring mismatch")

    def __add__(self, other):
        self._check(other)
        dom = self.ring.dom
        agg = dict(self.terms)
        for e, c in other.terms:
            if e in agg:
                agg[e] = dom.add(agg[e], c)
            else:
                agg[e] = c
        items = [(e, c) for e, c in agg.items() if not dom.is_zero(c)]
        items.sort(key=lambda t: self.ring.mono_key(t[0]), reverse=True)
        return MultiPoly(self.ring, tuple(items))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        dom = self.ring.dom
        return MultiPoly(self.ring, tuple((e, dom.neg(c)) for e, c in self.terms))

    def scale(self, c):
        dom = self.ring.dom
        if dom.is_zero(c):
            return self.ring.zero()
        return MultiPoly(self.ring, tuple((e, dom.mul(k, c)) for e, k in self.terms))

    def mul_term(self, exp, c):
        dom = self.ring.dom
        if dom.is_zero(c):
            return self.ring.zero()
        exp = tuple(exp)
        return MultiPoly(
            self.ring,
            tuple(
                (tuple(a + b for a, b in zip(e, exp)), dom.mul(k, c))
                for e, k in self.terms
            ),
        )

    def __mul__(self, other):
        self._check(other)
        dom = self.ring.dom
        agg = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                p = dom.mul(c1, c2)
                if e in agg:
                    agg[e] = dom.add(agg[e], p)
                else:
                    agg[e] = p
        items = [(e, c) for e, c in agg.items() if not dom.is_zero(c)]
        items.sort(key=lambda t: self.ring.mono_key(t[0]), reverse=True)
        return MultiPoly(self.ring, tuple(items))

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def monic(self) -> "MultiPoly":
        if self.is_zero:
            return self
        return self.scale(self.ring.dom.inv(self.lc))

    def derivative(self, name) -> "MultiPoly":
        i = self.ring.vars.index(name)
        dom = self.ring.dom
        terms = []
        for e, c in self.terms:
            if e[i] > 0:
                ne = tuple(v - 1 if j == i else v for j, v in enumerate(e))
                terms.append((ne, dom.mul(c, dom.from_int(e[i]))))
        return self.ring.from_terms(terms)

    def subs(self, assignment: dict) -> "MultiPoly":
        """Substitute domain elements for some variables."""
        ring = self.ring
        dom = ring.dom
        idx = {ring.vars.index(n): v for n, v in assignment.items()}
        keep = [j for j in range(ring.nvars) if j not in idx]
        new_ring = PolyRing(dom, [ring.vars[j] for j in keep], ring.order)
        terms = []
        for e, c in self.terms:
            for j, v in idx.items():
                for _ in range(e[j]):
                    c = dom.mul(c, v)
            terms.append((tuple(e[j] for j in keep), c))
        return new_ring.from_terms(terms)

    def substitute(self, name, replacement: "MultiPoly") -> "MultiPoly":
        """Substitute a polynomial of the same ring for one variable."""
        ring = self.ring
        if replacement.ring != ring:
            raise DomainMismatchError("substitute expects the same ring")
        i = ring.vars.index(name)
        out = ring.zero()
        powers = {0: ring.one()}
        for e, c in self.terms:
            k = e[i]
            if k not in powers:
                powers[k] = replacement ** k
            base = tuple(0 if j == i else v for j, v in enumerate(e))
            out = out + powers[k].mul_term(base, c)
        return out

    def evaluate_all(self, assignment: dict):
        """Evaluate with every variable assigned; returns a domain element."""
        dom = self.ring.dom
        vals = [assignment[n] for n in self.ring.vars]
        acc = dom.zero
        for e, c in self.terms:
            t = c
            for j, k in enumerate(e):
                for _ in range(k):
                    t = dom.mul(t, vals[j])
            acc = dom.add(acc, t)
        return acc

    def map_coeffs(self, new_dom, fn) -> "MultiPoly":
        new_ring = PolyRing(new_dom, self.ring.vars, self.ring.order)
        return new_ring.from_terms((e, fn(c)) for e, c in self.terms)

    def to_unipoly(self, dom=None) -> UniPoly:
        """Convert a univariate-in-one-variable MultiPoly to a UniPoly."""
        used = [j for j in range(self.ring.nvars) if any(e[j] for e, _ in self.terms)]
        if len(used) > 1:
            raise ValueError("polynomial is not univariate")
        j = used[0] if used else 0
        dom = dom or self.ring.dom
        deg = max((e[j] for e, _ in self.terms), default=-1)
        cs = [dom.zero] * (deg + 1)
        for e, c in self.terms:
            cs[e[j]] = c
        return UniPoly(dom, cs)

    def used_vars(self):
        return [
            n
            for j, n in enumerate(self.ring.vars)
            if any(e[j] for e, _ in self.terms)
        ]

    def to_str(self) -> str:
        if self.is_zero:
            return "0"
        dom = self.ring.dom
        parts = []
        for e, c in self.terms:
            monos = []
            for name, k in zip(self.ring.vars, e):
                if k == 1:
                    monos.append(name)
                elif k > 1:
                    monos.append(f"{name}^{k}")
            cs = dom.to_str(c)
            if monos:
                m = "*".join(monos)
                if cs == "1":
                    parts.append(m)
                elif cs == "-1":
                    parts.append(f"-{m}")
                elif any(op in cs[1:] for op in "+-"):
                    parts.append(f"({cs})*{m}")
                else:
                    parts.append(f"{cs}*{m}")
            else:
                parts.append(f"({cs})" if any(op in cs[1:] for op in "+-") else cs)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


# -- multivariate gcd ----------------------------------------------------------


def multi_gcd(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Gcd over a field's polynomial ring, normalized monic."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    a._check(b)
    ring = a.ring
    used = sorted(set(a.used_vars()) | set(b.used_vars()), key=ring.vars.index)
    if not used:
        return ring.one()
    g = _gcd_recursive(a, b, [ring.vars.index(n) for n in used])
    return g.monic()


def _gcd_recursive(a: MultiPoly, b: MultiPoly, var_idx):
    ring = a.ring
    dom = ring.dom
    if len(var_idx) == 1:
        j = var_idx[0]
        ua = _to_uni_in(a, j)
        ub = _to_uni_in(b, j)
        g = ua.gcd(ub)
        return _from_uni_in(ring, g, j)
    # view as univariate in the first used variable, coefficients are
    # polynomials in the rest; primitive PRS with recursive content gcds
    j, rest = var_idx[0], var_idx[1:]
    fa = _split_by(a, j)
    fb = _split_by(b, j)
    ca = _content(fa, rest)
    cb = _content(fb, rest)
    fa = [_exact_div_multi(c, ca) for c in fa]
    fb = [_exact_div_multi(c, cb) for c in fb]
    cont = _gcd_recursive(ca, cb, rest)
    # pseudo-remainder sequence on primitive parts
    u, v = fa, fb
    if _deg_list(u) < _deg_list(v):
        u, v = v, u
    while True:
        dv = _deg_list(v)
        if dv < 0:
            g = u
            break
        r = _pseudo_rem(u, v, ring)
        if _deg_list(r) < 0:
            g = v
            break
        cr = _content(r, rest)
        r = [_exact_div_multi(c, cr) for c in r]
        u, v = v, r
    cg = _content(g, rest)
    g = [_exact_div_multi(c, cg) for c in g]
    poly = _join_by(ring, g, j)
    return poly * cont


def _split_by(p: MultiPoly, j: int):
    """Coefficients of p as polynomials in the other variables, low to high."""
    ring = p.ring
    deg = max((e[j] for e, _ in p.terms), default=-1)
    buckets = [[] for _ in range(deg + 1)]
    for e, c in p.terms:
        ne = tuple(0 if i == j else v for i, v in enumerate(e))
        buckets[e[j]].append((ne, c))
    return [ring.from_terms(b) for b in buckets]


def _join_by(ring: PolyRing, coeffs, j: int) -> MultiPoly:
    terms = []
    for k, c in enumerate(coeffs):
        for e, v in c.terms:
            ne = tuple(k if i == j else x for i, x in enumerate(e))
            terms.append((ne, v))
    return ring.from_terms(terms)


def _deg_list(coeffs) -> int:
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero:
            return k
    return -1


def _content(coeffs, rest_idx) -> MultiPoly:
    g = None
    for c in coeffs:
        if c.is_zero:
            continue
        g = c if g is None else _gcd_recursive(g, c, _used_idx(g, c, rest_idx))
        if not g.terms or (g.total_degree() == 0):
            break
    if g is None:
        raise ValueError("content of the zero polynomial")
    return g.monic()


def _used_idx(a, b, rest_idx):
    used = set(a.used_vars()) | set(b.used_vars())
    idx = [j for j in rest_idx if a.ring.vars[j] in used]
    return idx or [rest_idx[0]]


def _pseudo_rem(u, v, ring):
    """Pseudo-remainder of coefficient lists u by v (in the split variable)."""
    du, dv = _deg_list(u), _deg_list(v)
    r = list(u[: du + 1])
    lv = v[dv]
    while _deg_list(r) >= dv:
        dr = _deg_list(r)
        lead = r[dr]
        r = [c * lv for c in r]
        for k in range(dv + 1):
            r[dr - dv + k] = r[dr - dv + k] - v[k] * lead
        r = r[:dr]
        if not r:
            return [ring.zero()]
    return r or [ring.zero()]


def _exact_div_multi(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Exact division a / b via multivariate long division; must be exact."""
    if a.is_zero:
        return a
    ring = a.ring
    dom = ring.dom
    rem = a
    out = []
    binv = dom.inv(b.lc)
    while not rem.is_zero:
        e = tuple(x - y for x, y in zip(rem.lm, b.lm))
        if any(x < 0 for x in e):
            raise ValueError("inexact multivariate division")
        c = dom.mul(rem.lc, binv)
        out.append((e, c))
        rem = rem - b.mul_term(e, c)
    return ring.from_terms(out)


def _to_uni_in(p: MultiPoly, j: int) -> UniPoly:
    dom = p.ring.dom
    deg = max((e[j] for e, _ in p.terms), default=-1)
    cs = [dom.zero] * (deg + 1)
    for e, c in p.terms:
        cs[e[j]] = dom.add(cs[e[j]], c)
    return UniPoly(dom, cs)


def _from_uni_in(ring: PolyRing, p: UniPoly, j: int) -> MultiPoly:
    terms = []
    for k, c in enumerate(p.cs):
        if not ring.dom.is_zero(c):
            e = tuple(k if i == j else 0 for i in range(ring.nvars))
            terms.append((e, c))
    return ring.from_terms(terms)


# -- fraction field --------------------------------------------------------------


class FractionField(Domain):
    """Field of fractions K(v_1, ..., v_n) of a polynomial ring over a field."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        self.zero = (ring.zero(), ring.one())
        self.one = (ring.one(), ring.one())

    def __eq__(self, other):
        return isinstance(other, FractionField) and self.ring == other.ring

    def __hash__(self):
        return hash(("FractionField", self.ring))

    def __repr__(self):
        return f"Frac({self.ring!r})"

    def make(self, num: MultiPoly, den: MultiPoly):
        if den.is_zero:
            raise DivisionByZeroError("zero denominator in fraction field")
        if num.is_zero:
            return self.zero
        g = multi_gcd(num, den)
        if g.total_degree() > 0:
            num = _exact_div_multi(num, g)
            den = _exact_div_multi(den, g)
        lc = den.lc
        if not self.ring.dom.is_one(lc):
            inv = self.ring.dom.inv(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        return (num, den)

    def from_poly(self, p: MultiPoly):
        return self.make(p, self.ring.one())

    def add(self, a, b):
        return self.make(a[0] * b[1] + b[0] * a[1], a[1] * b[1])

    def sub(self, a, b):
        return self.make(a[0] * b[1] - b[0] * a[1], a[1] * b[1])

    def mul(self, a, b):
        return self.make(a[0] * b[0], a[1] * b[1])

    def neg(self, a):
        return (-a[0], a[1])

    def inv(self, a):
        if a[0].is_zero:
            raise DivisionByZeroError("inverse of zero fraction")
        return self.make(a[1], a[0])

    def is_zero(self, a):
        return a[0].is_zero

    def from_int(self, n):
        return self.from_poly(self.ring.const(self.ring.dom.from_int(n)))

    def from_mpq(self, q):
        return self.from_poly(self.ring.const(self.ring.dom.from_mpq(q)))

    def from_base(self, c):
        return self.from_poly(self.ring.const(c))

    def to_str(self, a):
        num, den = a
        ns = num.to_str()
        if den.total_degree() == 0 and self.ring.dom.is_one(den.lc):
            return ns
        ds = den.to_str()
        if any(op in ns[1:] for op in "+-"):
            ns = f"({ns})"
        if any(op in ds[1:] for op in "+-") or "*" in ds:
            ds = f"({ds})"
        return f"{ns}/{ds}"

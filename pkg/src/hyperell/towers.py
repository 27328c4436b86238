"""Towers of field extensions Q(a_1, ..., a_r) and their elements.

A tower is a base field plus an ordered list of generators, each with a
monic minimal polynomial over the tower below it.  Elements are nested
tuples: an element of a depth-r tower is a tuple (of length equal to the
top generator's degree) of depth-(r-1) elements; a depth-0 element is a
base-field element.  Everything is immutable and auto-reduced, so equality
is structural.

The same machinery serves number fields over Q and the quadratic
extensions by square-root parameters used during divisor reduction, whose
base is a rational-function field.
"""

from __future__ import annotations

from .domains import QQ, Domain, mpq
from .errors import (
    DivisionByZeroError,
    DomainMismatchError,
    ReduciblePolynomialError,
    ResourceLimitError,
)
from .linalg import invert_matrix, matrix_rank, solve_linear
from .unipoly import UniPoly

DEFAULT_TOWER_BUDGET = 64


class TowerField(Domain):
    """Field extension tower over a base domain.

    ``exts`` is a tuple of ``(name, minpoly_coeffs)`` pairs where the
    coefficients (low-to-high, monic) live in the tower below.
    """

    def __init__(self, base: Domain, exts=(), budget: int = DEFAULT_TOWER_BUDGET):
        self.base = base
        self.exts = tuple(exts)
        self.budget = budget
        if self.exts:
            self.down = TowerField(base, self.exts[:-1], budget)
            _, mp = self.exts[-1]
            self.top_deg = len(mp) - 1
            if self.top_deg < 1:
                raise ValueError("minimal polynomial must be nonconstant")
            if mp[-1] != self.down.one:
                raise ValueError("minimal polynomial must be monic")
            self.zero = (self.down.zero,) * self.top_deg
            self.one = (self.down.one,) + (self.down.zero,) * (self.top_deg - 1)
            self._red_rows = None
        else:
            self.down = None
            self.top_deg = 1
            self.zero = base.zero
            self.one = base.one

    # -- identity ------------------------------------------------------

    @property
    def depth(self) -> int:
        return len(self.exts)

    @property
    def degree(self) -> int:
        d = 1
        for _, mp in self.exts:
            d *= len(mp) - 1
        return d

    def generator_names(self):
        return [name for name, _ in self.exts]

    def __eq__(self, other):
        return (
            isinstance(other, TowerField)
            and self.base == other.base
            and self.exts == other.exts
        )

    def __hash__(self):
        return hash(("TowerField", self.base, self.exts))

    def __repr__(self):
        if not self.exts:
            return f"Tower({self.base!r})"
        return f"Tower({self.base!r}; {', '.join(self.generator_names())})"

    # -- arithmetic ------------------------------------------------------

    def add(self, a, b):
        if not self.exts:
            return self.base.add(a, b)
        down = self.down
        return tuple(down.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if not self.exts:
            return self.base.sub(a, b)
        down = self.down
        return tuple(down.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if not self.exts:
            return self.base.neg(a)
        down = self.down
        return tuple(down.neg(x) for x in a)

    def _reduction_rows(self):
        # rows[j] = representation of gen^(top_deg + j), j = 0..top_deg-2
        if self._red_rows is None:
            down = self.down
            d = self.top_deg
            _, mp = self.exts[-1]
            rows = []
            cur = [down.neg(c) for c in mp[:-1]]
            rows.append(tuple(cur))
            for _ in range(d - 2):
                carry = cur[d - 1]
                new = [down.zero] + list(cur[: d - 1])
                if not down.is_zero(carry):
                    new = [down.add(x, down.mul(carry, y)) for x, y in zip(new, rows[0])]
                cur = new
                rows.append(tuple(cur))
            self._red_rows = rows
        return self._red_rows

    def mul(self, a, b):
        if not self.exts:
            return self.base.mul(a, b)
        down = self.down
        d = self.top_deg
        if d == 1:
            return (down.mul(a[0], b[0]),)
        prod = [down.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if down.is_zero(ai):
                continue
            for j, bj in enumerate(b):
                prod[i + j] = down.add(prod[i + j], down.mul(ai, bj))
        rows = self._reduction_rows()
        out = prod[:d]
        for j in range(d - 1):
            c = prod[d + j]
            if not down.is_zero(c):
                row = rows[j]
                out = [down.add(x, down.mul(c, y)) for x, y in zip(out, row)]
        return tuple(out)

    def inv(self, a):
        if not self.exts:
            return self.base.inv(a)
        if self.is_zero(a):
            raise DivisionByZeroError("inverse of zero tower element")
        down = self.down
        _, mp = self.exts[-1]
        f = UniPoly(down, a)
        m = UniPoly(down, mp)
        g, s, _ = f.ext_gcd(m)
        if g.degree != 0:
            raise ReduciblePolynomialError(
                "minimal polynomial is not irreducible (zero divisor hit)"
            )
        coeffs = list(s.cs) + [down.zero] * (self.top_deg - len(s.cs))
        return tuple(coeffs[: self.top_deg])

    def is_zero(self, a):
        return a == self.zero

    def from_int(self, n):
        return self.lift_from_base(self.base.from_int(n))

    def from_mpq(self, q):
        return self.lift_from_base(self.base.from_mpq(q))

    def lift_from_base(self, a):
        """Embed a base-field element into the tower."""
        chain = []
        t = self
        while t.exts:
            chain.append(t)
            t = t.down
        for t in reversed(chain):
            a = (a,) + (t.down.zero,) * (t.top_deg - 1)
        return a

    def lift_down(self, a):
        """Embed an element of the immediate subtower."""
        return (a,) + (self.down.zero,) * (self.top_deg - 1)

    def extends(self, other: "TowerField") -> bool:
        return (
            self.base == other.base and self.exts[: other.depth] == other.exts
        )

    def promote(self, a, deeper: "TowerField"):
        """Embed an element of self into a tower extending self."""
        if not deeper.extends(self):
            raise DomainMismatchError("promote target does not extend this tower")
        chain = []
        t = deeper
        while t.depth > self.depth:
            chain.append(t)
            t = t.down
        for t in reversed(chain):
            a = t.lift_down(a)
        return a

    def project(self, a, shallower: "TowerField"):
        """Inverse of promote; fails if ``a`` uses the extra generators."""
        if not self.extends(shallower):
            raise DomainMismatchError("projection target is not a subtower")
        t = self
        while t.depth > shallower.depth:
            down = t.down
            for comp in a[1:]:
                if not down.is_zero(comp):
                    raise ValueError("element does not lie in the subtower")
            a = a[0]
            t = down
        return a

    def generator(self, i: int = -1):
        """The i-th generator as an element of this tower."""
        if i < 0:
            i += self.depth
        if not 0 <= i < self.depth:
            raise IndexError("generator index out of range")
        t = self
        chain = []
        while t.depth > i + 1:
            chain.append(t)
            t = t.down
        down = t.down
        if t.top_deg == 1:
            _, mp = t.exts[-1]
            g = (down.neg(mp[0]),)
        else:
            g = (down.zero, down.one) + (down.zero,) * (t.top_deg - 2)
        for t2 in reversed(chain):
            g = t2.lift_down(g)
        return g

    # -- construction -----------------------------------------------------

    def adjoin(self, minpoly: UniPoly, name: str | None = None, check: bool = True):
        """Adjoin a root of a monic irreducible polynomial over this tower."""
        if minpoly.degree < 1:
            raise ValueError("cannot adjoin a root of a constant polynomial")
        if minpoly.dom != self:
            raise DomainMismatchError("minimal polynomial is not over this tower")
        mp = minpoly.monic()
        if self.base.is_rational_field:
            new_degree = self.degree * mp.degree
            if new_degree > self.budget:
                raise ResourceLimitError(
                    f"tower degree {new_degree} exceeds budget {self.budget}",
                    stage="adjoin_root",
                    detail=mp,
                )
        if check and mp.degree > 1 and self.base.is_rational_field:
            from .factor import factor_unipoly

            factors = factor_unipoly(mp)
            if len(factors) != 1 or factors[0][1] != 1:
                raise ReduciblePolynomialError(
                    "polynomial is reducible; adjoin an irreducible factor",
                    factor=factors[0][0],
                )
        if name is None:
            name = _fresh_name(self.generator_names())
        return TowerField(self.base, self.exts + ((name, tuple(mp.cs)),), self.budget)

    # -- coordinates over the base -----------------------------------------

    def flatten(self, a):
        """Coordinates of ``a`` over the base field, in the monomial basis."""
        if not self.exts:
            return [a]
        down = self.down
        out = []
        for comp in a:
            out.extend(down.flatten(comp))
        return out

    def unflatten(self, coords):
        elem, rest = self._unflatten(list(coords))
        if rest:
            raise ValueError("coordinate vector too long")
        return elem

    def _unflatten(self, coords):
        if not self.exts:
            return coords[0], coords[1:]
        down = self.down
        comps = []
        for _ in range(self.top_deg):
            c, coords = down._unflatten(coords)
            comps.append(c)
        return tuple(comps), coords

    # -- printing ----------------------------------------------------------

    def to_str(self, a):
        if not self.exts:
            return self.base.to_str(a)
        name = self.exts[-1][0]
        down = self.down
        parts = []
        for i, comp in enumerate(a):
            if down.is_zero(comp):
                continue
            cs = down.to_str(comp)
            wrap = any(op in cs[1:] for op in "+-") or "/" in cs and i > 0
            if i == 0:
                parts.append(cs)
            else:
                g = name if i == 1 else f"{name}^{i}"
                if cs == "1":
                    parts.append(g)
                elif cs == "-1":
                    parts.append(f"-{g}")
                elif wrap:
                    parts.append(f"({cs})*{g}")
                else:
                    parts.append(f"{cs}*{g}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _fresh_name(existing):
    for c in "abcdefghijklmnopqrstuvw":
        if c not in existing:
            return c
    i = 0
    while f"g{i}" in existing:
        i += 1
    return f"g{i}"


def rational_tower(budget: int = DEFAULT_TOWER_BUDGET) -> TowerField:
    """The trivial tower Q (depth 0)."""
    return TowerField(QQ, (), budget)


NumberFieldTower = TowerField


def adjoin_root(tower: TowerField, minpoly: UniPoly, name=None, check=True) -> TowerField:
    return tower.adjoin(minpoly, name=name, check=check)


def primitive_element(tower: TowerField):
    """Collapse a number-field tower to a simple extension of Q.

    Returns ``(simple_tower, fwd, bwd)`` where ``fwd`` maps tower elements
    to simple-tower elements and ``bwd`` inverts it.  Depth-1 towers are
    returned unchanged with identity maps.
    """
    if not tower.base.is_rational_field:
        raise DomainMismatchError("primitive_element requires a tower over Q")
    if tower.depth == 0:
        raise ValueError("primitive_element needs at least one generator")
    if tower.depth == 1:
        return tower, (lambda a: a), (lambda a: a)
    d_total = tower.degree
    gens = [tower.generator(i) for i in range(tower.depth)]
    for weights in _weight_candidates(tower.depth):
        gamma = tower.zero
        for w, g in zip(weights, gens):
            gamma = tower.add(gamma, tower.mul(tower.from_int(w), g))
        result = _minpoly_by_powers(tower, gamma, d_total)
        if result is None:
            continue
        minpoly, power_vecs = result
        simple = TowerField(QQ, (("g", tuple(minpoly)),), tower.budget)
        mat = [[power_vecs[j][i] for j in range(d_total)] for i in range(d_total)]
        mat_inv = invert_matrix(QQ, mat)

        def fwd(a, _mi=mat_inv, _t=tower):
            coords = _t.flatten(a)
            return tuple(
                sum((row[i] * coords[i] for i in range(len(coords))), mpq(0))
                for row in _mi
            )

        def bwd(c, _t=tower, _g=gamma):
            acc = _t.zero
            for q in reversed(c):
                acc = _t.add(_t.mul(acc, _g), _t.from_mpq(q))
            return acc

        return simple, fwd, bwd
    raise ResourceLimitError("no primitive element found among candidate weights")


def _minpoly_by_powers(tower, gamma, d_total):
    """If gamma generates the whole tower, return (minpoly coeffs, power vectors)."""
    power_vecs = []
    cur = tower.one
    for _ in range(d_total):
        power_vecs.append(tower.flatten(cur))
        cur = tower.mul(cur, gamma)
    top = tower.flatten(cur)
    mat = [[power_vecs[j][i] for j in range(d_total)] for i in range(d_total)]
    if matrix_rank(QQ, mat) != d_total:
        return None
    sol = solve_linear(QQ, mat, top)
    minpoly = [-q for q in sol] + [mpq(1)]
    return minpoly, power_vecs


def _weight_candidates(depth):
    cands = [tuple([1] * depth)]
    for k in range(2, 10):
        cands.append(tuple(k ** i for i in range(depth)))
        cands.append(tuple(i * k + 1 for i in range(depth)))
    return cands


def minpoly_of_element(tower: TowerField, a):
    """Monic minimal polynomial over Q of an element of a number-field tower."""
    if not tower.base.is_rational_field:
        raise DomainMismatchError("minpoly_of_element requires a tower over Q")
    d_total = tower.degree
    vecs = []
    cur = tower.one
    for m in range(d_total + 1):
        vecs.append(tower.flatten(cur))
        # look for a dependency among gamma^0..gamma^m
        mat = [[vecs[j][i] for j in range(m + 1)] for i in range(d_total)]
        if matrix_rank(QQ, mat) <= m:
            sub = [[vecs[j][i] for j in range(m)] for i in range(d_total)]
            sol = _lstsq_exact(sub, vecs[m])
            return UniPoly(QQ, [-q for q in sol] + [mpq(1)])
        cur = tower.mul(cur, a)
    raise RuntimeError("unreachable: dependency must occur by the tower degree")


def _lstsq_exact(mat, rhs):
    # mat has full column rank and rhs is in its column span
    sol = solve_linear(QQ, mat, rhs)
    if sol is None:
        raise RuntimeError("inconsistent system in minimal polynomial computation")
    return sol


def newton_power_sums(poly: UniPoly, count: int):
    """Power sums p_1..p_count of the roots of a monic polynomial.

    Uses Newton's identities on the coefficients: with
    f = x^n + a_{n-1} x^{n-1} + ... + a_0,

        p_m + a_{n-1} p_{m-1} + ... + a_{n-m+1} p_1 + m a_{n-m} = 0   (m <= n)
        p_m + a_{n-1} p_{m-1} + ... + a_0 p_{m-n} = 0                 (m > n)
    """
    dom = poly.dom
    f = poly.monic()
    n = f.degree
    a = [f.coeff(i) for i in range(n + 1)]
    p = []
    for m in range(1, count + 1):
        acc = dom.zero
        for i in range(1, min(m, n) + 1):
            if i < m:
                acc = dom.add(acc, dom.mul(a[n - i], p[m - i - 1]))
            else:
                acc = dom.add(acc, dom.mul(dom.from_int(m), a[n - m]))
        p.append(dom.neg(acc))
    return p

"""Univariate polynomial factorization over Q, finite fields, and towers.

Over Q we delegate the hard combinatorial core (Zassenhaus with Hensel
lifting) to sympy after clearing denominators.  Over F_{p^k} we run
squarefree / distinct-degree / equal-degree splitting with a generator
seeded from the input, so results are reproducible.  Over number-field
towers we use a norm-based reduction: collapse to a simple extension,
shift by multiples of the primitive element until the norm is squarefree,
factor the norm over Q, and pull factors back by gcd.
"""

from __future__ import annotations

import random

import sympy

from .domains import QQ, mpq
from .errors import DomainMismatchError, ResourceLimitError
from .finitefields import ExtField, PrimeField
from .towers import TowerField, primitive_element, rational_tower
from .unipoly import UniPoly

_X = sympy.Symbol("x")
_T = sympy.Symbol("t")


def factor_with_unit(f: UniPoly):
    """Factor ``f`` as ``unit * prod(g_i ** m_i)`` with monic irreducible g_i.

    Returns ``(unit, [(g_i, m_i), ...])``; the unit is the leading
    coefficient.  Factors come back in a deterministic order: by degree,
    then by coefficient data.
    """
    if f.is_zero:
        raise ValueError("cannot factor the zero polynomial")
    dom = f.dom
    unit = f.lc
    g = f.monic()
    if g.degree == 0:
        return unit, []
    pairs = []
    for sq, mult in _squarefree_decomposition(g):
        for irr in _factor_squarefree(sq):
            pairs.append((irr, mult))
    pairs.sort(key=lambda pm: (pm[0].degree, _poly_key(pm[0])))
    return unit, pairs


def factor_unipoly(f: UniPoly):
    """Monic irreducible factors of ``f`` with multiplicities (unit dropped)."""
    return factor_with_unit(f)[1]


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    factors = factor_unipoly(f)
    return len(factors) == 1 and factors[0][1] == 1


def roots_in_domain(f: UniPoly):
    """Roots of ``f`` lying in its coefficient domain, with multiplicities."""
    dom = f.dom
    out = []
    for g, m in factor_unipoly(f):
        if g.degree == 1:
            out.append((dom.neg(g.coeff(0)), m))
    return out


def splitting_field(f: UniPoly, tower: TowerField | None = None):
    """Smallest tower over which ``f`` splits, plus its distinct roots.

    ``f`` must live over Q or over a number-field tower; the search starts
    from ``tower`` (default: the trivial tower).  The tower-degree budget
    applies to every extension step.
    """
    if tower is None:
        tower = f.dom if isinstance(f.dom, TowerField) else rational_tower()
    work = _lift_poly(f, tower).monic().squarefree_part()
    T = tower
    while True:
        factors = factor_unipoly(_lift_poly(work, T))
        nonlinear = [g for g, _ in factors if g.degree > 1]
        if not nonlinear:
            roots = [T.neg(g.coeff(0)) for g, _ in factors]
            roots.sort(key=lambda r: _elem_key(T, r))
            return T, roots
        nonlinear.sort(key=lambda g: (g.degree, _poly_key(g)))
        T = T.adjoin(nonlinear[0], check=False)


def _lift_poly(f: UniPoly, T: TowerField) -> UniPoly:
    dom = f.dom
    if dom == T:
        return f
    if dom == QQ or (isinstance(dom, TowerField) and dom.depth == 0):
        return UniPoly(T, [T.from_mpq(c) for c in f.cs] or [T.zero])
    if isinstance(dom, TowerField) and T.extends(dom):
        return f.map_coeffs(T, lambda c: dom.promote(c, T))
    raise DomainMismatchError("cannot lift polynomial into the given tower")


# -- squarefree decomposition -------------------------------------------------


def _squarefree_decomposition(f: UniPoly):
    """Yun's algorithm (char 0) / char-p variant; f monic nonconstant."""
    dom = f.dom
    if dom.characteristic == 0:
        return _yun(f)
    return _squarefree_charp(f)


def _yun(f: UniPoly):
    out = []
    df = f.derivative()
    a = f.gcd(df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    i = 1
    while b.degree > 0:
        d = c - b.derivative()
        g = b.gcd(d)
        if g.degree > 0:
            out.append((g.monic(), i))
        b = b.exact_div(g)
        c = d.exact_div(g)
        i += 1
    return out


def _squarefree_charp(f: UniPoly):
    dom = f.dom
    p = dom.characteristic
    out = []
    df = f.derivative()
    if df.is_zero:
        # f = h(x^p); recurse on the p-th root of f
        for g, m in _squarefree_charp(_pth_root_poly(f)):
            out.append((g, m * p))
        return out
    a = f.gcd(df)
    w = f.exact_div(a)
    i = 1
    while w.degree > 0:
        y = w.gcd(a)
        z = w.exact_div(y)
        if z.degree > 0:
            out.append((z.monic(), i))
        w = y
        a = a.exact_div(y)
        i += 1
    if a.degree > 0:
        for g, m in _squarefree_charp(_pth_root_poly(a)):
            out.append((g, m * p))
    return out


def _pth_root_poly(f: UniPoly) -> UniPoly:
    dom = f.dom
    p = dom.characteristic
    cs = []
    for i in range(0, f.degree + 1, p):
        c = f.coeff(i)
        cs.append(_elem_pth_root(dom, c))
    return UniPoly(dom, cs)


def _elem_pth_root(dom, a):
    if isinstance(dom, PrimeField):
        return a
    if isinstance(dom, ExtField):
        # Frobenius has order k, so the p-th root is a^(p^(k-1))
        return dom.pow(a, dom.p ** (dom.k - 1))
    raise DomainMismatchError("p-th roots only implemented for finite fields")


# -- squarefree factorization dispatch ---------------------------------------


def _factor_squarefree(f: UniPoly):
    dom = f.dom
    if f.degree == 1:
        return [f]
    if dom.is_rational_field:
        return _factor_sqfree_qq(f)
    if isinstance(dom, (PrimeField, ExtField)):
        return _factor_sqfree_ff(f)
    if isinstance(dom, TowerField) and dom.base.is_rational_field:
        if dom.depth == 0:
            lifted = _factor_sqfree_qq(f.map_coeffs(QQ, lambda c: c))
            return [g.map_coeffs(dom, lambda c: c) for g in lifted]
        return _factor_sqfree_tower(f)
    raise DomainMismatchError(f"no factorization over {dom!r}")


# -- over Q -------------------------------------------------------------------


def _to_sympy_qq(f: UniPoly, var):
    return sympy.Poly(
        [sympy.Rational(int(c.numerator), int(c.denominator)) for c in reversed(f.cs)],
        var,
        domain="QQ",
    )


def _from_sympy_qq(poly, dom=QQ) -> UniPoly:
    cs = [mpq(int(c.numerator), int(c.denominator)) for c in reversed(poly.all_coeffs())]
    return UniPoly(dom, [dom.from_mpq(c) for c in cs])


def _factor_sqfree_qq(f: UniPoly):
    _, flist = _to_sympy_qq(f, _X).factor_list()
    return [_from_sympy_qq(g.monic(), f.dom) for g, _ in flist]


# -- over finite fields -------------------------------------------------------


def _factor_sqfree_ff(f: UniPoly):
    dom = f.dom
    rng = random.Random(f"ffpoly:{dom.characteristic}:{f.cs!r}")
    out = []
    for g, d in _distinct_degree(f):
        if g.degree == d:
            out.append(g)
        else:
            out.extend(_equal_degree(g, d, rng))
    return out


def _distinct_degree(f: UniPoly):
    dom = f.dom
    q = dom.order
    out = []
    x = UniPoly.x(dom)
    h = x
    d = 0
    while f.degree > 2 * (d + 1) - 1 and f.degree > 0:
        d += 1
        h = _powmod(h, q, f)
        g = (h - x).gcd(f)
        if g.degree > 0:
            out.append((g.monic(), d))
            f = f.exact_div(g)
            h = h % f
    if f.degree > 0:
        out.append((f.monic(), f.degree))
    return out


def _equal_degree(f: UniPoly, d: int, rng) -> list[UniPoly]:
    """Split a product of distinct degree-d irreducibles (Cantor-Zassenhaus)."""
    dom = f.dom
    if f.degree == d:
        return [f.monic()]
    q = dom.order
    one = UniPoly.one(dom)
    while True:
        r = UniPoly(dom, [_random_elem(dom, rng) for _ in range(f.degree)])
        if r.degree < 1:
            continue
        g = r.gcd(f)
        if 0 < g.degree < f.degree:
            w = g
        elif dom.characteristic == 2:
            t = r
            acc = r
            for _ in range(d * _ext_degree(dom) - 1):
                t = _powmod(t, 2, f)
                acc = (acc + t) % f
            w = acc.gcd(f)
        else:
            e = (q ** d - 1) // 2
            w = (_powmod(r, e, f) - one).gcd(f)
        if 0 < w.degree < f.degree:
            left = w.monic()
            right = f.exact_div(w).monic()
            return sorted(
                _equal_degree(left, d, rng) + _equal_degree(right, d, rng),
                key=_poly_key,
            )


def _ext_degree(dom) -> int:
    return dom.k if isinstance(dom, ExtField) else 1


def _random_elem(dom, rng):
    if isinstance(dom, PrimeField):
        return rng.randrange(dom.p)
    return tuple(rng.randrange(dom.p) for _ in range(dom.k))


def _powmod(base: UniPoly, e: int, mod: UniPoly) -> UniPoly:
    result = UniPoly.one(base.dom)
    base = base % mod
    while e:
        if e & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        e >>= 1
    return result


# -- over number-field towers --------------------------------------------------


def _factor_sqfree_tower(f: UniPoly):
    T = f.dom
    simple, fwd, bwd = primitive_element(T)
    fs = f.map_coeffs(simple, fwd)
    m = list(simple.exts[0][1])
    gamma = simple.generator(0)
    x = UniPoly.x(simple)
    for s in _shift_candidates():
        s_elt = simple.from_int(s)
        shift = UniPoly(simple, [simple.neg(simple.mul(s_elt, gamma)), simple.one])
        g = fs.compose(shift)  # g(x) = f(x - s*gamma)
        norm = _norm_poly(g, m)
        if norm.gcd(norm.derivative()).degree == 0:
            factors = []
            for ni in _factor_sqfree_qq(norm):
                ni_s = _lift_poly(ni, simple)
                h = ni_s.gcd(g).monic()
                if h.degree > 0:
                    unshift = UniPoly(simple, [simple.mul(s_elt, gamma), simple.one])
                    factors.append(h.compose(unshift).monic().map_coeffs(T, bwd))
            return factors
    raise ResourceLimitError("no squarefree norm found", stage="tower_factor")


def _shift_candidates():
    yield 0
    for s in range(1, 40):
        yield s
        yield -s


def _norm_poly(g: UniPoly, minpoly_coeffs) -> UniPoly:
    """Res_t(m(t), g(x)) with the primitive element written as t."""
    simple = g.dom

    def to_expr(elem):
        return sympy.Add(
            *(
                sympy.Rational(int(c.numerator), int(c.denominator)) * _T ** i
                for i, c in enumerate(elem)
            )
        )

    g_expr = sympy.Add(*(to_expr(c) * _X ** i for i, c in enumerate(g.cs)))
    m_expr = sympy.Add(
        *(
            sympy.Rational(int(c.numerator), int(c.denominator)) * _T ** i
            for i, c in enumerate(minpoly_coeffs)
        )
    )
    res = sympy.resultant(m_expr, g_expr, _T)
    return _from_sympy_qq(sympy.Poly(res, _X, domain="QQ"))


# -- deterministic ordering keys ------------------------------------------------


def _coef_key(dom, c):
    if isinstance(dom, PrimeField):
        return (c,)
    if isinstance(dom, ExtField):
        return tuple(c)
    if dom.is_rational_field:
        return (c,)
    if isinstance(dom, TowerField):
        return tuple(dom.flatten(c))
    return (str(c),)


def _elem_key(dom, c):
    return _coef_key(dom, c)


def _poly_key(f: UniPoly):
    dom = f.dom
    return tuple(_coef_key(dom, c) for c in f.cs)

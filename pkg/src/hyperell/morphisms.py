"""Search for elliptic morphisms (κ, F, G) with S·G² = F(F−1)(F−κ).

Writing F = U/V with U = μ·Ã²·∏_{R₁}(x−α_i) and V = B²·∏_{R₂}(x−α_i)
over the splitting field of S, the morphism relation is equivalent to the
pair of polynomial identities

    U − V   = C²·∏_{R₃}(x−α_i)
    U − κV  = D²·∏_{R₄}(x−α_i)

for a partition R₁ ∪ R₂ ∪ R₃ ∪ R₄ of the root indices of S, with Ã and B
monic and C, D of bounded degree; then G = √μ·Ã·B·C·D / V².  Each
partition and degree choice gives a quadratic polynomial system made
zero-dimensional by a Rabinowitsch generator forcing κ ∉ {0, 1}, μ ≠ 0
and gcd(Ã, B) = 1.  Solving every system up to the degree bound and
keeping a maximal set of solutions whose differentials F′/G are linearly
independent yields the elliptic factors of the Jacobian.
"""

from __future__ import annotations

from itertools import product

from .curves import HyperellipticCurve
from .errors import ResourceLimitError
from .factor import _elem_key, _poly_key, factor_unipoly, splitting_field
from .linalg import matrix_rank
from .multipoly import MultiPoly, PolyRing
from .ratfunc import RationalFunction, _lift
from .solve import SolutionPoint, solve_zero_dim
from .towers import TowerField
from .unipoly import UniPoly
from .zeta import UNBOUNDED, rank_bound

RANK_HINT_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


class PartitionSpec:
    """A partition R₁..R₄ of root indices plus the ansatz degrees."""

    __slots__ = ("assignment", "d1", "d2", "d3", "d4")

    def __init__(self, assignment, d1, d2, d3, d4):
        self.assignment = tuple(assignment)  # class (1..4) per root index
        self.d1 = d1
        self.d2 = d2
        self.d3 = d3
        self.d4 = d4

    def indices(self, cls: int):
        return [i for i, c in enumerate(self.assignment) if c == cls]

    @property
    def weight(self) -> int:
        """Crude cost estimate: degree of F plus the number of unknowns."""
        r1 = self.assignment.count(1)
        r2 = self.assignment.count(2)
        deg_f = max(2 * self.d1 + r1, 2 * self.d2 + r2)
        return deg_f + self.d1 + self.d2 + self.d3 + self.d4

    def __repr__(self):
        return (
            f"PartitionSpec({self.assignment}, d1={self.d1}, d2={self.d2}, "
            f"d3={self.d3}, d4={self.d4})"
        )


class EllipticMorphism:
    """(κ, F, G) with S·G² = F(F−1)(F−κ); the sign choice ε = +1 lives in G."""

    __slots__ = ("kappa", "F", "G", "tower", "j", "epsilon")

    def __init__(self, kappa, F: RationalFunction, G: RationalFunction,
                 tower: TowerField):
        self.kappa = kappa
        self.F = F
        self.G = G
        self.tower = tower
        self.epsilon = 1
        self.j = _j_invariant(tower, kappa)

    def to_json(self) -> dict:
        t = self.tower
        return {
            "kappa": t.to_str(self.kappa),
            "F": {"num": self.F.num.to_str(), "den": self.F.den.to_str()},
            "G": {"num": self.G.num.to_str(), "den": self.G.den.to_str()},
            "j": t.to_str(self.j),
            "epsilon": self.epsilon,
            "field": tower_description(t),
        }

    def __repr__(self):
        t = self.tower
        return (
            f"EllipticMorphism(kappa={t.to_str(self.kappa)}, "
            f"F={self.F.to_str()}, G={self.G.to_str()})"
        )


def tower_description(t: TowerField):
    """JSON-friendly list of the extension steps of a tower."""
    steps = []
    cur = t
    while cur.depth > 0:
        name, mp = cur.exts[-1]
        steps.append({"name": name,
                      "minpoly": [cur.down.to_str(c) for c in mp]})
        cur = cur.down
    steps.reverse()
    return steps


def _j_invariant(t: TowerField, kappa):
    # j = 256 (κ² − κ + 1)³ / (κ² (κ − 1)²)
    k2 = t.mul(kappa, kappa)
    num = t.add(t.sub(k2, kappa), t.one)
    num3 = t.mul(t.mul(num, num), num)
    km1 = t.sub(kappa, t.one)
    den = t.mul(k2, t.mul(km1, km1))
    return t.mul(t.from_int(256), t.div(num3, den))


def enumerate_partitions(deg_s: int, m: int):
    """All PartitionSpecs with deg F ≤ m surviving the parity filters."""
    specs = []
    for assignment in product((1, 2, 3, 4), repeat=deg_s):
        r = [assignment.count(c) for c in (1, 2, 3, 4)]
        if r[0] > m or r[1] > m:
            continue
        for d1 in range((m - r[0]) // 2 + 1):
            for d2 in range((m - r[1]) // 2 + 1):
                deg_u = 2 * d1 + r[0]
                deg_v = 2 * d2 + r[1]
                if max(deg_u, deg_v) == 0:
                    continue
                d3 = _cd_degree(deg_u, deg_v, r[2])
                d4 = _cd_degree(deg_u, deg_v, r[3])
                if d3 is None or d4 is None:
                    continue
                specs.append(PartitionSpec(assignment, d1, d2, d3, d4))
    specs.sort(key=lambda s: (s.weight, s.assignment, s.d1, s.d2))
    return specs


def _cd_degree(deg_u: int, deg_v: int, r: int):
    """Degree bound for the C/D ansatz, or None if no choice can work.

    deg(C²·P₃) ≡ r (mod 2) always, while deg(U − V) is max(deg U, deg V)
    unless the leading terms cancel, which needs deg U = deg V.
    """
    t = max(deg_u, deg_v) - r
    if t < 0:
        return None
    if t % 2 == 1 and deg_u != deg_v:
        return None
    return t // 2


def _var_names(spec: PartitionSpec):
    names = ["eps"]
    names += [f"c{i}" for i in range(spec.d3 + 1)]
    names += [f"d{i}" for i in range(spec.d4 + 1)]
    names += [f"a{i}" for i in range(spec.d1)]
    names += [f"b{i}" for i in range(spec.d2)]
    names += ["mu", "kappa"]
    return names


def build_ideal(spec: PartitionSpec, roots, L: TowerField):
    """Generators of the quadratic system for one partition/degree choice."""
    ring = PolyRing(L, _var_names(spec), "lex")
    one = ring.one()

    def root_prod(cls):
        cs = [L.one]  # unipoly coefficients, low degree first
        for i in spec.indices(cls):
            cs = _mul_linear(L, cs, roots[i])
        return [ring.const(c) for c in cs]

    p1, p2, p3, p4 = (root_prod(c) for c in (1, 2, 3, 4))
    a_poly = [ring.var(f"a{i}") for i in range(spec.d1)] + [one]
    b_poly = [ring.var(f"b{i}") for i in range(spec.d2)] + [one]
    c_poly = [ring.var(f"c{i}") for i in range(spec.d3 + 1)]
    d_poly = [ring.var(f"d{i}") for i in range(spec.d4 + 1)]
    mu = ring.var("mu")
    kappa = ring.var("kappa")
    eps = ring.var("eps")

    u = [mu * t for t in _conv(_sq(a_poly), p1)]
    v = _conv(_sq(b_poly), p2)
    c_side = _conv(_sq(c_poly), p3)
    d_side = _conv(_sq(d_poly), p4)

    gens = []
    for k in range(max(len(u), len(v), len(c_side))):
        g = _at(ring, u, k) - _at(ring, v, k) - _at(ring, c_side, k)
        if not g.is_zero:
            gens.append(g)
    for k in range(max(len(u), len(v), len(d_side))):
        g = _at(ring, u, k) - kappa * _at(ring, v, k) - _at(ring, d_side, k)
        if not g.is_zero:
            gens.append(g)
    res = _sylvester_resultant(ring, a_poly, b_poly)
    gens.append(kappa * (kappa - one) * mu * res * eps + one)
    return gens, ring


def _mul_linear(L, cs, root):
    # multiply a coefficient list by (x − root)
    out = [L.zero] * (len(cs) + 1)
    for i, c in enumerate(cs):
        out[i + 1] = L.add(out[i + 1], c)
        out[i] = L.sub(out[i], L.mul(c, root))
    return out


def _sq(poly):
    return _conv(poly, poly)


def _conv(a, b):
    if not a or not b:
        return []
    ring = a[0].ring
    out = [ring.zero() for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _at(ring, coeffs, k):
    return coeffs[k] if k < len(coeffs) else ring.zero()


def _sylvester_resultant(ring: PolyRing, a, b):
    """Resultant of two coefficient lists (low→high) of symbolic polynomials."""
    m, n = len(a) - 1, len(b) - 1
    if m == 0 or n == 0:
        return ring.one()
    size = m + n
    rows = []
    for i in range(n):
        row = [ring.zero()] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [ring.zero()] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _det(ring, rows)


def _det(ring, rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = ring.zero()
    for i in range(n):
        if rows[i][0].is_zero:
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = rows[i][0] * _det(ring, minor)
        out = out + term if i % 2 == 0 else out - term
    return out


def _presolve_linear(gens, ring: PolyRing):
    """Eliminate variables that appear linearly with a constant coefficient.

    Returns (remaining gens, shrunken ring, eliminations); eliminations is
    a list of (var, expression) in elimination order, each expression a
    polynomial (over the original ring) in the variables still present at
    that point.  gens is None when the system is visibly inconsistent.
    """
    gens = [g for g in gens if not g.is_zero]
    eliminations = []
    changed = True
    while changed:
        changed = False
        for g in gens:
            if g.total_degree() == 0:
                return None, ring, eliminations
            hit = _linear_var(g, ring)
            if hit is None:
                continue
            name, expr = hit
            eliminations.append((name, expr))
            new_gens = []
            for h in gens:
                if h is g:
                    continue
                h2 = h.substitute(name, expr)
                if not h2.is_zero:
                    new_gens.append(h2)
            gens = new_gens
            changed = True
            break
    used = set()
    for g in gens:
        used.update(g.used_vars())
    keep = [v for v in ring.vars if v in used]
    new_ring = PolyRing(ring.dom, keep, ring.order)
    gens = [new_ring.from_terms(_project_terms(g, ring, keep)) for g in gens]
    return gens, new_ring, eliminations


def _linear_var(g: MultiPoly, ring: PolyRing):
    """A variable occurring in g only as c·v with constant c, solved for."""
    for vi, name in enumerate(ring.vars):
        if name == "eps":
            continue  # keep the Rabinowitsch variable for the solver
        deg = max((e[vi] for e, _ in g.terms), default=0)
        if deg != 1:
            continue
        with_v = [(e, c) for e, c in g.terms if e[vi] == 1]
        if len(with_v) != 1 or any(with_v[0][0][j] for j in range(ring.nvars)
                                   if j != vi):
            continue
        coef = with_v[0][1]
        rest = ring.from_terms([(e, c) for e, c in g.terms if e[vi] == 0])
        expr = rest.scale(ring.dom.neg(ring.dom.inv(coef)))
        return name, expr
    return None


def _project_terms(g: MultiPoly, ring: PolyRing, keep):
    idx = [ring.vars.index(v) for v in keep]
    return [(tuple(e[i] for i in idx), c) for e, c in g.terms]


def _embed(master: TowerField, sol_tower: TowerField, base: TowerField):
    """Embed sol_tower (an extension of base) into the growing master.

    master must also extend base.  Returns (new_master, map) where map
    sends sol_tower elements into new_master; generators whose minimal
    polynomials already have a root in the master are reused, the rest
    are adjoined.
    """
    levels = []
    t = sol_tower
    while t.depth > base.depth:
        levels.append(t)
        t = t.down
    levels.reverse()
    M = master
    images = []  # image in M of each chain generator

    def map_elem(e, lvl):
        # e lives in levels[lvl-1] if lvl > 0, else in base
        if lvl == 0:
            return base.promote(e, M) if M.depth > base.depth else e
        r = images[lvl - 1]
        acc = M.zero
        for comp in reversed(e):
            acc = M.add(M.mul(acc, r), map_elem(comp, lvl - 1))
        return acc

    for idx, lv in enumerate(levels):
        _, mp = lv.exts[-1]
        mp_m = UniPoly(M, [map_elem(c, idx) for c in mp])
        facs = sorted((h for h, _ in factor_unipoly(mp_m)),
                      key=lambda h: (h.degree, _poly_key(h)))
        h = facs[0]
        if h.degree == 1:
            images.append(M.neg(h.coeff(0)))
        else:
            grown = M.adjoin(h, check=False)
            images = [M.promote(im, grown) for im in images]
            M = grown
            images.append(M.generator(-1))

    n = len(levels)
    return M, lambda e: map_elem(e, n)


def verify_morphism(S: UniPoly, mor: EllipticMorphism) -> bool:
    """Exact check of S·G² = F(F−1)(F−κ) and that F′/G is a short polynomial."""
    t = mor.tower
    S_t = _lift(S, t)
    F, G = mor.F, mor.G
    one = RationalFunction.one(t)
    kap = RationalFunction.from_poly(UniPoly.const(t, mor.kappa))
    lhs = RationalFunction.from_poly(S_t) * G * G
    rhs = F * (F - one) * (F - kap)
    if lhs != rhs:
        return False
    h = F.derivative() / G
    g = (S_t.degree - 1) // 2
    return h.is_polynomial and h.num.degree <= g - 1


def independence_rank(morphisms) -> int:
    """Rank of the coefficient matrix of the differentials F_i′/G_i.

    All morphisms must live in towers that extend one another; rows are
    promoted into the deepest.
    """
    if not morphisms:
        return 0
    M = max((m.tower for m in morphisms), key=lambda t: t.depth)
    diffs = []
    width = 0
    for m in morphisms:
        h = (m.F.derivative() / m.G).num
        diffs.append((m.tower, h))
        width = max(width, h.degree + 1)
    rows = []
    for t, h in diffs:
        row = []
        for i in range(width):
            c = h.coeff(i)
            row.append(t.promote(c, M) if M.depth > t.depth else c)
        rows.append(row)
    return matrix_rank(M, rows)


def default_rank_hint(curve: HyperellipticCurve):
    """Smallest zeta-function rank bound over a panel of small good primes."""
    best = None
    for p in RANK_HINT_PRIMES:
        try:
            rb = rank_bound(curve, p)
        except Exception:
            return None
        if rb.value == UNBOUNDED:
            continue
        best = rb.value if best is None else min(best, rb.value)
        if best == 0:
            break
    return best


def elliptic_factors(curve: HyperellipticCurve, m: int, rank_hint=None,
                     use_rank_hint: bool = True, normalized: bool = False):
    """Maximal independent list of elliptic morphisms with deg F ≤ m.

    The returned morphisms live in a common tower and are expressed in the
    coordinates of the curve's original model (the normalization record is
    unwound) unless ``normalized`` is set.  When a rank hint (from the
    zeta-function bound, unless supplied) is available the search stops
    early once it is reached.
    """
    if m < 1:
        raise ValueError("degree bound must be >= 1")
    if rank_hint is None and use_rank_hint:
        rank_hint = default_rank_hint(curve)
    S = curve.S
    g = curve.genus
    L, roots = splitting_field(S)
    master = L
    kept = []  # EllipticMorphisms over master, normalized coordinates
    done = False
    for spec in enumerate_partitions(S.degree, m):
        if done:
            break
        gens, ring = build_ideal(spec, roots, L)
        red_gens, red_ring, elim = _presolve_linear(gens, ring)
        if red_gens is None:
            continue
        try:
            if red_ring.nvars == 0:
                sols = [SolutionPoint({}, L)] if not red_gens else []
            else:
                sols = solve_zero_dim(red_gens, L, red_ring)
        except ResourceLimitError:
            # degenerate (positive-dimensional) family; any genuine
            # morphism in it reappears in another partition
            continue
        for sol in sols:
            assignment = _recover_assignment(sol, elim, ring, L)
            mor = _morphism_from_solution(spec, roots, L, sol.tower,
                                          assignment, S)
            if mor is None:
                continue
            grown, emb = _embed(master, mor.tower, L)
            cand = EllipticMorphism(
                emb(mor.kappa),
                mor.F.map_coeffs(grown, emb),
                mor.G.map_coeffs(grown, emb),
                grown,
            )
            promoted = kept if grown == master else [
                _promote_morphism(k, grown) for k in kept
            ]
            if independence_rank(promoted + [cand]) == len(kept) + 1:
                master = grown
                kept = promoted + [cand]
                if (rank_hint is not None and len(kept) >= rank_hint) or \
                        len(kept) >= g:
                    done = True
                    break
    return _finalize(curve, kept, master, normalized)


def _promote_morphism(mor: EllipticMorphism, M: TowerField):
    if mor.tower == M:
        return mor
    t = mor.tower

    def pr(c):
        return t.promote(c, M)

    return EllipticMorphism(pr(mor.kappa), mor.F.map_coeffs(M, pr),
                            mor.G.map_coeffs(M, pr), M)


def _recover_assignment(sol: SolutionPoint, eliminations, ring: PolyRing,
                        L: TowerField):
    """Full variable assignment in the solution's tower.

    Variables that disappeared from every generator without being solved
    for are genuinely free; they default to zero and the exact morphism
    check vets the choice.
    """
    T = sol.tower
    assignment = dict(sol.assignment)

    def promote(c):
        return L.promote(c, T) if T.depth > L.depth else c

    for name, expr in reversed(eliminations):
        expr_t = expr.map_coeffs(T, promote)
        full = {v: assignment.get(v, T.zero) for v in ring.vars}
        assignment[name] = expr_t.evaluate_all(full)
    return assignment


def _morphism_from_solution(spec, roots, L, T, assignment, S: UniPoly):
    def val(name):
        return assignment.get(name, T.zero)

    def promote_l(c):
        return L.promote(c, T) if T.depth > L.depth else c

    mu = val("mu")
    if T.is_zero(mu):
        return None
    a_p = UniPoly(T, [val(f"a{i}") for i in range(spec.d1)] + [T.one])
    b_p = UniPoly(T, [val(f"b{i}") for i in range(spec.d2)] + [T.one])
    c_p = UniPoly(T, [val(f"c{i}") for i in range(spec.d3 + 1)])
    d_p = UniPoly(T, [val(f"d{i}") for i in range(spec.d4 + 1)])
    if c_p.is_zero or d_p.is_zero:
        return None

    def root_poly(cls):
        p = UniPoly.one(T)
        for i in spec.indices(cls):
            p = p * UniPoly(T, [T.neg(promote_l(roots[i])), T.one])
        return p

    u = (a_p * a_p * root_poly(1)).scale(mu)
    v = b_p * b_p * root_poly(2)
    f = RationalFunction(u, v)
    if f.num.degree == 0 and f.den.degree == 0:
        return None
    # G carries √μ; adjoin it unless μ is already a square in T
    sq = UniPoly(T, [T.neg(mu), T.zero, T.one])
    lin = sorted((h for h, _ in factor_unipoly(sq) if h.degree == 1),
                 key=_poly_key)
    if lin:
        tg = T
        smu = T.neg(lin[0].coeff(0))
        pr = lambda c: c
    else:
        tg = T.adjoin(sq, check=False)
        smu = tg.generator(-1)
        pr = lambda c, _t=T, _g=tg: _t.promote(c, _g)
    num = (a_p * b_p * c_p * d_p).map_coeffs(tg, pr).scale(smu)
    den = (v * v).map_coeffs(tg, pr)
    mor = EllipticMorphism(pr(assignment["kappa"]),
                           f.map_coeffs(tg, pr),
                           RationalFunction(num, den), tg)
    if not verify_morphism(S, mor):
        return None
    return mor


def _finalize(curve: HyperellipticCurve, kept, master: TowerField,
              normalized: bool = False):
    """Unwind the normalization record and order the results."""
    record = curve.record
    K = curve.dom
    out = []
    for mor in kept:
        F, G, kappa = mor.F, mor.G, mor.kappa
        if not normalized and not record.is_trivial:
            def pr_k(c, _m=master, _k=K):
                return _k.promote(c, _m) if _m.depth > _k.depth else c

            phi_inv = record.inverse_mobius_ratfunc().map_coeffs(master, pr_k)
            w = record.w.map_coeffs(master, pr_k)
            F = F.compose(phi_inv)
            G = (w * G).compose(phi_inv)
        out.append(EllipticMorphism(kappa, F, G, master))
    out.sort(key=lambda mr: (_elem_key(master, mr.kappa),
                             _poly_key(mr.F.den), _poly_key(mr.F.num)))
    return out

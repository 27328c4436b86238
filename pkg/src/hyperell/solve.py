"""Groebner bases and complete solution of zero-dimensional systems.

Buchberger's algorithm with the sugar selection strategy and both the
coprimality and chain criteria; pair ordering is deterministic, so output
is reproducible.  ``solve_zero_dim`` back-substitutes through a lex basis,
factoring the eliminant over the current number-field tower at each level
and adjoining one irreducible factor at a time, which yields every
solution over the algebraic closure together with the minimal tower that
contains it.
"""

from __future__ import annotations

from .errors import ResourceLimitError
from .factor import _poly_key, factor_unipoly
from .multipoly import MultiPoly, PolyRing
from .towers import TowerField
from .unipoly import UniPoly


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def normal_form(f: MultiPoly, basis) -> MultiPoly:
    """Full remainder of multivariate division of f by the basis."""
    ring = f.ring
    dom = ring.dom
    rem = ring.zero()
    work = f
    while not work.is_zero:
        lm, lc = work.lm, work.lc
        for g in basis:
            if _divides(g.lm, lm):
                e = tuple(x - y for x, y in zip(lm, g.lm))
                c = dom.div(lc, g.lc)
                work = work - g.mul_term(e, c)
                break
        else:
            t = MultiPoly(ring, ((lm, lc),))
            rem = rem + t
            work = work - t
    return rem


def _spoly(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    ring = f.ring
    dom = ring.dom
    l = _lcm_exp(f.lm, g.lm)
    ef = tuple(x - y for x, y in zip(l, f.lm))
    eg = tuple(x - y for x, y in zip(l, g.lm))
    return f.mul_term(ef, dom.inv(f.lc)) - g.mul_term(eg, dom.inv(g.lc))


def groebner(gens, ring: PolyRing | None = None, max_basis: int = 400):
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        return []
    ring = ring or gens[0].ring
    G = []
    sugars = []
    for g in sorted(gens, key=lambda p: (p.total_degree(), len(p.terms))):
        G.append(g.monic())
        sugars.append(g.total_degree())
    pairs = {}

    def add_pairs(j):
        for i in range(j):
            l = _lcm_exp(G[i].lm, G[j].lm)
            sugar = max(
                sugars[i] + sum(l) - sum(G[i].lm), sugars[j] + sum(l) - sum(G[j].lm)
            )
            pairs[(i, j)] = (sugar, ring.mono_key(l))

    for j in range(len(G)):
        add_pairs(j)

    while pairs:
        (i, j) = min(pairs, key=lambda k: (pairs[k][0], pairs[k][1], k))
        del pairs[(i, j)]
        fi, fj = G[i], G[j]
        l = _lcm_exp(fi.lm, fj.lm)
        # coprimality criterion
        if l == tuple(a + b for a, b in zip(fi.lm, fj.lm)):
            continue
        # chain criterion
        skip = False
        for k in range(len(G)):
            if k in (i, j):
                continue
            if _divides(G[k].lm, l):
                a, b = (min(i, k), max(i, k)), (min(j, k), max(j, k))
                if a not in pairs and b not in pairs:
                    skip = True
                    break
        if skip:
            continue
        s = normal_form(_spoly(fi, fj), G)
        if s.is_zero:
            continue
        s = s.monic()
        G.append(s)
        sugars.append(s.total_degree())
        if len(G) > max_basis:
            raise ResourceLimitError(
                f"Groebner basis exceeded {max_basis} elements", stage="groebner"
            )
        add_pairs(len(G) - 1)

    return _reduce_basis(G)


def _reduce_basis(G):
    # minimal basis: keep only generators whose lm no kept lm divides
    # (ascending monomial order guarantees divisors come first)
    minimal = []
    for g in sorted(G, key=lambda p: p.ring.mono_key(p.lm)):
        if not any(_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    # tail-reduce each against the others
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        r = normal_form(g, others)
        if not r.is_zero:
            reduced.append(r.monic())
    reduced.sort(key=lambda p: p.ring.mono_key(p.lm), reverse=True)
    return reduced


def is_zero_dimensional(G, ring: PolyRing | None = None) -> bool:
    """True iff for every variable some leading monomial is a pure power of it."""
    if not G:
        return False
    ring = ring or G[0].ring
    if any(g.total_degree() == 0 for g in G):
        return True  # ideal is (1): empty variety
    for i in range(ring.nvars):
        if not any(
            g.lm[i] > 0 and all(e == 0 for k, e in enumerate(g.lm) if k != i)
            for g in G
        ):
            return False
    return True


class SolutionPoint:
    """An exact common zero; assignment maps variable name to a tower element."""

    __slots__ = ("assignment", "tower")

    def __init__(self, assignment: dict, tower: TowerField):
        self.assignment = dict(assignment)
        self.tower = tower

    def __repr__(self):
        vals = ", ".join(
            f"{n}={self.tower.to_str(v)}" for n, v in sorted(self.assignment.items())
        )
        return f"SolutionPoint({vals})"


def solve_zero_dim(gens, tower: TowerField, ring: PolyRing | None = None):
    """All solutions of a zero-dimensional system over the algebraic closure.

    ``gens`` are MultiPolys over ``tower``.  Returns SolutionPoints whose
    towers extend ``tower``; extension steps respect the tower budget.
    """
    gens = [g for g in gens if not g.is_zero]
    if not gens:
        raise ResourceLimitError(
            "empty system is not zero-dimensional", stage="solve_zero_dim"
        )
    ring = ring or gens[0].ring
    if ring.order != "lex":
        ring = PolyRing(ring.dom, ring.vars, "lex")
        gens = [ring.from_terms(g.terms) for g in gens]
    return _solve_rec(gens, ring, tower)


def _all_roots(f: UniPoly, tower: TowerField):
    """Every root of f with the minimal tower extension containing it."""
    out = []
    stack = [(f, tower)]
    while stack:
        g, T = stack.pop()
        if g.dom != T:
            g = g.map_coeffs(T, lambda c, _d=g.dom, _t=T: _d.promote(c, _t))
        factors = sorted(
            (h for h, _ in factor_unipoly(g)), key=lambda h: (h.degree, _poly_key(h))
        )
        for h in factors:
            if h.degree == 1:
                out.append((T.neg(h.coeff(0)), T))
            else:
                stack.append((h, T.adjoin(h, check=False)))
    out.sort(key=lambda rt: (rt[1].degree, rt[1].exts, rt[1].flatten(rt[0])
                             if rt[1].depth else [rt[0]]))
    return out


def _solve_rec(gens, ring: PolyRing, tower: TowerField):
    G = groebner(gens, ring)
    if not G or any(g.total_degree() == 0 for g in G):
        return []
    if ring.nvars == 0:
        return [SolutionPoint({}, tower)]
    if not is_zero_dimensional(G, ring):
        raise ResourceLimitError(
            "system is not zero-dimensional", stage="solve_zero_dim"
        )
    last = ring.vars[-1]
    # lex basis: the unique generator using only the smallest variable
    elim = None
    for g in G:
        used = g.used_vars()
        if used == [last] or not used:
            elim = g.to_unipoly()
            break
    if elim is None:
        raise ResourceLimitError(
            f"no eliminant in {last} found", stage="solve_zero_dim"
        )
    solutions = []
    for root, ext in _all_roots(elim.squarefree_part(), tower):
        if ext == tower:
            promote = lambda c: c
        else:
            promote = lambda c, _e=ext: tower.promote(c, _e)
        sub_ring = PolyRing(ext, ring.vars[:-1], "lex")
        if not ring.vars[:-1]:
            solutions.append(SolutionPoint({last: root}, ext))
            continue
        sub_gens = []
        for g in G:
            gp = g.map_coeffs(ext, promote)
            gs = gp.subs({last: root})
            gs = sub_ring.from_terms(gs.terms)
            if not gs.is_zero:
                sub_gens.append(gs)
        if not sub_gens:
            raise ResourceLimitError(
                "unexpected free variables after substitution",
                stage="solve_zero_dim",
            )
        for sol in _solve_rec(sub_gens, sub_ring, ext):
            assignment = dict(sol.assignment)
            assignment[last] = ext.promote(root, sol.tower) if sol.tower != ext else root
            solutions.append(SolutionPoint(assignment, sol.tower))
    return solutions

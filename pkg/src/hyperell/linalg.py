"""Dense exact linear algebra over an arbitrary coefficient field."""

from __future__ import annotations

from .errors import SingularSystemError


def solve_linear(dom, rows, rhs):
    """Solve A x = b over ``dom``; return one solution or None if inconsistent.

    ``rows`` is a list of lists (the matrix A), ``rhs`` the right-hand side.
    Underdetermined systems get the particular solution with free variables
    set to zero (deterministic).
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) + [v] for r, v in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not dom.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = dom.inv(a[r][c])
        a[r] = [dom.mul(inv, v) for v in a[r]]
        for i in range(m):
            if i != r and not dom.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if not dom.is_zero(a[i][n]):
            return None
    x = [dom.zero] * n
    for i, c in enumerate(piv_cols):
        x[c] = a[i][n]
    return x


def matrix_rank(dom, rows):
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    a = [list(r) for r in rows]
    rank = 0
    for c in range(n):
        piv = None
        for i in range(rank, m):
            if not dom.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = dom.inv(a[rank][c])
        a[rank] = [dom.mul(inv, v) for v in a[rank]]
        for i in range(m):
            if i != rank and not dom.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(a[i], a[rank])]
        rank += 1
        if rank == m:
            break
    return rank


def invert_matrix(dom, rows):
    n = len(rows)
    a = [list(r) + [dom.one if i == j else dom.zero for j in range(n)] for i, r in enumerate(rows)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not dom.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            raise SingularSystemError("matrix is singular")
        a[c], a[piv] = a[piv], a[c]
        inv = dom.inv(a[c][c])
        a[c] = [dom.mul(inv, v) for v in a[c]]
        for i in range(n):
            if i != c and not dom.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(a[i], a[c])]
    return [row[n:] for row in a]


def nullspace(dom, rows):
    """Basis of the right nullspace of A (list of vectors), deterministic order."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    a = [list(r) for r in rows]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not dom.is_zero(a[i][c]):
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = dom.inv(a[r][c])
        a[r] = [dom.mul(inv, v) for v in a[r]]
        for i in range(m):
            if i != r and not dom.is_zero(a[i][c]):
                f = a[i][c]
                a[i] = [dom.sub(x, dom.mul(f, y)) for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == m:
            break
    basis = []
    free = [c for c in range(n) if c not in piv_cols]
    for fc in free:
        v = [dom.zero] * n
        v[fc] = dom.one
        for i, pc in enumerate(piv_cols):
            v[pc] = dom.neg(a[i][fc])
        basis.append(v)
    return basis

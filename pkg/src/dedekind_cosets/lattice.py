"""Integer lattice helpers: column Hermite form with transform, Smith form, solving.

Matrices are handled as lists of integer column vectors; dimensions here are
tiny (at most 4), so plain Python ints are used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


class RankError(ValueError):
    """The supplied vectors do not span a full-rank lattice."""


def hnf_with_transform(cols: list[list[int]], n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form of the lattice spanned by ``cols``.

    Returns ``(basis, coeffs)``: ``basis[j]`` is the j-th column of the
    upper-triangular HNF (positive diagonal, entries above the diagonal reduced
    into ``[0, pivot)``), and ``coeffs[j]`` expresses it as an integer
    combination of the input columns.
    """
    k = len(cols)
    work = [list(c) for c in cols]
    trans = [[int(i == j) for i in range(k)] for j in range(k)]

    def axpy(dst, src, q):
        # column dst -= q * column src
        if q:
            wd, ws = work[dst], work[src]
            for i in range(n):
                wd[i] -= q * ws[i]
            td, ts = trans[dst], trans[src]
            for i in range(k):
                td[i] -= q * ts[i]

    pivots: list[int | None] = [None] * n
    remaining = list(range(k))
    for r in reversed(range(n)):
        while True:
            active = [j for j in remaining if work[j][r] != 0]
            if len(active) <= 1:
                break
            p = min(active, key=lambda j: abs(work[j][r]))
            for j in active:
                if j != p:
                    axpy(j, p, work[j][r] // work[p][r])
        if not active:
            raise RankError("vectors do not span a full-rank lattice")
        p = active[0]
        if work[p][r] < 0:
            work[p] = [-v for v in work[p]]
            trans[p] = [-v for v in trans[p]]
        pivots[r] = p
        remaining.remove(p)

    for r in reversed(range(n)):
        pr = pivots[r]
        for r2 in range(r + 1, n):
            p2 = pivots[r2]
            axpy(p2, pr, work[p2][r] // work[pr][r])

    return [work[p] for p in pivots], [trans[p] for p in pivots]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, u, v)`` with ``g = gcd(a, b) = u*a + v*b`` and ``g >= 0``."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    if a < 0:
        return -a, -u0, -v0
    return a, u0, v0


def _hnf2(cols) -> list[list[int]]:
    # incremental form of the rank-2 case; basis (a, 0), (b, c)
    a, b, c = 0, 0, 0
    for x, y in cols:
        if y:
            g, u, v = xgcd(c, y)
            # the combination (y/g)(b, c) - (c/g)(x, y) has zero second coordinate
            a = gcd(a, (y // g) * b - (c // g) * x)
            b, c = u * b + v * x, g
        else:
            a = gcd(a, x)
        if a:
            b %= a
    if a == 0 or c == 0:
        raise RankError("vectors do not span a full-rank lattice")
    return [[a, 0], [b, c]]


def hnf(cols: list[list[int]], n: int) -> list[list[int]]:
    if n == 2:
        return _hnf2(cols)
    if n == 1:
        g = 0
        for (x,) in cols:
            g = gcd(g, x)
        if g == 0:
            raise RankError("vectors do not span a full-rank lattice")
        return [[g]]
    return hnf_with_transform(cols, n)[0]


def solve_upper(basis: list[list[int]], target) -> list[Fraction]:
    """Rational coordinates of ``target`` w.r.t. an upper-triangular column basis."""
    n = len(basis)
    w = [Fraction(0)] * n
    for r in reversed(range(n)):
        acc = Fraction(target[r]) - sum(basis[j][r] * w[j] for j in range(r + 1, n))
        w[r] = acc / basis[r][r]
    return w


def in_lattice(basis: list[list[int]], target) -> bool:
    return all(c.denominator == 1 for c in solve_upper(basis, target))


def integer_coefficients(cols: list[list[int]], target, n: int) -> list[int] | None:
    """Integer ``z`` with ``sum z_j cols[j] == target``, or ``None`` if none exists."""
    basis, coeffs = hnf_with_transform(cols, n)
    w = solve_upper(basis, target)
    if any(c.denominator != 1 for c in w):
        return None
    k = len(cols)
    return [sum(int(w[j]) * coeffs[j][i] for j in range(n)) for i in range(k)]


def det(cols: list[list]) -> Fraction:
    n = len(cols)
    m = [[Fraction(cols[j][i]) for j in range(n)] for i in range(n)]
    result = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            result = -result
        result *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for cc in range(c, n):
                    m[r][cc] -= f * m[c][cc]
    return result


def smith_left(m: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Smith form of a nonsingular square integer matrix given by rows.

    Returns ``(left, diag)`` with ``m = left * D * right`` for some unimodular
    ``right``, ``D = diag(diag)``, ``diag[i] | diag[i+1]`` and ``left``
    unimodular (given as rows).
    """
    n = len(m)
    a = [list(row) for row in m]
    left = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_axpy(dst, src, q):
        # row dst -= q * row src; keep m = left * a * right by left col src += q col dst
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        for row in left:
            row[src] += q * row[dst]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        for row in left:
            row[i], row[j] = row[j], row[i]

    def col_axpy(dst, src, q):
        for row in a:
            row[dst] -= q * row[src]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]

    for t in range(n):
        while True:
            nz = [(abs(a[i][j]), i, j) for i in range(t, n) for j in range(t, n) if a[i][j]]
            if not nz:
                raise RankError("singular matrix")
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                q = a[i][t] // p
                row_axpy(i, t, q)
                dirty |= a[i][t] != 0
            for j in range(t + 1, n):
                q = a[t][j] // p
                col_axpy(j, t, q)
                dirty |= a[t][j] != 0
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, n) for j in range(t + 1, n) if a[i][j] % p), None)
            if bad is None:
                break
            # pull the offending row into row t so the pivot shrinks next round
            row_axpy(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            for row in left:
                row[t] = -row[t]
    return left, [a[i][i] for i in range(n)]

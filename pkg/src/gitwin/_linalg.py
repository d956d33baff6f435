"""Exact dense linear algebra over the rationals for small matrices.

Everything operates on lists of lists of Fractions (rows) and returns
Fractions; no floating point is used anywhere.  Sizes here are tiny
(ranks up to a handful for the convex geometry, a few hundred for graded
strand computations), so plain Gaussian elimination is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

Row = list[Fraction]
Matrix = list[Row]

ZERO = Fraction(0)
ONE = Fraction(1)


def copy_matrix(rows: Sequence[Sequence[Fraction]]) -> Matrix:
    return [list(r) for r in rows]


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), ZERO)


def mat_vec(rows: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> Row:
    return [dot(r, v) for r in rows]


def rref(rows: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form.  Returns (matrix, pivot column indices)."""
    m = copy_matrix(rows)
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = ONE / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def solve(rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> Optional[Row]:
    """One solution of A x = b (free variables set to 0), or None if inconsistent."""
    nrows = len(rows)
    if nrows == 0:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return x


def kernel(rows: Sequence[Sequence[Fraction]], ncols: Optional[int] = None) -> Matrix:
    """Basis of the null space of A (one vector per free column)."""
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        return [[ONE if j == i else ZERO for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    basis: Matrix = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [ZERO] * ncols
        v[free] = ONE
        for i, c in enumerate(pivots):
            v[c] = -red[i][free]
        basis.append(v)
    return basis


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    m = copy_matrix(rows)
    n = len(m)
    sign = ONE
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if m[i][c] != 0), None)
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if m[i][c] != 0:
                factor = m[i][c] / m[c][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[c])]
    result = sign
    for i in range(n):
        result *= m[i][i]
    return result


def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis of the saturated integer kernel {x in Z^ncols : A x = 0}.

    Column-reduces [A; I] by unimodular integer column operations; columns
    whose A-part becomes zero carry a kernel basis vector in the I-part.
    Kernels of integer matrices are saturated by construction.
    """
    nrows = len(rows)
    # columns of the stacked matrix, each of length nrows + ncols
    cols = [[rows[i][j] for i in range(nrows)] + [1 if t == j else 0 for t in range(ncols)]
            for j in range(ncols)]
    row = 0
    col = 0
    while row < nrows and col < len(cols):
        # clear row `row` across columns col.. by gcd steps
        while True:
            nonzero = [j for j in range(col, len(cols)) if cols[j][row] != 0]
            if not nonzero:
                break
            j0 = min(nonzero, key=lambda j: (abs(cols[j][row]), j))
            cols[col], cols[j0] = cols[j0], cols[col]
            if cols[col][row] < 0:
                cols[col] = [-x for x in cols[col]]
            done = True
            for j in range(col + 1, len(cols)):
                if cols[j][row] != 0:
                    q = cols[j][row] // cols[col][row]
                    cols[j] = [a - q * b for a, b in zip(cols[j], cols[col])]
                    if cols[j][row] != 0:
                        done = False
            if done:
                break
        if any(cols[j][row] != 0 for j in range(col, len(cols))):
            col += 1
        row += 1
    basis = []
    for j in range(len(cols)):
        if all(cols[j][i] == 0 for i in range(nrows)):
            vec = tuple(cols[j][nrows:])
            if any(vec):
                basis.append(vec)
    return basis


def clear_denominators(entries: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector to the integer vector with the same direction
    and content 1 times the gcd structure preserved (no sign change)."""
    denom = lcm(*(e.denominator for e in entries)) if entries else 1
    return tuple(int(e * denom) for e in entries)


def content(entries: Sequence[int]) -> int:
    g = 0
    for e in entries:
        g = gcd(g, abs(e))
    return g

"""Hermite and Smith normal forms of integer matrices.

Everything here works on plain lists of Python ints, so entries never
overflow.  Matrices are lists of rows; an empty matrix is ``[]`` and its
column count has to be passed separately where it matters.
"""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix, inner: int | None = None) -> Matrix:
    if not a:
        return []
    if inner is None:
        inner = len(b)
    ncols = len(b[0]) if b else 0
    return [
        [sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(ncols)]
        for i in range(len(a))
    ]


def determinant(m: Matrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def hermite_rows(rows: Matrix, ncols: int) -> Matrix:
    """Row-style Hermite normal form of the lattice spanned by ``rows``.

    Returns the nonzero rows only: an upper echelon basis with positive
    pivots and every entry above a pivot reduced into ``[0, pivot)``.  The
    result depends only on the lattice, not on the generating rows.
    """
    a = [list(r) for r in rows if any(r)]
    top = 0
    for col in range(ncols):
        if top == len(a):
            break
        while True:
            live = [i for i in range(top, len(a)) if a[i][col] != 0]
            if not live:
                break
            best = min(live, key=lambda i: abs(a[i][col]))
            a[top], a[best] = a[best], a[top]
            piv = a[top][col]
            done = True
            for i in range(top + 1, len(a)):
                if a[i][col]:
                    q = a[i][col] // piv
                    a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][col]:
                        done = False
            if done:
                break
        if top == len(a) or a[top][col] == 0:
            continue
        if a[top][col] < 0:
            a[top] = [-x for x in a[top]]
        piv = a[top][col]
        for i in range(top):
            q = a[i][col] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[top])]
        top += 1
    return [r for r in a[:top]]


@dataclass(frozen=True)
class IntMatrixNF:
    """``left_transform @ original @ right_transform == normal``.

    ``right_inverse`` is the exact inverse of ``right_transform``; quotient
    computations need it to lift generators back to the ambient group.
    """

    original: tuple
    normal: tuple
    left_transform: tuple
    right_transform: tuple
    right_inverse: tuple
    ncols: int

    @property
    def diagonal(self) -> list[int]:
        k = min(len(self.normal), self.ncols)
        return [self.normal[i][i] for i in range(k)]


def _freeze(m: Matrix) -> tuple:
    return tuple(tuple(r) for r in m)


def smith_normal_form(m: Matrix, ncols: int | None = None) -> IntMatrixNF:
    """Smith normal form with unimodular transforms.

    The diagonal is non-negative and each entry divides the next (zeros
    last).  Works for any shape, including empty matrices.
    """
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    a = [list(r) for r in m]
    left = identity(nrows)
    right = identity(ncols)
    rinv = identity(ncols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]
        rinv[i], rinv[j] = rinv[j], rinv[i]

    def add_row(dst, src, q):
        # row dst -= q * row src
        a[dst] = [x - q * y for x, y in zip(a[dst], a[src])]
        left[dst] = [x - q * y for x, y in zip(left[dst], left[src])]

    def add_col(dst, src, q):
        # col dst -= q * col src; the inverse picks up row src += q * row dst
        for row in a:
            row[dst] -= q * row[src]
        for row in right:
            row[dst] -= q * row[src]
        rinv[src] = [x + q * y for x, y in zip(rinv[src], rinv[dst])]

    for t in range(min(nrows, ncols)):
        while True:
            nz = [
                (abs(a[i][j]), i, j)
                for i in range(t, nrows)
                for j in range(t, ncols)
                if a[i][j] != 0
            ]
            if not nz:
                break
            _, i, j = min(nz)
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            clean = True
            for i in range(t + 1, nrows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
                    clean = clean and a[i][t] == 0
            for j in range(t + 1, ncols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
                    clean = clean and a[t][j] == 0
            if not clean:
                continue
            piv = a[t][t]
            bad = next(
                (
                    i
                    for i in range(t + 1, nrows)
                    for j in range(t + 1, ncols)
                    if a[i][j] % piv
                ),
                None,
            )
            if bad is None:
                break
            # fold the offending row in so the next pass lowers the pivot
            add_row(t, bad, -1)
        if t < nrows and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]

    return IntMatrixNF(
        original=_freeze(m),
        normal=_freeze(a),
        left_transform=_freeze(left),
        right_transform=_freeze(right),
        right_inverse=_freeze(rinv),
        ncols=ncols,
    )

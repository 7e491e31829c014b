"""Exact integer linear algebra: Hermite rows, integer kernels, Smith form.

Matrices are lists of integer rows and act on row vectors (``v @ M``).
Everything is plain Python ints, so there is no overflow.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def vecmat(v: Sequence[int], m: Sequence[Sequence[int]], ncols: int) -> list[int]:
    out = [0] * ncols
    for c, row in zip(v, m):
        if c:
            for j, x in enumerate(row):
                if x:
                    out[j] += c * x
    return out


def _axpy(target: list[int], q: int, source: list[int]) -> None:
    for j, x in enumerate(source):
        if x:
            target[j] -= q * x


def _echelonize(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Row-reduce in place over the first ``ncols`` columns.

    Returns (rows, pivot columns). The first ``len(pivots)`` rows are in
    Hermite normal form on those columns (positive pivots, entries above a
    pivot reduced into [0, pivot)); subsequent rows vanish there. Only
    unimodular row operations are used, so trailing columns are carried
    along as a transform.
    """
    r = 0
    pivots: list[int] = []
    nrows = len(rows)
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            nz = [i for i in range(r, nrows) if rows[i][col]]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(rows[i][col]))
            rows[r], rows[p] = rows[p], rows[r]
            clean = True
            for i in range(r + 1, nrows):
                if rows[i][col]:
                    _axpy(rows[i], rows[i][col] // rows[r][col], rows[r])
                    if rows[i][col]:
                        clean = False
            if clean:
                break
        if rows[r][col]:
            if rows[r][col] < 0:
                rows[r] = [-x for x in rows[r]]
            piv = rows[r][col]
            for i in range(r):
                if rows[i][col]:
                    _axpy(rows[i], rows[i][col] // piv, rows[r])
            pivots.append(col)
            r += 1
    return rows, pivots


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Canonical (reduced, positive-pivot) Hermite basis of the row lattice."""
    if not rows:
        return []
    ncols = len(rows[0]) if ncols is None else ncols
    work, pivots = _echelonize([list(r) for r in rows], ncols)
    return work[: len(pivots)]


def pivot_columns(basis: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for row in basis:
        out.append(next(j for j, x in enumerate(row) if x))
    return out


def rank(rows: Sequence[Sequence[int]]) -> int:
    return len(hermite_rows(rows)) if rows else 0


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Hermite basis of {v in Z^rows : v @ m = 0}.

    ``m`` has one row per domain basis vector and ``ncols`` columns.
    """
    nrows = len(m)
    if nrows == 0:
        return []
    aug = [list(row) + [int(i == j) for j in range(nrows)] for i, row in enumerate(m)]
    work, pivots = _echelonize(aug, ncols)
    kern = [row[ncols:] for row in work[len(pivots):]]
    return hermite_rows(kern, nrows) if kern else []


def coordinates(basis: Sequence[Sequence[int]], pivots: Sequence[int], v: Sequence[int]) -> list[int]:
    """Integer coordinates of ``v`` in an echelon ``basis``; ValueError if v is not in the lattice."""
    rest = list(v)
    coords = []
    for row, p in zip(basis, pivots):
        q, r = divmod(rest[p], row[p])
        if r:
            raise ValueError("vector is not in the lattice spanned by the basis")
        coords.append(q)
        if q:
            _axpy(rest, q, list(row))
    if any(rest):
        raise ValueError("vector is not in the lattice spanned by the basis")
    return coords


def smith_normal_form(m: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Return (D, U, V) with U @ m @ V == D, D diagonal, d_1 | d_2 | ..., d_i >= 0."""
    a = [list(r) for r in m]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    u, v = identity(nr), identity(nc)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):  # row_i -= q row_j
        _axpy(a[i], q, a[j])
        _axpy(u[i], q, u[j])

    def add_col(i, j, q):  # col_i -= q col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    for t in range(min(nr, nc)):
        nz = [(abs(a[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if a[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
            line = [(abs(a[i][t]), i, t) for i in range(t + 1, nr) if a[i][t]]
            line += [(abs(a[t][j]), t, j) for j in range(t + 1, nc) if a[t][j]]
            if line:
                _, i1, j1 = min(line)
                swap_rows(t, i1)
                swap_cols(t, j1)
                continue
            bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return a, u, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form, zeros included (length min(rows, cols))."""
    if not m:
        return []
    d, _, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0])))]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def reduce_mod_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> list[int]:
    """Canonical representative of v modulo the lattice of a Hermite basis.

    Each pivot entry is brought into [0, pivot), top row first; lower rows
    vanish on earlier pivot columns so earlier reductions survive.
    """
    out = list(v)
    for row in basis:
        p = next(j for j, x in enumerate(row) if x)
        q = out[p] // row[p]
        if q:
            _axpy(out, q, row)
    return out

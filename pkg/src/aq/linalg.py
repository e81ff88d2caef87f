"""Exact linear algebra over a coefficient field.

Matrices are lists of rows of field elements and act on column vectors:
column j holds the image of the j-th source basis vector.
"""

from __future__ import annotations

from .fields import Field


def mat_copy(m):
    return [row[:] for row in m]


def zero_matrix(field: Field, rows: int, cols: int):
    z = field.zero()
    return [[z] * cols for _ in range(rows)]


def identity_matrix(field: Field, n: int):
    m = zero_matrix(field, n, n)
    for i in range(n):
        m[i][i] = field.one()
    return m


def mat_mul(field: Field, a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zero_matrix(field, rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if field.is_zero(aik):
                continue
            for j in range(cols):
                out[i][j] = field.add(out[i][j], field.mul(aik, b[k][j]))
    return out


def mat_vec(field: Field, m, v):
    out = []
    for row in m:
        s = field.zero()
        for a, x in zip(row, v):
            s = field.add(s, field.mul(a, x))
        out.append(s)
    return out


def rref(field: Field, matrix):
    """Reduced row echelon form; returns (rref matrix, pivot column list)."""
    m = mat_copy(matrix)
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if not field.is_zero(m[i][c]):
                pivot = i
                break
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.inv(m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [field.sub(x, field.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(field: Field, matrix) -> int:
    if not matrix or not matrix[0]:
        return 0
    return len(rref(field, matrix)[1])


def nullspace(field: Field, matrix, cols: int | None = None):
    """Basis of {v : Mv = 0}, one vector per free column."""
    rows = len(matrix)
    if cols is None:
        cols = len(matrix[0]) if rows else 0
    if cols == 0:
        return []
    if rows == 0:
        return [
            [field.one() if i == j else field.zero() for i in range(cols)]
            for j in range(cols)
        ]
    red, pivots = rref(field, matrix)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero()] * cols
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(v)
    return basis


def solve(field: Field, matrix, rhs):
    """One solution of Mx = rhs, or None if inconsistent."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    aug = [matrix[i][:] + [rhs[i]] for i in range(rows)]
    red, pivots = rref(field, aug)
    for r, pc in enumerate(pivots):
        if pc == cols:
            return None
    x = [field.zero()] * cols
    for r, pc in enumerate(pivots):
        if pc < cols:
            x[pc] = red[r][cols]
    return x


def column_space_rank(field: Field, vectors, length: int) -> int:
    """Rank of the span of the given column vectors."""
    if not vectors:
        return 0
    matrix = [[v[i] for v in vectors] for i in range(length)]
    return rank(field, matrix)


def intersect_nullspaces(field: Field, matrices, cols: int):
    """Basis of the intersection of the kernels of several matrices."""
    stacked = []
    for m in matrices:
        stacked.extend(m)
    if not stacked:
        return nullspace(field, [], cols)
    return nullspace(field, stacked, cols)

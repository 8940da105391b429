"""Exact linear algebra over Z and Q used throughout the package.

Matrices are tuples of tuples (rows) of ints or Fractions; vectors are
tuples.  Everything is immutable and hashable so matrices can serve as
dictionary keys for Weyl group elements.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vec = tuple
Mat = tuple


def identity_matrix(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(a: Mat, v: Sequence) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def vec_mat(v: Sequence, a: Mat) -> Vec:
    """Row vector times matrix; how covectors transform."""
    return tuple(sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0])))


def vec_add(u: Sequence, v: Sequence) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_neg(u: Sequence) -> Vec:
    return tuple(-x for x in u)


def vec_scale(c, u: Sequence) -> Vec:
    return tuple(c * x for x in u)


def dot(u: Sequence, v: Sequence):
    return sum(x * y for x, y in zip(u, v))


def mat_det(a: Mat):
    """Determinant by fraction-free Bareiss elimination; exact for int input."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def mat_inv_unimodular(a: Mat) -> Mat:
    """Inverse of an integer matrix with determinant +-1."""
    d = mat_det(a)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det={d})")
    inv = mat_inv_fraction(a)
    return tuple(tuple(int(x) for x in row) for row in inv)


def mat_inv_fraction(a: Mat) -> Mat:
    """Exact inverse over Q; raises ValueError when singular."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        m[col], m[piv] = m[piv], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def solve_fraction(a: Mat, rhs: Sequence) -> Vec | None:
    """One exact solution of a x = rhs over Q, or None if inconsistent.

    `a` may be rectangular; when the kernel is nontrivial the solution
    with zero free coordinates is returned.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in a[i]] + [Fraction(rhs[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for i, c in enumerate(pivots):
        x[c] = m[i][cols]
    return tuple(x)


def matrix_order(a: Mat, cap: int = 10000) -> int:
    """Multiplicative order of an integer matrix, or ValueError past cap."""
    n = len(a)
    ident = identity_matrix(n)
    p = a
    for k in range(1, cap + 1):
        if p == ident:
            return k
        p = mat_mul(p, a)
    raise ValueError(f"matrix order exceeds {cap}")


def principal_minors_positive(a: Mat) -> bool:
    """True iff every principal minor of `a` is positive.

    For a generalized Cartan matrix this characterizes finite type, hence
    finiteness of the Coxeter group it presents.
    """
    n = len(a)
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        sub = tuple(tuple(a[i][j] for j in idx) for i in idx)
        if mat_det(sub) <= 0:
            return False
    return True

"""Dense exact matrices over Q(zeta_24) as lists of rows of ``Cyc``.

Nullspaces are computed by fraction-free (Bareiss) elimination over the ring
of integers Z[zeta_24] after clearing row denominators; pivots are taken as the
first nonzero entry of each column.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Cyc, Scalar, cyc

Matrix = list[list[Cyc]]
Vector = list[Cyc]


def zeros(rows: int, cols: int) -> Matrix:
    return [[ZERO] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = ONE
    return m


def from_rows(rows: Iterable[Iterable[Scalar]]) -> Matrix:
    return [[cyc(x) for x in row] for row in rows]


def diag(entries: Sequence[Scalar]) -> Matrix:
    m = zeros(len(entries), len(entries))
    for i, x in enumerate(entries):
        m[i][i] = cyc(x)
    return m


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner = shape(a)
    inner_b, cols = shape(b)
    if inner != inner_b:
        raise ValueError(f"shape mismatch {shape(a)} x {shape(b)}")
    out = zeros(rows, cols)
    for i, arow in enumerate(a):
        acc = [ZERO] * cols
        touched = False
        for k, x in enumerate(arow):
            if not x:
                continue
            brow = b[k]
            for j, y in enumerate(brow):
                if y:
                    acc[j] = acc[j] + x * y
                    touched = True
        if touched:
            out[i] = acc
    return out


def matvec(a: Matrix, v: Vector) -> Vector:
    out = []
    for row in a:
        acc = ZERO
        for x, y in zip(row, v):
            if x and y:
                acc = acc + x * y
        out.append(acc)
    return out


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise ValueError(f"shape mismatch {shape(a)} + {shape(b)}")
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def sub(a: Matrix, b: Matrix) -> Matrix:
    return add(a, scale(b, -1))


def scale(a: Matrix, s: Scalar) -> Matrix:
    s = cyc(s)
    if not s:
        return zeros(*shape(a))
    return [[x * s if x else ZERO for x in row] for row in a]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def conj(a: Matrix) -> Matrix:
    return [[x.conj() for x in row] for row in a]


def dagger(a: Matrix) -> Matrix:
    return transpose(conj(a))


def kron(a: Matrix, b: Matrix) -> Matrix:
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = zeros(ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            x = a[i][j]
            if not x:
                continue
            for k in range(rb):
                brow = b[k]
                orow = out[i * rb + k]
                for l in range(cb):
                    y = brow[l]
                    if y:
                        orow[j * cb + l] = x * y
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return sub(matmul(a, b), matmul(b, a))


def is_zero(a: Matrix) -> bool:
    return all(not x for row in a for x in row)


def equal(a: Matrix, b: Matrix) -> bool:
    return shape(a) == shape(b) and all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def trace(a: Matrix) -> Cyc:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def columns(a: Matrix, idx: Sequence[int]) -> Matrix:
    return [[row[j] for j in idx] for row in a]


def hstack(cols: Sequence[Vector]) -> Matrix:
    """Assemble column vectors into a matrix."""
    if not cols:
        return []
    return [list(r) for r in zip(*cols)]


def to_complex(a: Matrix):
    import numpy as np

    return np.array([[complex(x) for x in row] for row in a], dtype=complex)


# -- elimination ---------------------------------------------------------


def _integral_row(row: Sequence[Cyc]) -> list[Cyc]:
    den = 1
    for x in row:
        if x:
            d = x.denominator
            den = den * d // gcd(den, d)
    if den == 1:
        return list(row)
    return [x * den if x else ZERO for x in row]


def echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Fraction-free row echelon form and the list of pivot columns.

    The input is not modified.  Rows are first scaled to have entries in
    Z[zeta_24]; the Bareiss update then keeps every entry integral.
    """
    m = [_integral_row(r) for r in a]
    rows, cols = shape(m)
    pivots: list[int] = []
    prev = ONE
    prev_inv = ONE
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pv = prow[c]
        for i in range(r + 1, rows):
            row = m[i]
            f = row[c]
            if not f:
                if pv != ONE or prev != ONE:
                    m[i] = [_exact_div((pv * x) if x else ZERO, prev, prev_inv) for x in row]
                continue
            new = row[:]
            for j in range(c, cols):
                x, y = row[j], prow[j]
                t = pv * x if x else ZERO
                if y:
                    t = t - f * y
                new[j] = _exact_div(t, prev, prev_inv)
            for j in range(c):
                x = row[j]
                new[j] = _exact_div(pv * x, prev, prev_inv) if x else ZERO
            m[i] = new
        pivots.append(c)
        prev = pv
        prev_inv = pv.inverse()
        r += 1
    return m, pivots


def _exact_div(x: Cyc, d: Cyc, d_inv: Cyc) -> Cyc:
    if not x or d == ONE:
        return x
    q = x * d_inv
    if q.denominator != 1:
        raise ArithmeticError("Bareiss division was not exact")
    return q


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(echelon(a)[1])


def nullspace(a: Matrix, ncols: int | None = None) -> list[Vector]:
    """Exact basis of ``{x : a x = 0}``, one vector per free column."""
    if not a:
        n = ncols or 0
        return [[ONE if i == j else ZERO for i in range(n)] for j in range(n)]
    _, cols = shape(a)
    ech, pivots = echelon(a)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis: list[Vector] = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = ech[r]
            acc = ZERO
            for c in range(pc + 1, cols):
                if row[c] and x[c]:
                    acc = acc + row[c] * x[c]
            x[pc] = -acc / row[pc] if acc else ZERO
        basis.append(_primitive(x))
    return basis


def _primitive(v: Vector) -> Vector:
    # normalize so that the first nonzero entry is 1: canonical and small
    lead = next((x for x in v if x), None)
    if lead is None or lead == ONE:
        return v
    inv = lead.inverse()
    return [x * inv if x else ZERO for x in v]


def column_space(a: Matrix) -> Matrix:
    """Columns of ``a`` forming a basis of its column space."""
    if not a or not a[0]:
        return []
    _, pivots = echelon(a)
    return columns(a, pivots)


def in_span(basis_cols: Sequence[Vector], v: Vector) -> bool:
    if not any(v):
        return True
    if not basis_cols:
        return False
    base = hstack(list(basis_cols))
    return rank(hstack(list(basis_cols) + [v])) == rank(base)

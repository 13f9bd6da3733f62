"""Exact dense linear algebra over cyclotomic fields.

Matrices are lists of rows of :class:`CycloScalar`.  Ranks are computed by
fraction-free elimination on cleared-denominator integer vectors: each row
update is ``pivot * row - entry * pivot_row`` (no field inverses), followed
by removal of the integer content of the row to keep coefficients small.
"""

from __future__ import annotations

import math
from typing import List, Sequence

from mfkit import kernels
from mfkit.cyclo import CycloScalar, _table

Matrix = List[List[CycloScalar]]


def common_order(rows: Sequence[Sequence[CycloScalar]]) -> int:
    n = 1
    for row in rows:
        for x in row:
            n = n * x.order // math.gcd(n, x.order)
    return n


def _integer_rows(rows: Sequence[Sequence[CycloScalar]], order: int) -> list[list[list[int]]]:
    out = []
    for row in rows:
        lifted = [x.lift(order) for x in row]
        den = 1
        for x in lifted:
            den = den * x.denominator // math.gcd(den, x.denominator)
        vecs = [[c * (den // x.denominator) for c in x.numerators] for x in lifted]
        out.append(_strip_content(vecs))
    return out


def _strip_content(row: list[list[int]]) -> list[list[int]]:
    g = 0
    for v in row:
        for c in v:
            if c:
                g = math.gcd(g, c)
                if g == 1:
                    return row
    if g > 1:
        return [[c // g for c in v] for v in row]
    return row


def rank(rows: Sequence[Sequence[CycloScalar]]) -> int:
    """Exact rank of a matrix over Q(zeta_N), N the lcm of the entry orders."""
    rows = [r for r in rows]
    if not rows or not rows[0]:
        return 0
    order = common_order(rows)
    t = _table(order)
    m = _integer_rows(rows, order)
    m = [r for r in m if any(any(v) for v in r)]
    ncols = len(rows[0])
    r = 0
    for col in range(ncols):
        piv = None
        best = None
        for i in range(r, len(m)):
            v = m[i][col]
            if any(v):
                # prefer the sparsest, smallest pivot
                size = sum(1 for c in v if c), max(abs(c) for c in v)
                if best is None or size < best:
                    piv, best = i, size
                    if size == (1, 1):
                        break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[col]
        tail_p = prow[col + 1:]
        keep = m[: r + 1]
        for i in range(r + 1, len(m)):
            row = m[i]
            f = row[col]
            if not any(f):
                keep.append(row)
                continue
            new = kernels.cross_update(p, row[col + 1:], f, tail_p, t)
            new = [[0] * len(p)] * (col + 1) + new
            if any(any(v) for v in new):
                keep.append(_strip_content(new))
        m = keep
        r += 1
        if r == len(m):
            break
    return r


def nullity(rows: Sequence[Sequence[CycloScalar]], ncols: int) -> int:
    if not rows:
        return ncols
    return ncols - rank(rows)


def identity(n: int, order: int = 1) -> Matrix:
    one, zero = CycloScalar.one(order), CycloScalar.zero(order)
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[CycloScalar]], b: Sequence[Sequence[CycloScalar]]) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    order = common_order([*a, *b])
    zero = CycloScalar.zero(order)
    out = []
    for i in range(n):
        row = [zero] * m
        ai = a[i]
        for t in range(k):
            x = ai[t]
            if x.is_zero():
                continue
            bt = b[t]
            for j in range(m):
                y = bt[j]
                if not y.is_zero():
                    row[j] = row[j] + x * y
        out.append(row)
    return out


def matadd(a, b, sign: int = 1) -> Matrix:
    if sign == 1:
        return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def scale(c: CycloScalar, a) -> Matrix:
    return [[c * x for x in row] for row in a]


def transpose(a) -> Matrix:
    return [list(col) for col in zip(*a)]


def kron(a, b) -> Matrix:
    return [[x * y for x in ra for y in rb] for ra in a for rb in b]


def inverse(a: Sequence[Sequence[CycloScalar]]) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
    n = len(a)
    order = common_order(a)
    m = [[x.lift(order) for x in row] + e for row, e in zip(a, identity(n, order))]
    for col in range(n):
        piv = next((i for i in range(col, n) if not m[i][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv_p = m[col][col].inv()
        m[col] = [inv_p * x for x in m[col]]
        for i in range(n):
            if i != col and not m[i][col].is_zero():
                f = m[i][col]
                m[i] = [x - f * y if not y.is_zero() else x for x, y in zip(m[i], m[col])]
    return [row[n:] for row in m]


def is_identity(a) -> bool:
    return all((x == 1) if i == j else x.is_zero() for i, row in enumerate(a) for j, x in enumerate(row))


def scalar_value(a) -> CycloScalar | None:
    """The scalar c if ``a == c * I``, else None."""
    c = a[0][0]
    for i, row in enumerate(a):
        for j, x in enumerate(row):
            if i == j:
                if x != c:
                    return None
            elif not x.is_zero():
                return None
    return c

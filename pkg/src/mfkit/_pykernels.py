"""Pure-Python implementations of the cyclotomic hot kernels.

Elements of Z[zeta_n] are integer coefficient lists in the power basis
1, x, ..., x^(phi-1) modulo the n-th cyclotomic polynomial.  A ``Table``
holds the rows ``x^k mod Phi_n`` for ``0 <= k < n``; multiplying two
elements is a cyclic convolution (``x^n = 1``) followed by a table
lookup, so no polynomial long division happens on the hot path.

The compiled module ``_cykernels`` exposes exactly the same functions.
"""

from __future__ import annotations

from typing import List, Sequence

Vec = List[int]


class Table:
    __slots__ = ("n", "phi", "rows")

    def __init__(self, n: int, rows: Sequence[Sequence[int]]):
        self.n = n
        self.rows = tuple(tuple(r) for r in rows)
        self.phi = len(self.rows[0])


def fold_reduce(folded: Sequence[int], t: Table) -> Vec:
    """Reduce a length-n vector (coefficients of x^0..x^(n-1)) mod Phi_n."""
    phi = t.phi
    out = list(folded[:phi])
    rows = t.rows
    for k in range(phi, t.n):
        c = folded[k]
        if c:
            row = rows[k]
            for j in range(phi):
                r = row[j]
                if r:
                    out[j] += c * r
    return out


def mulmod(a: Sequence[int], b: Sequence[int], t: Table) -> Vec:
    n = t.n
    folded = [0] * n
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    k = i + j
                    if k >= n:
                        k -= n
                    folded[k] += ai * bj
    return fold_reduce(folded, t)


def galois(a: Sequence[int], k: int, t: Table) -> Vec:
    """Apply the automorphism zeta -> zeta^k."""
    n = t.n
    folded = [0] * n
    for j, aj in enumerate(a):
        if aj:
            folded[(j * k) % n] += aj
    return fold_reduce(folded, t)


def cross_update(p: Sequence[int], row_r: Sequence[Sequence[int]],
                 f: Sequence[int], row_p: Sequence[Sequence[int]],
                 t: Table) -> List[Vec]:
    """Fraction-free row step: ``p * row_r[c] - f * row_p[c]`` for every column c."""
    out = []
    for x, y in zip(row_r, row_p):
        u = mulmod(p, x, t) if any(x) else [0] * t.phi
        if any(y):
            v = mulmod(f, y, t)
            u = [ui - vi for ui, vi in zip(u, v)]
        out.append(u)
    return out

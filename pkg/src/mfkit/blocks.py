"""Dimensions of conformal blocks V_g(colors).

The exact engine follows the gluing recursion down to pairs of pants.  A
numeric Verlinde sum is kept alongside as an independent cross-check.
"""

from __future__ import annotations

import math
from itertools import combinations
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Sequence, Union

from mfkit.cyclo import root_of_unity
from mfkit.errors import InvalidCut, OracleUnstable
from mfkit.fusion import ColorSet, Variant, _admissible, fusion_channels


@dataclass(frozen=True)
class BlockLabel:
    """A genus together with the colors of the boundary circles."""

    genus: int
    colors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "colors", tuple(self.colors))
        if self.genus < 0:
            raise ValueError(f"genus must be nonnegative, got {self.genus}")

    @property
    def boundary_colors(self) -> tuple[int, ...]:
        return self.colors

    @property
    def n(self) -> int:
        return len(self.colors)

    def sorted(self) -> "BlockLabel":
        return BlockLabel(self.genus, tuple(sorted(self.colors)))

    def __str__(self) -> str:
        return f"V_{self.genus}({','.join(map(str, self.colors))})"


def dim_block(label: BlockLabel, cs: ColorSet) -> int:
    cs.check(*label.colors)
    return _dim(label.genus, tuple(sorted(label.colors)), cs)


@lru_cache(maxsize=None)
def _dim(g: int, cols: tuple[int, ...], cs: ColorSet) -> int:
    n = len(cols)
    if g == 0:
        if n == 0:
            return 1
        if n == 1:
            return int(cols[0] == 0)
        if n == 2:
            return int(cols[0] == cols[1])
        if n == 3:
            return int(_admissible(*cols, cs.ell))
        rest = cols[2:]
        return sum(_dim(0, tuple(sorted(rest + (mu,))), cs) for mu in fusion_channels(cols[0], cols[1], cs))
    if n == 0:
        return sum(_dim(g - 1, (nu, nu), cs) for nu in cs.colors)
    if n == 1:
        return sum(_dim(g - 1, tuple(sorted((cols[0], nu, nu))), cs) for nu in cs.colors)
    # cut off all boundary circles on a sphere: V_0(cols, mu) (x) V_g(mu)
    total = 0
    for mu in cs.colors:
        a = _dim(0, tuple(sorted(cols + (mu,))), cs)
        if a:
            total += a * _dim(g, (mu,), cs)
    return total


def dim_disconnected(labels: Iterable[BlockLabel], cs: ColorSet) -> int:
    out = 1
    for lab in labels:
        out *= dim_block(lab, cs)
        if not out:
            return 0
    return out


@lru_cache(maxsize=None)
def _s_matrix(cs: ColorSet):
    ell = cs.ell
    labels = cs.colors
    norm = math.sqrt(2.0 / ell)
    if cs.variant is Variant.SO3:
        norm *= math.sqrt(2.0)
    s = {}
    for a in labels:
        for b in labels:
            # sin(pi m / ell) is the imaginary part of exp(2 pi i m / (2 ell))
            z = root_of_unity((a + 1) * (b + 1), 2 * ell).to_complex()
            s[a, b] = norm * z.imag
    return s


def verlinde_oracle(label: BlockLabel, cs: ColorSet, tol: float = 1e-6) -> int:
    """Numeric Verlinde sum, rounded; raises OracleUnstable if far from an integer."""
    cs.check(*label.colors)
    s = _s_matrix(cs)
    e = 2 - 2 * label.genus - label.n
    total = 0.0
    for b in cs.colors:
        term = s[0, b] ** e
        for lam in label.colors:
            term *= s[lam, b]
        total += term
    value = round(total)
    if abs(total - value) >= tol or value < 0:
        raise OracleUnstable(f"Verlinde sum {total!r} for {label} is not within {tol} of an integer")
    return int(value)


@dataclass(frozen=True)
class NonSeparating:
    """Cut along a nonseparating curve: V_g(c) = sum_mu V_{g-1}(c, mu, mu)."""


@dataclass(frozen=True)
class Separating:
    """Cut into a genus ``genus`` side carrying the boundary positions ``part`` and the rest."""

    genus: int
    part: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "part", tuple(self.part))


Cut = Union[NonSeparating, Separating]


class Summand(NamedTuple):
    mu: int
    parts: tuple[BlockLabel, ...]
    dim: int


def gluing_decomposition(label: BlockLabel, cut: Cut, cs: ColorSet, include_zero: bool = False) -> list[Summand]:
    """Summands of the gluing isomorphism along ``cut``, one per color mu on the cut circle."""
    cs.check(*label.colors)
    out = []
    if isinstance(cut, NonSeparating):
        if label.genus < 1:
            raise InvalidCut("a nonseparating cut needs genus >= 1")
        for mu in cs.colors:
            part = BlockLabel(label.genus - 1, label.colors + (mu, mu))
            out.append(Summand(mu, (part,), dim_block(part, cs)))
    elif isinstance(cut, Separating):
        left_idx = cut.part
        if len(set(left_idx)) != len(left_idx) or any(not 0 <= i < label.n for i in left_idx):
            raise InvalidCut(f"boundary positions {left_idx} invalid for {label.n} boundary circles")
        if not 0 <= cut.genus <= label.genus:
            raise InvalidCut(f"side genus {cut.genus} outside [0, {label.genus}]")
        right_idx = tuple(i for i in range(label.n) if i not in left_idx)
        g2 = label.genus - cut.genus
        if (cut.genus == 0 and not left_idx) or (g2 == 0 and not right_idx):
            raise InvalidCut("cut curve bounds a disk")
        for mu in cs.colors:
            a = BlockLabel(cut.genus, tuple(label.colors[i] for i in sorted(left_idx)) + (mu,))
            b = BlockLabel(g2, tuple(label.colors[i] for i in right_idx) + (mu,))
            out.append(Summand(mu, (a, b), dim_block(a, cs) * dim_block(b, cs)))
    else:
        raise InvalidCut(f"unknown cut {cut!r}")
    return out if include_zero else [s for s in out if s.dim]


def valid_cuts(label: BlockLabel) -> list[Cut]:
    """Every cut accepted by :func:`gluing_decomposition` (both orientations of each separating cut)."""
    cuts: list[Cut] = []
    if label.genus >= 1:
        cuts.append(NonSeparating())
    idx = range(label.n)
    for k in range(label.n + 1):
        for part in combinations(idx, k):
            for g1 in range(label.genus + 1):
                if (g1 == 0 and k == 0) or (label.genus - g1 == 0 and k == label.n):
                    continue
                cuts.append(Separating(g1, part))
    return cuts


def vacuum_reduce(label: BlockLabel) -> BlockLabel:
    """Forget trailing 0-colored boundary circles."""
    cols = list(label.colors)
    while cols and cols[-1] == 0:
        cols.pop()
    return BlockLabel(label.genus, tuple(cols))


def parse_colors(text: str | Sequence[int]) -> tuple[int, ...]:
    if not isinstance(text, str):
        return tuple(int(c) for c in text)
    text = text.strip()
    if not text:
        return ()
    sep = ":" if ":" in text else ","
    return tuple(int(c) for c in text.split(sep))

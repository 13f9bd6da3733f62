"""Color sets, fusion multiplicities and twists of the SU(2) and SO(3) theories."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional

from mfkit.cyclo import CycloScalar, root_of_unity
from mfkit.errors import InvalidColor, InvalidColorSet


class Variant(str, enum.Enum):
    SU2 = "su2"
    SO3 = "so3"

    @classmethod
    def parse(cls, value: "str | Variant") -> "Variant":
        if isinstance(value, Variant):
            return value
        try:
            return cls(value.lower())
        except ValueError:
            raise InvalidColorSet(f"unknown variant {value!r}; expected su2 or so3") from None


@dataclass(frozen=True)
class ColorSet:
    """Labels of the SU(2) theory at level 2*ell or the SO(3) theory at level ell."""

    ell: int
    variant: Variant
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.variant is Variant.SO3 and self.ell % 2 == 0:
            raise InvalidColorSet(f"SO(3) requires odd ell, got {self.ell}")
        if 0 not in self.colors:
            raise InvalidColorSet("0 must be a color")

    @property
    def twist_order(self) -> int:
        return self.ell if self.variant is Variant.SO3 else 4 * self.ell

    def check(self, *labels: int) -> None:
        for lam in labels:
            if lam not in self.colors:
                raise InvalidColor(f"color {lam} is not in {list(self.colors)} ({self})")

    def __str__(self) -> str:
        return f"{self.variant.value.upper()} ell={self.ell}"


def make_color_set(ell: int, variant: "str | Variant" = Variant.SU2) -> ColorSet:
    variant = Variant.parse(variant)
    if ell < 3:
        raise InvalidColorSet(f"ell must be at least 3, got {ell}")
    if variant is Variant.SO3:
        if ell % 2 == 0:
            raise InvalidColorSet(f"SO(3) requires odd ell, got {ell}")
        colors = tuple(range(0, ell - 2, 2))
    else:
        colors = tuple(range(ell - 1))
    return ColorSet(ell, variant, colors)


def _admissible(a: int, b: int, c: int, ell: int) -> bool:
    return (a + b + c) % 2 == 0 and abs(a - b) <= c <= a + b and a + b + c < 2 * ell - 2


def fusion_dim(a: int, b: int, c: int, cs: ColorSet) -> int:
    """Dimension (0 or 1) of the block on a pair of pants colored a, b, c."""
    cs.check(a, b, c)
    return int(_admissible(a, b, c, cs.ell))


def fusion_channels(a: int, b: int, cs: ColorSet) -> tuple[int, ...]:
    """Colors c with a nonzero pants block (a, b, c)."""
    return tuple(c for c in cs.colors if _admissible(a, b, c, cs.ell))


def twist(lam: int, cs: ColorSet) -> CycloScalar:
    """t_lam = (-1)^lam zeta^(lam(lam+2)), zeta of order ell (SO3) or 4 ell (SU2)."""
    cs.check(lam)
    t = root_of_unity(lam * (lam + 2), cs.twist_order)
    return -t if lam % 2 else t


class PropertyII(NamedTuple):
    holds: bool
    witness: Optional[tuple[int, int]]
    collisions: tuple[tuple[int, int], ...]


def check_property_II(cs: ColorSet) -> PropertyII:
    """Are the twists pairwise distinct?  ``witness`` is the first colliding pair."""
    twists = {lam: twist(lam, cs) for lam in cs.colors}
    collisions = tuple((a, b) for a, b in combinations(cs.colors, 2) if twists[a] == twists[b])
    return PropertyII(not collisions, collisions[0] if collisions else None, collisions)


class PropertyI(NamedTuple):
    holds: bool
    genus1: frozenset
    genus2: frozenset


def check_property_I(cs: ColorSet) -> PropertyI:
    """Compare the supports of V(S_1^1, .) and V(S_2^1, .)."""
    from mfkit.blocks import BlockLabel, dim_block

    s1 = frozenset(lam for lam in cs.colors if dim_block(BlockLabel(1, (lam,)), cs) > 0)
    s2 = frozenset(lam for lam in cs.colors if dim_block(BlockLabel(2, (lam,)), cs) > 0)
    return PropertyI(s1 == s2, s1, s2)

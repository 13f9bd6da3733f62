import itertools

import pytest
from hypothesis import given, strategies as st

from mfkit.cyclo import root_of_unity
from mfkit.errors import InvalidColor, InvalidColorSet
from mfkit.fusion import (
    Variant,
    check_property_II,
    fusion_channels,
    fusion_dim,
    make_color_set,
    twist,
)

THEORIES = [make_color_set(l, v) for l in range(3, 14) for v in ("su2", "so3") if not (v == "so3" and l % 2 == 0)]


def test_color_sets():
    assert make_color_set(5).colors == (0, 1, 2, 3)
    assert make_color_set(5, "so3").colors == (0, 2)
    assert make_color_set(7, Variant.SO3).colors == (0, 2, 4)
    assert Variant.parse("SU2") is Variant.SU2
    with pytest.raises(InvalidColorSet):
        make_color_set(2)
    with pytest.raises(InvalidColorSet):
        make_color_set(6, "so3")
    with pytest.raises(ValueError):
        Variant.parse("su3")


def test_fusion_rules_small():
    cs = make_color_set(5)
    assert fusion_dim(1, 1, 0, cs) == 1
    assert fusion_dim(1, 1, 2, cs) == 1
    assert fusion_dim(1, 1, 1, cs) == 0  # parity
    assert fusion_dim(3, 3, 2, cs) == 0  # level bound a+b+c <= 2(l-2)
    assert fusion_dim(2, 2, 2, cs) == 1
    assert fusion_channels(1, 2, cs) == (1, 3)
    assert fusion_channels(3, 3, cs) == (0,)


def test_fusion_rejects_out_of_range():
    cs = make_color_set(5)
    with pytest.raises(InvalidColor):
        fusion_dim(2, 2, 4, cs)
    with pytest.raises(InvalidColor):
        fusion_dim(1, 0, 0, make_color_set(5, "so3"))
    # boundary of the level condition where all three colors exist
    cs6 = make_color_set(6)
    assert fusion_dim(2, 2, 4, cs6) == 1
    assert fusion_dim(3, 3, 4, cs6) == 0


@pytest.mark.parametrize("cs", THEORIES, ids=str)
def test_fusion_symmetric_and_unit(cs):
    for a, b, c in itertools.product(cs.colors, repeat=3):
        d = fusion_dim(a, b, c, cs)
        assert d in (0, 1)
        assert all(fusion_dim(*p, cs) == d for p in itertools.permutations((a, b, c)))
    for a, b in itertools.product(cs.colors, repeat=2):
        assert fusion_dim(a, b, 0, cs) == (a == b)


@pytest.mark.parametrize("cs", THEORIES, ids=str)
def test_twist_order_invariant(cs):
    for lam in cs.colors:
        t = twist(lam, cs)
        assert t ** cs.twist_order == 1
    assert twist(0, cs) == 1


def test_twist_values():
    cs = make_color_set(5)
    # t_1 = -A^3 with A of order 20
    assert twist(1, cs) == -root_of_unity(3, 20)
    # odd labels have twist of order not dividing 2l
    assert twist(1, cs) ** 10 != 1
    cs_so3 = make_color_set(5, "so3")
    assert twist(2, cs_so3) == root_of_unity(8, 5)


def test_property_II_failures_match_collisions():
    res = check_property_II(make_color_set(8))
    assert not res.holds and res.witness == (1, 5) and res.collisions == ((1, 5),)
    # composite odd levels may fail too; the witness is always the minimal collision
    for cs in THEORIES:
        res = check_property_II(cs)
        assert res.holds == (res.witness is None) == (not res.collisions)
        if res.collisions:
            assert res.witness == min(res.collisions)
            a, b = res.witness
            assert twist(a, cs) == twist(b, cs)


@given(st.sampled_from(THEORIES), st.data())
def test_channels_agree_with_fusion_dim(cs, data):
    a = data.draw(st.sampled_from(cs.colors))
    b = data.draw(st.sampled_from(cs.colors))
    assert fusion_channels(a, b, cs) == tuple(c for c in cs.colors if fusion_dim(a, b, c, cs))

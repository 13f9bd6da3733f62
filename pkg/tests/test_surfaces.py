import itertools

import pytest
from hypothesis import given, settings, strategies as st

from mfkit.blocks import BlockLabel, dim_block
from mfkit.errors import GenusTooSmall, GluingError, GPrimeTooSmall, NotEmbeddable
from mfkit.surfaces import (
    Component,
    GluingGraph,
    SurfacePiece,
    connected_embedding,
    embeddable_set,
    glue_result,
    is_embeddable,
    validate_truncation_set,
)


def test_glue_two_pants_into_genus_two():
    a = SurfacePiece(0, ((0, 2), (1, 2), (2, 2)))
    b = SurfacePiece(0, ((3, 2), (4, 2), (5, 2)))
    assert glue_result(GluingGraph((a, b), ((0, 3), (1, 4), (2, 5)))) == [Component(2, ())]
    # self-gluing a piece adds a handle
    assert glue_result(GluingGraph((a,), ((0, 1),))) == [Component(1, (2,))]
    # nothing glued: two components
    assert glue_result(GluingGraph((a, b))) == [Component(0, (2, 2, 2)), Component(0, (2, 2, 2))]


def test_glue_errors():
    a = SurfacePiece(1, ((0, 1), (1, 2)))
    with pytest.raises(GluingError):
        glue_result(GluingGraph((a,), ((0, 1),)))  # color mismatch
    with pytest.raises(GluingError):
        glue_result(GluingGraph((a,), ((0, 7),)))
    with pytest.raises(GluingError):
        glue_result(GluingGraph((a, a)))  # slot reused
    with pytest.raises(GluingError):
        SurfacePiece(0, ((0, 1), (0, 1)))


def test_small_gprime_rejected(cs5):
    with pytest.raises(GPrimeTooSmall):
        is_embeddable(0, 1, (0,), 3, cs5)
    with pytest.raises(GPrimeTooSmall):
        embeddable_set(2, cs5)


def test_embeddable_examples(cs5):
    ok, wit = is_embeddable(0, 3, (1, 1, 2), 4, cs5)
    assert ok
    assert glue_result(wit.graph()) == [Component(4, ())]
    assert is_embeddable(5, 0, (), 4, cs5) == (False, None)
    assert is_embeddable(4, 0, (), 4, cs5)[0]
    # too much genus for S_4
    assert not is_embeddable(4, 1, (0,), 4, cs5)[0]
    assert is_embeddable(3, 1, (0,), 4, cs5)[0]


def test_nonzero_block_needs_nonzero_complement(cs5):
    # V_0(1,1,2) != 0, so every complement in the witness carries nonzero blocks
    ok, wit = is_embeddable(0, 3, (1, 1, 2), 4, cs5)
    for piece in wit.complement:
        assert dim_block(piece.label(), cs5) > 0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2), st.lists(st.integers(0, 3), min_size=1, max_size=3))
def test_witnesses_glue_to_closed_surface(h, cols):
    from mfkit.fusion import make_color_set

    cs = make_color_set(5)
    ok, wit = is_embeddable(h, len(cols), cols, 4, cs)
    if ok:
        assert glue_result(wit.graph()) == [Component(4, ())]
        assert wit.source.colors == tuple(cols)


def test_truncation_set_is_valid(cs5ev):
    check = validate_truncation_set(embeddable_set(4, cs5ev), cs5ev)
    assert check.ok and check.axiom is None


def test_truncation_validator_reports_failures(cs5):
    everything = lambda g, n, lam: True
    assert validate_truncation_set(everything, cs5).ok
    assert validate_truncation_set(lambda g, n, lam: g != 1, cs5).axiom == "1"
    assert validate_truncation_set(lambda g, n, lam: 3 not in lam, cs5).axiom == "0"
    order_sensitive = lambda g, n, lam: n != 4 or g == 0 or tuple(lam) == tuple(sorted(lam))
    res = validate_truncation_set(order_sensitive, cs5, probe_genus=1, probe_n=4)
    assert res.axiom == "P" and res.triple[0] == 1


@pytest.mark.parametrize("g", [7, 8, 11])
def test_connected_embedding(cs5, g):
    for h, cols in [(0, (1, 1)), (0, (2, 2, 2)), (1, (3,)), (2, (1, 3, 2)), (0, (0,))]:
        emb = connected_embedding(h, len(cols), cols, g, 4, cs5)
        assert len(emb.complement) == 1
        assert glue_result(emb.graph()) == [Component(g, ())]


def test_connected_embedding_closed_source(cs5):
    emb = connected_embedding(4, 0, (), 9, 4, cs5)
    assert emb.vacuum_slots == 2
    assert glue_result(emb.graph()) == [Component(9, ())]


def test_connected_embedding_errors(cs5):
    with pytest.raises(GenusTooSmall):
        connected_embedding(0, 2, (1, 1), 6, 4, cs5)
    with pytest.raises(NotEmbeddable):
        connected_embedding(5, 0, (), 9, 4, cs5)


def test_connected_complement_euler_characteristic(cs5):
    # -chi(M) = (2g - 2) - (-chi(S_0^4)) = 12 - 2
    emb = connected_embedding(0, 4, (1, 1, 2, 2), 7, 4, cs5)
    (m,) = emb.complement
    assert -m.euler_char == 10

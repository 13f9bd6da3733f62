import json

import pytest

from mfkit.blocks import BlockLabel, NonSeparating, Separating
from mfkit.errors import HypothesisFailure
from mfkit.fusion import make_color_set
from mfkit.h1calc import (
    H0,
    H1,
    Certificate,
    CertificateFailure,
    FormalSpace,
    Term,
    build_certificate,
    choose_gprime,
    gprime_candidates,
    hypotheses,
    kunneth_decompose,
    stability_chain,
)


def test_formal_space_algebra():
    a = FormalSpace.build([Term(H1, 1, (2, 0)), Term(H1, 1, (0, 2))])
    assert len(a) == 2 and a.terms == ((Term(H1, 1, (0, 2)), 2),)
    assert a + FormalSpace.single(3) == FormalSpace.build([(Term(H1, 1, (0, 2)), 2), Term(H1, 3, ())])
    assert str(FormalSpace(())) == "0"
    with pytest.raises(ValueError):
        FormalSpace.build([(Term(H1, 0, ()), -1)])


def test_vacuum_and_rigid():
    fs = FormalSpace.build([Term(H1, 2, (0,)), Term(H1, 0, (0, 0, 2)), Term(H1, 0, (2, 2, 2)), Term(H0, 0, (2, 2))])
    v = fs.vacuum()
    # V_2(0) -> V_2 ; V_0(0,0,2) keeps enough circles to stay hyperbolic
    assert Term(H1, 2, ()) in dict(v.terms)
    assert Term(H1, 0, (0, 0, 2)) in dict(v.terms)
    r = v.drop_rigid()
    assert [t for t, _ in r.terms] == [Term(H0, 0, (2, 2)), Term(H1, 2, ())]


def test_index_excluded_from_equality():
    assert FormalSpace.build([Term(H1, 1, ())], index=(0, 2)) == FormalSpace.build([Term(H1, 1, ())])


def test_hypotheses():
    assert hypotheses(make_color_set(5)) == (True, True, True)
    assert hypotheses(make_color_set(8)).II is False
    assert hypotheses(make_color_set(9, "so3")).irreducible is False


def test_kunneth_examples(cs5):
    fs = kunneth_decompose(BlockLabel(5, ()), Separating(4, ()), cs5)
    assert 0 in fs.index
    assert Term(H1, 4, (0,)) in dict(fs.terms)
    assert Term(H1, 1, (0,)) in dict(fs.terms)
    non = kunneth_decompose(BlockLabel(5, ()), NonSeparating(), cs5)
    assert sorted(non.index) == list(cs5.colors)
    assert non.normalize(cs5) == non.normalize(cs5).vacuum()


def test_kunneth_needs_hypotheses(cs5):
    cs8 = make_color_set(8)
    with pytest.raises(HypothesisFailure):
        kunneth_decompose(BlockLabel(5, ()), NonSeparating(), cs8)
    # an explicit override is honoured
    kunneth_decompose(BlockLabel(5, ()), NonSeparating(), cs8, assume_II=True, assume_irreducible=True)
    with pytest.raises(HypothesisFailure):
        kunneth_decompose(BlockLabel(0, (1,)), Separating(0, (0,)), cs5)
    with pytest.raises(HypothesisFailure):
        kunneth_decompose(BlockLabel(5, ()), NonSeparating(), cs5, assume_irreducible=False)


def test_stability_chain(cs5):
    rep = stability_chain(4, cs5)
    assert rep.equal and rep.index_check
    assert rep.routes["injectivity"][-1].space == FormalSpace.single(4)
    json.dumps(rep.to_json())
    with pytest.raises(ValueError):
        stability_chain(3, cs5)


def test_gprime_selection():
    assert gprime_candidates(6) == []
    assert gprime_candidates(7) == [4]
    assert gprime_candidates(10) == [4, 5]
    assert choose_gprime(6) is None and choose_gprime(12) == 4


def test_certificate_structure(cs5ev):
    cert = build_certificate(9, cs5ev)
    assert isinstance(cert, Certificate) and cert.verify()
    ids = [s.id for s in cert.steps]
    assert len(ids) == len(set(ids))
    kinds = {s.kind for s in cert.steps}
    assert {"hypothesis", "truncation", "embedding", "decomposition", "stability", "axiom", "conclusion"} <= kinds
    # one stability step per genus 8..4 plus the coincidence step
    assert sum(s.kind == "stability" for s in cert.steps) == 6
    assert cert.steps[-1].claim == "H1(ad V_9) = 0"
    doc = cert.to_json()
    assert doc["status"] == "certified" and doc["gprime_candidates"] == [4, 5]
    assert all(s.explain() for s in cert.steps)


def test_certificate_tampering_detected(cs5):
    cert = build_certificate(7, cs5)
    cert.steps[0].depends_on.append("CON2")
    assert not cert.verify()
    cert = build_certificate(7, cs5)
    cert.steps[3].ok = False
    assert not cert.verify()


def test_certificate_with_larger_gprime(cs5):
    assert build_certificate(9, cs5, gprime=5).verify()
    bad = build_certificate(8, cs5, gprime=5)
    assert isinstance(bad, CertificateFailure)


def test_certificate_fails_without_II():
    res = build_certificate(9, make_color_set(8))
    assert isinstance(res, CertificateFailure)
    assert res.blocking == {"step": "HYP1"}

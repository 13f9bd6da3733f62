"""Formal bookkeeping of H^1 summands of adjoint blocks, and the genus-reduction certificate.

Nothing here computes an actual cohomology group.  A :class:`FormalSpace`
records which symbols H^1(ad V_h(colors)) occur in a direct sum; the rules
applied to it are the structural ones: cross terms between different color
vectors vanish, H^0 of a nonzero irreducible block is one-dimensional, zero
blocks contribute nothing, 0-colored circles can be forgotten, and moduli of
(0,2) and (0,3) are points.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, NamedTuple, Optional, Sequence, Union

from mfkit.blocks import BlockLabel, Cut, NonSeparating, Separating, dim_block, gluing_decomposition
from mfkit.errors import HypothesisFailure, MfkitError
from mfkit.fusion import ColorSet, check_property_I, check_property_II
from mfkit.surfaces import MIN_GPRIME, connected_embedding, embeddable_set, is_embeddable, validate_truncation_set

H1, H0 = "H1", "H0"
RIGID = {(0, 2), (0, 3)}


class Term(NamedTuple):
    kind: str
    genus: int
    colors: tuple[int, ...]

    @property
    def label(self) -> BlockLabel:
        return BlockLabel(self.genus, self.colors)

    def __str__(self) -> str:
        return f"{self.kind} ad V_{self.genus}({','.join(map(str, self.colors))})"


@dataclass(frozen=True)
class FormalSpace:
    """A multiset of H^1 / H^0 symbols; equality ignores ``index`` (the cut colors kept)."""

    terms: tuple[tuple[Term, int], ...]
    index: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def build(cls, items: Iterable[Union[Term, tuple[Term, int]]], index: Sequence[int] = ()) -> "FormalSpace":
        counts: Counter = Counter()
        for it in items:
            term, mult = (it, 1) if isinstance(it, Term) else it
            if mult < 0:
                raise ValueError("multiplicities must be positive")
            if mult:
                counts[Term(term.kind, term.genus, tuple(sorted(term.colors)))] += mult
        return cls(tuple(sorted(counts.items())), tuple(index))

    @classmethod
    def single(cls, genus: int, colors: Sequence[int] = (), kind: str = H1) -> "FormalSpace":
        return cls.build([Term(kind, genus, tuple(colors))])

    def __iter__(self):
        return iter(self.terms)

    def __len__(self) -> int:
        return sum(m for _, m in self.terms)

    def __add__(self, other: "FormalSpace") -> "FormalSpace":
        return FormalSpace.build(list(self.terms) + list(other.terms), self.index + other.index)

    def without_zero_blocks(self, cs: ColorSet) -> "FormalSpace":
        return FormalSpace.build([(t, m) for t, m in self.terms if dim_block(t.label, cs)], self.index)

    def vacuum(self) -> "FormalSpace":
        """Forget 0-colored circles while the reduced surface stays hyperbolic (2h - 2 + n > 0)."""
        out = []
        for t, m in self.terms:
            cols = list(t.colors)
            while 0 in cols and 2 * t.genus - 2 + (len(cols) - 1) > 0:
                cols.remove(0)
            out.append((Term(t.kind, t.genus, tuple(cols)), m))
        return FormalSpace.build(out, self.index)

    def drop_rigid(self) -> "FormalSpace":
        """H^1 vanishes over the point-like moduli of (0,2) and (0,3)."""
        return FormalSpace.build(
            [(t, m) for t, m in self.terms if not (t.kind == H1 and (t.genus, len(t.colors)) in RIGID)], self.index
        )

    def normalize(self, cs: ColorSet) -> "FormalSpace":
        return self.without_zero_blocks(cs).vacuum().drop_rigid()

    def to_json(self) -> list:
        return [{"kind": t.kind, "genus": t.genus, "colors": list(t.colors), "mult": m} for t, m in self.terms]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{m}*{t}" if m > 1 else str(t) for t, m in self.terms)


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % p for p in range(2, int(n**0.5) + 1))


class Hypotheses(NamedTuple):
    I: bool
    II: bool
    irreducible: bool


@lru_cache(maxsize=None)
def hypotheses(cs: ColorSet) -> Hypotheses:
    """Properties (I), (II) by computation; irreducibility from ell being prime."""
    return Hypotheses(check_property_I(cs).holds, check_property_II(cs).holds, _is_prime(cs.ell))


def _require(cs: ColorSet, assume_II: Optional[bool], assume_irreducible: Optional[bool]) -> None:
    hyp = hypotheses(cs)
    ii = hyp.II if assume_II is None else assume_II
    irr = hyp.irreducible if assume_irreducible is None else assume_irreducible
    if not ii:
        raise HypothesisFailure(f"cross-term vanishing needs property (II), which fails for {cs}")
    if not irr:
        raise HypothesisFailure(f"collapsing H^0 factors needs irreducibility, not known for {cs} (ell not prime)")


def kunneth_decompose(
    label: BlockLabel,
    cut: Cut,
    cs: ColorSet,
    assume_II: Optional[bool] = None,
    assume_irreducible: Optional[bool] = None,
) -> FormalSpace:
    """H^1 of ad V(label) pulled back along ``cut``, as a sum over the nonzero summands."""
    _require(cs, assume_II, assume_irreducible)
    if not dim_block(label, cs):
        raise HypothesisFailure(f"{label} is zero; there is nothing to decompose")
    items, index = [], []
    for s in gluing_decomposition(label, cut, cs):
        index.append(s.mu)
        for part in s.parts:
            if not dim_block(part, cs):
                raise MfkitError(f"summand mu={s.mu} of {label} has a zero factor {part}")
            items.append(Term(H1, part.genus, part.colors))
    return FormalSpace.build(items, index)


def project(space_by_mu: dict[int, FormalSpace], mu: int) -> FormalSpace:
    return space_by_mu.get(mu, FormalSpace(()))


def _by_mu(label: BlockLabel, cut: Cut, cs: ColorSet) -> dict[int, FormalSpace]:
    out = {}
    for s in gluing_decomposition(label, cut, cs):
        out[s.mu] = FormalSpace.build([Term(H1, p.genus, p.colors) for p in s.parts], (s.mu,))
    return out


class Waypoint(NamedTuple):
    step: str
    space: FormalSpace


@dataclass
class StabilityReport:
    h: int
    routes: dict[str, list[Waypoint]]
    equal: bool
    index_check: bool
    index_sets: tuple[tuple[int, ...], tuple[int, ...]]

    def to_json(self) -> dict:
        return {
            "h": self.h,
            "equal": self.equal,
            "index_check": self.index_check,
            "index_sets": [list(s) for s in self.index_sets],
            "routes": {k: [{"step": w.step, "space": w.space.to_json()} for w in v] for k, v in self.routes.items()},
        }


def stability_chain(h: int, cs: ColorSet) -> StabilityReport:
    """Index structure of the two maps H^1 ad V_{h+1} -> H^1 ad V_h, compared term by term."""
    if h < 4:
        raise ValueError(f"the stability chain needs h >= 4, got {h}")
    _require(cs, None, None)
    top = BlockLabel(h + 1, ())

    # via S_h^1 x S_1^1
    a1 = kunneth_decompose(top, Separating(h, ()), cs)
    a2 = project(_by_mu(top, Separating(h, ()), cs), 0)
    a3 = FormalSpace.build([(t, m) for t, m in a2.terms if t.genus == h])  # forget the torus factor
    a4 = a3.vacuum()
    route_a = [
        Waypoint("top", FormalSpace.single(h + 1)),
        Waypoint("separating cut h|1", a1),
        Waypoint("project nu=0", a2),
        Waypoint("first factor", a3),
        Waypoint("vacuum", a4),
    ]

    # via the nonseparating cut and the 0-colored pair of points
    b1 = kunneth_decompose(top, NonSeparating(), cs)
    b2 = project(_by_mu(top, NonSeparating(), cs), 0)
    mid = BlockLabel(h, (0, 0))
    b3 = project(_by_mu(mid, Separating(0, (0, 1)), cs), 0).drop_rigid()  # V_0(0,0,mu) x V_h(mu)
    b4 = b3.vacuum()
    route_b = [
        Waypoint("top", FormalSpace.single(h + 1)),
        Waypoint("nonseparating cut", b1),
        Waypoint("project mu=0", b2),
        Waypoint("separate a pair of pants", b3),
        Waypoint("vacuum", b4),
    ]
    equal = a3 == b3 and a4 == b4 and a4 == b2.vacuum() and a4 == FormalSpace.single(h)

    # right column of the diagram: V_2(mu) != 0 exactly when V_1(mu) != 0 (on the V_{h-1}(mu) support)
    left = tuple(mu for mu in cs.colors if dim_block(BlockLabel(h - 1, (mu,)), cs) and dim_block(BlockLabel(2, (mu,)), cs))
    right = tuple(mu for mu in cs.colors if dim_block(BlockLabel(h - 1, (mu,)), cs) and dim_block(BlockLabel(1, (mu,)), cs))
    return StabilityReport(h, {"injectivity": route_a, "psigprime": route_b}, equal, left == right, (left, right))


# certificates

CITE = {
    "II": "twist distinctness (II) for SU(2)/SO(3) theories",
    "I": "support equality (I) of one-holed genus 1 and 2 blocks",
    "irreducible": "irreducibility of quantum representations at prime ell",
    "truncation": "embeddable triples form a truncation set",
    "embedding": "existence of a connected embedding when g >= 2g'-1",
    "kunneth": "cross-term vanishing and Kunneth decomposition of pulled-back adjoint blocks",
    "stability": "injectivity of the stabilization map for h >= 4 (partial homological stability)",
    "coincidence": "the composite of stabilization maps equals the restriction to genus g'",
    "lifting": "harmonic lifting of compatible deformation classes (axiom)",
    "ocneanu": "Ocneanu rigidity of truncated modular functors (axiom)",
    "vanishing": "the restriction to genus g' vanishes",
    "conclusion": "zero map that is injective has zero source",
}


@dataclass
class Step:
    id: str
    kind: str
    claim: str
    depends_on: list[str]
    discharged_by: str
    justification: str
    ok: bool = True
    data: Any = None

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "claim": self.claim,
            "depends_on": list(self.depends_on),
            "discharged_by": self.discharged_by,
            "justification": self.justification,
            "ok": self.ok,
        }
        if self.data is not None:
            out["data"] = self.data
        return out

    def explain(self) -> str:
        deps = f" [from {', '.join(self.depends_on)}]" if self.depends_on else ""
        return f"{self.id} ({self.kind}): {self.claim}{deps}; by {self.justification}"


@dataclass
class Certificate:
    g: int
    gprime: int
    cs: ColorSet
    steps: list[Step]

    @property
    def ok(self) -> bool:
        return self.verify()

    def verify(self) -> bool:
        if self.gprime < MIN_GPRIME or self.g < 2 * self.gprime - 1:
            return False
        seen: set[str] = set()
        for s in self.steps:
            if not s.ok or any(d not in seen for d in s.depends_on):
                return False
            seen.add(s.id)
        return bool(self.steps) and self.steps[-1].kind == "conclusion"

    def to_json(self) -> dict:
        return {
            "status": "certified" if self.verify() else "invalid",
            "g": self.g,
            "gprime": self.gprime,
            "gprime_candidates": gprime_candidates(self.g),
            "ell": self.cs.ell,
            "variant": self.cs.variant.value,
            "steps": [s.to_json() for s in self.steps],
        }


@dataclass
class CertificateFailure:
    g: int
    reason: str
    blocking: dict

    ok = False

    def to_json(self) -> dict:
        return {"status": "failed", "g": self.g, "reason": self.reason, "blocking": self.blocking}


def gprime_candidates(g: int) -> list[int]:
    """All g' >= 4 with g >= 2g' - 1."""
    return list(range(MIN_GPRIME, (g + 1) // 2 + 1))


def choose_gprime(g: int) -> Optional[int]:
    """Smallest admissible g', or None."""
    cands = gprime_candidates(g)
    return cands[0] if cands else None


@lru_cache(maxsize=None)
def _truncation(gprime: int, cs: ColorSet):
    return validate_truncation_set(embeddable_set(gprime, cs), cs)


def build_certificate(g: int, cs: ColorSet, gprime: Optional[int] = None) -> Union[Certificate, CertificateFailure]:
    """Replay the reduction from genus g to genus g', discharging every combinatorial step."""
    if gprime is None:
        gprime = choose_gprime(g)
        if gprime is None:
            return CertificateFailure(
                g, "no g' with g'>=4 and g>=2g'-1", {"inequality": "g >= 2g'-1", "g": g, "gprime": MIN_GPRIME, "needs": 2 * MIN_GPRIME - 1}
            )
    elif gprime < MIN_GPRIME or g < 2 * gprime - 1:
        return CertificateFailure(g, f"g'={gprime} violates g'>=4 and g>=2g'-1", {"g": g, "gprime": gprime})

    steps: list[Step] = []

    def add(kind: str, claim: str, deps: Sequence[str], by: str, cite: str, ok: bool = True, data: Any = None) -> str:
        sid = f"{kind[:3].upper()}{sum(1 for s in steps if s.kind == kind) + 1}"
        steps.append(Step(sid, kind, claim, list(deps), by, CITE[cite], ok, data))
        return sid

    hyp = hypotheses(cs)
    pii = check_property_II(cs)
    h_ii = add("hypothesis", f"twists of {cs} are pairwise distinct", [], "fusion.check_property_II", "II", pii.holds,
               {"collisions": [list(c) for c in pii.collisions]})
    pi = check_property_I(cs)
    h_i = add("hypothesis", "supports of V_1(.) and V_2(.) agree", [], "fusion.check_property_I", "I", pi.holds,
              {"support": sorted(pi.genus1)})
    h_irr = add("hypothesis", f"representations are irreducible (ell={cs.ell} prime)", [], "axiom", "irreducible", hyp.irreducible)
    for s in steps:
        if not s.ok:
            return CertificateFailure(g, f"hypothesis failed: {s.claim}", {"step": s.id})

    # (a) truncation facts
    tr = _truncation(gprime, cs)
    t_set = add("truncation", f"embeddable triples in S_{gprime} satisfy (0), (1), (P)", [], "surfaces.validate_truncation_set",
                "truncation", tr.ok, None if tr.ok else {"axiom": tr.axiom, "triple": [tr.triple[0], tr.triple[1], list(tr.triple[2])]})
    top_emb = is_embeddable(gprime, 0, (), gprime, cs)[0]
    t_top = add("truncation", f"(g',0,()) = ({gprime},0,()) is embeddable in S_{gprime}", [], "surfaces.is_embeddable", "truncation", top_emb)
    emb_ids = [t_top]
    for h, cols in ((gprime, ()), (0, (0, 0, 0)), (1, (0,))):
        try:
            e = connected_embedding(h, len(cols), cols, g, gprime, cs)
            ok, data = True, {"complement": [p.to_json() for p in e.complement]}
        except MfkitError as exc:
            ok, data = False, {"error": str(exc)}
        emb_ids.append(add("embedding", f"V_{h}({','.join(map(str, cols))}) has a connected embedding in S_{g}", [t_set, t_top],
                           "surfaces.connected_embedding", "embedding", ok, data))

    # (b) decomposition facts for every genus on the way down
    dec_ids = {}
    for h in range(g - 1, gprime - 1, -1):
        ids = []
        for name, cut in (("h|1", Separating(h, ())), ("nonsep", NonSeparating())):
            fs = kunneth_decompose(BlockLabel(h + 1, ()), cut, cs)
            ids.append(add("decomposition", f"H1 ad V_{h + 1} along the {name} cut is {fs.normalize(cs)} (summands mu in {list(fs.index)})",
                           [h_ii, h_irr], "h1calc.kunneth_decompose", "kunneth", 0 in fs.index, {"index": list(fs.index)}))
        dec_ids[h] = ids

    # (c) stability chain
    stab_ids = []
    for h in range(g - 1, gprime - 1, -1):
        rep = stability_chain(h, cs)
        stab_ids.append(add("stability", f"H1 ad V_{h + 1} -> H1 ad V_{h} is injective; both routes agree", [h_i, h_irr, *dec_ids[h]],
                            "h1calc.stability_chain", "stability", rep.equal and rep.index_check))
    coinc = add("stability", f"the composite H1 ad V_{g} -> H1 ad V_{gprime} is the restriction to genus g' and is injective",
                stab_ids, "h1calc.stability_chain", "coincidence")

    # (d) axioms giving psi_{g'} = 0
    ax_lift = add("axiom", "compatible deformation classes lift to a deformation of the truncated functor", [t_set, *emb_ids], "axiom", "lifting")
    ax_oc = add("axiom", "deformations of truncated modular functors are trivial", [ax_lift], "axiom", "ocneanu")
    van = add("conclusion", f"the restriction H1 ad V_{g} -> H1 ad V_{gprime} is zero", [ax_oc, h_ii, h_irr], "axiom", "vanishing")
    add("conclusion", f"H1(ad V_{g}) = 0", [van, coinc], "h1calc.build_certificate", "conclusion")

    cert = Certificate(g, gprime, cs, steps)
    if not cert.verify():
        bad = next((s for s in steps if not s.ok), None)
        return CertificateFailure(g, f"step {bad.id if bad else '?'} not discharged: {bad.claim if bad else ''}", {"step": bad.id if bad else None})
    return cert

"""Colored surfaces glued along boundary circles, and embeddings into closed surfaces.

A surface piece is a connected S_g^n whose boundary circles are named by
integer slot ids.  A gluing graph pairs slots of equal color; the genus of
each glued component follows from additivity of the Euler characteristic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, NamedTuple, Optional, Sequence

from more_itertools import set_partitions

from mfkit.blocks import BlockLabel, dim_block, dim_disconnected
from mfkit.errors import GenusTooSmall, GluingError, GPrimeTooSmall, NotEmbeddable
from mfkit.fusion import ColorSet

MIN_GPRIME = 4


@dataclass(frozen=True)
class SurfacePiece:
    genus: int
    boundary: tuple[tuple[int, int], ...] = ()  # (slot id, color)

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple((int(s), int(c)) for s, c in self.boundary))
        slots = [s for s, _ in self.boundary]
        if len(set(slots)) != len(slots):
            raise GluingError(f"duplicate slot ids in piece {self}")
        if self.genus < 0:
            raise GluingError("genus must be nonnegative")

    @property
    def colors(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.boundary)

    @property
    def euler_char(self) -> int:
        return 2 - 2 * self.genus - len(self.boundary)

    def label(self) -> BlockLabel:
        return BlockLabel(self.genus, self.colors)

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": [list(b) for b in self.boundary]}


@dataclass(frozen=True)
class GluingGraph:
    pieces: tuple[SurfacePiece, ...]
    pairings: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(self, "pairings", tuple(tuple(sorted(p)) for p in self.pairings))


class Component(NamedTuple):
    genus: int
    colors: tuple[int, ...]


def glue_result(graph: GluingGraph) -> list[Component]:
    """Connected components of the glued surface, in order of their first piece."""
    owner: dict[int, int] = {}
    color: dict[int, int] = {}
    for i, piece in enumerate(graph.pieces):
        for slot, c in piece.boundary:
            if slot in owner:
                raise GluingError(f"slot {slot} appears in two pieces")
            owner[slot] = i
            color[slot] = c
    parent = list(range(len(graph.pieces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    used: set[int] = set()
    for s, t in graph.pairings:
        for slot in (s, t):
            if slot not in owner:
                raise GluingError(f"unknown slot {slot}")
            if slot in used:
                raise GluingError(f"slot {slot} is glued twice")
            used.add(slot)
        if s == t:
            raise GluingError(f"slot {s} glued to itself")
        if color[s] != color[t]:
            raise GluingError(f"color mismatch on pairing ({s}, {t}): {color[s]} != {color[t]}")
        parent[find(owner[s])] = find(owner[t])

    roots: dict[int, list[int]] = {}
    for i in range(len(graph.pieces)):
        roots.setdefault(find(i), []).append(i)
    out = []
    for members in sorted(roots.values()):
        chi = sum(graph.pieces[i].euler_char for i in members)
        rem = tuple(c for i in members for s, c in graph.pieces[i].boundary if s not in used)
        out.append(Component((2 - len(rem) - chi) // 2, rem))
    return out


@dataclass(frozen=True)
class Embedding:
    """A complement and a gluing turning the source piece into a closed S_target."""

    target_genus: int
    source: SurfacePiece
    complement: tuple[SurfacePiece, ...]
    pairing: tuple[tuple[int, int], ...]
    vacuum_slots: int = 0
    info: dict = field(default_factory=dict, compare=False, hash=False)

    def graph(self) -> GluingGraph:
        return GluingGraph((self.source, *self.complement), self.pairing)

    def to_json(self) -> dict:
        out = {
            "target_genus": self.target_genus,
            "source": self.source.to_json(),
            "complement": [p.to_json() for p in self.complement],
            "pairing": [list(p) for p in self.pairing],
        }
        if self.vacuum_slots:
            out["vacuum_slots"] = self.vacuum_slots
        out.update(self.info)
        return out


def _check_gprime(gprime: int) -> None:
    if gprime < MIN_GPRIME:
        raise GPrimeTooSmall(f"g' must be at least {MIN_GPRIME}, got {gprime}")


def _genus_vectors(total: int, minima: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors k with k_i >= minima_i summing to ``total``, in lexicographic order."""
    free = total - sum(minima)
    if free < 0:
        return
    m = len(minima)
    if m == 0:
        if free == 0:
            yield ()
        return
    # stars and bars, lexicographic in k
    for cut in itertools.combinations(range(free + m - 1), m - 1):
        cut = (-1,) + cut + (free + m - 1,)
        yield tuple(minima[i] + cut[i + 1] - cut[i] - 1 for i in range(m))


def _complements(h: int, colors: tuple[int, ...], gprime: int) -> Iterator[tuple[int, tuple[tuple[int, tuple[int, ...]], ...], tuple[tuple[int, ...], ...]]]:
    """Complements without self-gluings: one component per block of a partition of the boundary."""
    n = len(colors)
    for blocks in set_partitions(range(n)):
        c = len(blocks)
        total = gprime - h - n + c
        minima = [1 if len(b) == 1 else 0 for b in blocks]  # no disks
        for ks in _genus_vectors(total, minima):
            comps = tuple(sorted((k, tuple(colors[i] for i in b)) for k, b in zip(ks, blocks)))
            yield c, comps, tuple(tuple(b) for b in blocks)


def _build_embedding(h: int, colors: tuple[int, ...], gprime: int, comps, blocks) -> Embedding:
    n = len(colors)
    source = SurfacePiece(h, tuple((i, c) for i, c in enumerate(colors)))
    pieces, pairing = [], []
    nxt = n
    used_blocks = list(blocks)
    for k, cols in comps:
        # match the component to a block with those colors (blocks are disjoint)
        for j, b in enumerate(used_blocks):
            if b is not None and tuple(colors[i] for i in b) == cols:
                break
        b = used_blocks[j]
        used_blocks[j] = None
        bnd = []
        for i in b:
            bnd.append((nxt, colors[i]))
            pairing.append((i, nxt))
            nxt += 1
        pieces.append(SurfacePiece(k, tuple(bnd)))
    return Embedding(gprime, source, tuple(pieces), tuple(pairing))


def _witness_key(c: int, comps) -> tuple:
    return c, tuple(k for k, _ in comps), tuple(cols for _, cols in comps)


def is_embeddable(h: int, n: int, colors: Sequence[int], gprime: int, cs: ColorSet) -> tuple[bool, Optional[Embedding]]:
    """Decide whether (h, n, colors) embeds in S_gprime, returning the minimal witness."""
    _check_gprime(gprime)
    colors = tuple(colors)
    if len(colors) != n:
        raise ValueError(f"expected {n} colors, got {len(colors)}")
    cs.check(*colors)
    return _embeddable(h, colors, gprime, cs)


@lru_cache(maxsize=None)
def _embeddable(h: int, colors: tuple[int, ...], gprime: int, cs: ColorSet) -> tuple[bool, Optional[Embedding]]:
    n = len(colors)
    if n == 0:
        if h == gprime:
            return True, Embedding(gprime, SurfacePiece(h), (), ())
        return False, None
    need = dim_block(BlockLabel(h, colors), cs) > 0
    best = None
    for c, comps, blocks in _complements(h, colors, gprime):
        if best is not None and c > best[0][0]:
            break
        if need and not dim_disconnected([BlockLabel(k, cols) for k, cols in comps], cs):
            continue
        key = _witness_key(c, comps)
        if best is None or key < best[0]:
            best = (key, comps, blocks)
    if best is None:
        return False, None
    return True, _build_embedding(h, colors, gprime, best[1], best[2])


def embeddable_set(gprime: int, cs: ColorSet) -> Callable[[int, int, Sequence[int]], bool]:
    """Membership test of the set of triples embeddable in S_gprime."""
    _check_gprime(gprime)

    def member(g: int, n: int, colors: Sequence[int]) -> bool:
        return is_embeddable(g, n, colors, gprime, cs)[0]

    return member


class TruncationCheck(NamedTuple):
    ok: bool
    axiom: Optional[str]
    triple: Optional[tuple[int, int, tuple[int, ...]]]


def validate_truncation_set(
    member: Callable[[int, int, Sequence[int]], bool],
    cs: ColorSet,
    probe_genus: int = 1,
    probe_n: int = 5,
) -> TruncationCheck:
    """Check axioms (0), (1) and permutation stability (P) up to the probe bounds."""
    for axiom, g, nmax in (("0", 0, 5), ("1", 1, 3)):
        for n in range(1, nmax + 1):
            for lam in itertools.product(cs.colors, repeat=n):
                if not member(g, n, lam):
                    return TruncationCheck(False, axiom, (g, n, lam))
    for g in range(probe_genus + 1):
        for n in range(probe_n + 1):
            for lam in itertools.product(cs.colors, repeat=n):
                base = tuple(sorted(lam))
                if lam != base and member(g, n, lam) != member(g, n, base):
                    return TruncationCheck(False, "P", (g, n, lam))
    return TruncationCheck(True, None, None)


def connected_embedding(h: int, n: int, colors: Sequence[int], g: int, gprime: int, cs: ColorSet) -> Embedding:
    """Embed (h, n, colors) in S_g with a connected complement, starting from a witness in S_gprime."""
    _check_gprime(gprime)
    if g < 2 * gprime - 1:
        raise GenusTooSmall(f"need g >= 2g'-1 = {2 * gprime - 1}, got g = {g}")
    ok, wit = is_embeddable(h, n, colors, gprime, cs)
    if not ok:
        raise NotEmbeddable(f"({h}, {n}, {tuple(colors)}) is not embeddable in S_{gprime}")
    if n == 0:
        # S_gprime with two 0-colored circles (vacuum) glued to S_{g-gprime-1}^2
        source = SurfacePiece(h, ((0, 0), (1, 0)))
        m = SurfacePiece(g - gprime - 1, ((2, 0), (3, 0)))
        emb = Embedding(g, source, (m,), ((0, 2), (1, 3)), vacuum_slots=2, info={"annuli": 0, "others": 0, "tree_edges": 0})
        _check_result(emb, g)
        return emb

    comps = wit.complement
    a = sum(1 for p in comps if p.genus == 0 and len(p.boundary) == 2)
    b = len(comps) - a
    if not 2 * gprime >= n + b:
        raise AssertionError(f"2g' >= n + b fails: {2 * gprime} < {n} + {b}")
    if not g - gprime >= a + b - 1:
        raise AssertionError(f"g - g' >= a + b - 1 fails: {g - gprime} < {a + b - 1}")

    # 2(g-g') new 0-colored slots: a spanning path over the components, the rest on component 0
    extra = g - gprime
    nxt = max(s for p in (wit.source, *comps) for s, _ in p.boundary) + 1
    new_slots: list[list[int]] = [[] for _ in comps]
    internal = []
    for e in range(extra):
        if e < len(comps) - 1:
            u, v = e, e + 1
        else:
            u, v = 0, 0
        new_slots[u].append(nxt)
        new_slots[v].append(nxt + 1)
        internal.append((nxt, nxt + 1))
        nxt += 2
    tilde = tuple(
        SurfacePiece(p.genus, p.boundary + tuple((s, 0) for s in extra_slots))
        for p, extra_slots in zip(comps, new_slots)
    )
    merged = glue_result(GluingGraph(tilde, internal))
    assert len(merged) == 1, "complement is not connected"
    glued_slots = {s for pair in internal for s in pair}
    m_boundary = tuple(bc for p in tilde for bc in p.boundary if bc[0] not in glued_slots)
    m = SurfacePiece(merged[0].genus, m_boundary)
    emb = Embedding(g, wit.source, (m,), wit.pairing, info={"annuli": a, "others": b, "tree_edges": len(comps) - 1})
    _check_result(emb, g)
    if dim_block(wit.source.label(), cs) and not dim_block(m.label(), cs):
        raise AssertionError("connected complement carries a zero block")
    return emb


def _check_result(emb: Embedding, g: int) -> None:
    res = glue_result(emb.graph())
    if res != [Component(g, ())]:
        raise AssertionError(f"gluing produced {res}, expected a closed genus {g} surface")

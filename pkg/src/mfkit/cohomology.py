"""Twisted cohomology H^0 and H^1 of finitely presented groups via Fox calculus.

Words are sequences of signed 1-based generator indices: ``2`` is g_2 and
``-2`` its inverse.  A representation sends g_i to an invertible matrix over
a cyclotomic field; a word acts by the ordered product of its letters.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Sequence

from mfkit import linalg
from mfkit.cyclo import CycloScalar
from mfkit.errors import NotARepresentation, SchemaError
from mfkit.linalg import Matrix

Word = tuple[int, ...]


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...] = ()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(tuple(int(x) for x in r) for r in self.relators))
        if self.generator_count < 0:
            raise SchemaError("generator count must be nonnegative", "/generators")
        for i, r in enumerate(self.relators):
            for j, x in enumerate(r):
                if x == 0 or abs(x) > self.generator_count:
                    raise SchemaError(f"letter {x} out of range for {self.generator_count} generators", f"/relators/{i}/{j}")

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relators": [list(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: Any) -> "GroupPresentation":
        if not isinstance(data, dict):
            raise SchemaError("expected an object", "")
        k = data.get("generators")
        if not isinstance(k, int) or isinstance(k, bool):
            raise SchemaError("expected an integer", "/generators")
        rels = data.get("relators", [])
        if not isinstance(rels, list):
            raise SchemaError("expected a list", "/relators")
        for i, r in enumerate(rels):
            if not isinstance(r, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in r):
                raise SchemaError("expected a list of signed integers", f"/relators/{i}")
        return cls(k, tuple(tuple(r) for r in rels))


_BUILTIN = re.compile(r"^\s*(triangle|free|cyclic)\s*\(\s*([0-9,\s]*)\)\s*$")


def builtin_presentation(name: str) -> GroupPresentation:
    """``triangle(p,q,r)``, ``free(n)`` or ``cyclic(n)``."""
    m = _BUILTIN.match(name)
    if not m:
        raise ValueError(f"unknown builtin presentation {name!r}")
    kind = m.group(1)
    args = [int(a) for a in m.group(2).split(",") if a.strip()]
    want = 3 if kind == "triangle" else 1
    if len(args) != want or any(a < 0 for a in args):
        raise ValueError(f"{kind} takes {want} nonnegative integer argument(s), got {m.group(2)!r}")
    label = f"{kind}({','.join(map(str, args))})"
    if kind == "triangle":
        p, q, r = args
        return GroupPresentation(2, ((1,) * p, (2,) * q, (1, 2) * r), label)
    if kind == "free":
        return GroupPresentation(args[0], (), label)
    return GroupPresentation(1, ((1,) * args[0],), label)


@dataclass(frozen=True)
class MatrixRep:
    dim: int
    order: int
    matrices: tuple[tuple[tuple[CycloScalar, ...], ...], ...]

    def __post_init__(self):
        mats = tuple(tuple(tuple(x.lift(self.order) if isinstance(x, CycloScalar) else CycloScalar.rational(x, self.order) for x in row) for row in m) for m in self.matrices)
        object.__setattr__(self, "matrices", mats)
        for i, m in enumerate(mats):
            if len(m) != self.dim or any(len(row) != self.dim for row in m):
                raise SchemaError(f"generator {i + 1} is not {self.dim}x{self.dim}", f"/generators/{i}")

    @property
    def generator_count(self) -> int:
        return len(self.matrices)

    def inverses(self) -> list[Matrix]:
        cached = self.__dict__.get("_inv")
        if cached is None:
            cached = []
            for i, m in enumerate(self.matrices):
                try:
                    cached.append(linalg.inverse(m))
                except ZeroDivisionError:
                    raise NotARepresentation(f"generator {i + 1} is not invertible") from None
            object.__setattr__(self, "_inv", cached)
        return cached

    def letter(self, x: int) -> Matrix:
        return [list(r) for r in self.matrices[x - 1]] if x > 0 else self.inverses()[-x - 1]

    def evaluate(self, word: Sequence[int]) -> Matrix:
        out = linalg.identity(self.dim, self.order)
        for x in word:
            out = linalg.matmul(out, self.letter(x))
        return out

    def validate(self, pres: GroupPresentation, projective: bool = False) -> list[CycloScalar]:
        """Check every relator maps to the identity (or to a scalar when ``projective``).

        Returns the scalar attached to each relator.
        """
        if pres.generator_count != self.generator_count:
            raise NotARepresentation(
                f"presentation has {pres.generator_count} generators, representation has {self.generator_count}"
            )
        self.inverses()
        scalars = []
        for i, r in enumerate(pres.relators):
            val = self.evaluate(r)
            c = linalg.scalar_value(val)
            if c is None or (not projective and c != 1):
                kind = "a scalar matrix" if projective else "the identity"
                raise NotARepresentation(f"relator {i + 1} does not evaluate to {kind}", relator=i + 1)
            scalars.append(c)
        return scalars

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "order": self.order,
            "generators": [[[x.to_json() for x in row] for row in m] for m in self.matrices],
        }


def _scalar_from_json(v: Any, order: int, ptr: str) -> CycloScalar:
    if isinstance(v, int) and not isinstance(v, bool):
        return CycloScalar.rational(v, order)
    if not isinstance(v, dict) or "order" not in v or "coeffs" not in v:
        raise SchemaError("expected a cyclotomic scalar object", ptr)
    try:
        x = CycloScalar.from_json(v)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad cyclotomic scalar: {exc}", ptr) from None
    if order % x.order:
        raise SchemaError(f"scalar order {x.order} does not divide {order}", ptr + "/order")
    return x


def rep_from_json(data: Any) -> MatrixRep:
    if not isinstance(data, dict):
        raise SchemaError("expected an object", "")
    for key in ("dim", "order"):
        v = data.get(key)
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise SchemaError("expected a positive integer", f"/{key}")
    d, order = data["dim"], data["order"]
    gens = data.get("generators")
    if not isinstance(gens, list):
        raise SchemaError("expected a list of matrices", "/generators")
    mats = []
    for i, m in enumerate(gens):
        if not isinstance(m, list) or len(m) != d:
            raise SchemaError(f"expected {d} rows", f"/generators/{i}")
        rows = []
        for j, row in enumerate(m):
            if not isinstance(row, list) or len(row) != d:
                raise SchemaError(f"expected {d} entries", f"/generators/{i}/{j}")
            rows.append(tuple(_scalar_from_json(v, order, f"/generators/{i}/{j}/{k}") for k, v in enumerate(row)))
        mats.append(tuple(rows))
    return MatrixRep(d, order, tuple(mats))


def load_rep(path: str | Path, pres: Optional[GroupPresentation] = None, projective: bool = False) -> MatrixRep:
    """Parse and check a representation file; with ``pres`` the relators are checked too."""
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "") from None
    rep = rep_from_json(data)
    rep.inverses()
    if pres is not None:
        rep.validate(pres, projective=projective)
    return rep


def load_presentation(source: str) -> GroupPresentation:
    """``builtin:<name>`` or the path of a presentation file."""
    if source.startswith("builtin:"):
        return builtin_presentation(source[len("builtin:"):])
    try:
        data = json.loads(Path(source).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}", "") from None
    return GroupPresentation.from_json(data)


def fox_derivative(word: Sequence[int], j: int, rep: MatrixRep) -> Matrix:
    """rho applied to the Fox derivative d(word)/d(g_j)."""
    d, order = rep.dim, rep.order
    out = [[CycloScalar.zero(order)] * d for _ in range(d)]
    prefix = linalg.identity(d, order)
    for x in word:
        if x == j:
            out = linalg.matadd(out, prefix)
        elif x == -j:
            out = linalg.matadd(out, linalg.matmul(prefix, rep.letter(x)), sign=-1)
        prefix = linalg.matmul(prefix, rep.letter(x))
    return out


def fox_jacobian(pres: GroupPresentation, rep: MatrixRep) -> Matrix:
    """Stacked relator rows [d r / d g_1 | ... | d r / d g_k]."""
    rows: Matrix = []
    for r in pres.relators:
        blocks = [fox_derivative(r, j, rep) for j in range(1, pres.generator_count + 1)]
        for i in range(rep.dim):
            rows.append([x for b in blocks for x in b[i]])
    return rows


@dataclass(frozen=True)
class CocycleReport:
    dim_Z1: int
    dim_B1: int
    dim_H1: int
    dim_H0: int

    def to_json(self) -> dict:
        return {"dim_B1": self.dim_B1, "dim_H0": self.dim_H0, "dim_H1": self.dim_H1, "dim_Z1": self.dim_Z1}


def h0(rep: MatrixRep) -> int:
    """Dimension of the common fixed space of the generators."""
    d = rep.dim
    if rep.generator_count == 0:
        return d
    ident = linalg.identity(d, rep.order)
    stacked = [row for m in rep.matrices for row in linalg.matadd(m, ident, sign=-1)]
    return d - linalg.rank(stacked)


def h_report(pres: GroupPresentation, rep: MatrixRep, check: bool = True) -> CocycleReport:
    if check:
        rep.validate(pres)
    d, k = rep.dim, pres.generator_count
    dim_h0 = h0(rep)
    if k == 0:
        return CocycleReport(0, 0, 0, dim_h0)
    jac = fox_jacobian(pres, rep)
    z1 = k * d - (linalg.rank(jac) if jac else 0)
    b1 = d - dim_h0
    return CocycleReport(z1, b1, z1 - b1, dim_h0)


def adjoint(rep: MatrixRep) -> MatrixRep:
    """Conjugation action X -> rho X rho^-1 on row-major flattened d x d matrices."""
    mats = []
    for m, mi in zip(rep.matrices, rep.inverses()):
        mats.append(tuple(tuple(r) for r in linalg.kron(m, linalg.transpose(mi))))
    return MatrixRep(rep.dim * rep.dim, rep.order, tuple(mats))


def commutant_dim(rep: MatrixRep) -> int:
    return h0(adjoint(rep))


def is_irreducible(pres: GroupPresentation, rep: MatrixRep) -> bool:
    """Absolute irreducibility: the commutant consists of scalars only."""
    rep.validate(pres, projective=True)
    return commutant_dim(rep) == 1


def coboundary(rep: MatrixRep, v: Sequence[CycloScalar]) -> list[CycloScalar]:
    """The cocycle g_i -> rho(g_i) v - v, flattened over generators."""
    out = []
    for m in rep.matrices:
        for i, row in enumerate(m):
            s = -v[i]
            for a, b in zip(row, v):
                if not a.is_zero():
                    s = s + a * b
            out.append(s)
    return out


# ready-made representations


def trivial_rep(generators: int, dim: int = 1, order: int = 1) -> MatrixRep:
    ident = tuple(tuple(r) for r in linalg.identity(dim, order))
    return MatrixRep(dim, order, (ident,) * generators)


def character_rep(values: Sequence[CycloScalar]) -> MatrixRep:
    order = linalg.common_order([values]) if values else 1
    return MatrixRep(1, order, tuple(((v,),) for v in values))


def permutation_rep(perms: Sequence[Sequence[int]]) -> MatrixRep:
    """e_i -> e_{perm[i]} for 0-based permutations of range(d)."""
    d = len(perms[0]) if perms else 1
    one, zero = CycloScalar.one(), CycloScalar.zero()
    mats = []
    for p in perms:
        mats.append(tuple(tuple(one if p[j] == i else zero for j in range(d)) for i in range(d)))
    return MatrixRep(d, 1, tuple(mats))


def sign_of(perm: Sequence[int]) -> int:
    seen, sign = set(), 1
    for i in range(len(perm)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def direct_sum(a: MatrixRep, b: MatrixRep) -> MatrixRep:
    order = a.order * b.order // math.gcd(a.order, b.order)
    zero = CycloScalar.zero(order)
    mats = []
    for ma, mb in zip(a.matrices, b.matrices):
        rows = [tuple(r) + (zero,) * b.dim for r in ma] + [(zero,) * a.dim + tuple(r) for r in mb]
        mats.append(tuple(rows))
    return MatrixRep(a.dim + b.dim, order, tuple(mats))


# T(2,3,5) acting on 5 points: x = (1 2)(3 4), y = (0 1 3), xy of order 5
ICOSAHEDRAL_PERMS = ((0, 2, 1, 4, 3), (1, 3, 2, 0, 4))


def fibonacci_rep() -> MatrixRep:
    """The shipped 2-dimensional representation of T(5,5,5)."""
    text = resources.files("mfkit").joinpath("data/fibonacci_t555.json").read_text()
    return rep_from_json(json.loads(text)["representation"])


def invariant_form_signature(rep: MatrixRep, embedding: int = 1, tol: float = 1e-9) -> Optional[tuple[int, int]]:
    """Signature (p, q) of an invariant hermitian form under the given complex embedding.

    Returns None unless the invariant sesquilinear forms form a 1-dimensional
    space, in which case the hermitian form is unique up to a real scalar and
    the signature is reported with p >= q.
    """
    import numpy as np

    d = rep.dim
    mats = [np.array([[x.to_complex(embedding) for x in row] for row in m]) for m in rep.matrices]
    # rho^* H rho = H, vectorised row-major: (rho^T kron rho^H) vec(H) = vec(H)
    eye = np.eye(d * d)
    system = np.vstack([np.kron(m.conj().T, m.T) - eye for m in mats]) if mats else np.zeros((1, d * d))
    _, s, vh = np.linalg.svd(system)
    null = [vh[i].conj() for i in range(d * d) if i >= len(s) or s[i] < tol]
    if len(null) != 1:
        return None
    h = null[0].reshape(d, d)
    herm = h + h.conj().T
    if np.linalg.norm(herm) < tol:
        herm = 1j * (h - h.conj().T)
    ev = np.linalg.eigvalsh(herm)
    scale = max(abs(ev))
    p = int(sum(1 for e in ev if e > tol * scale))
    q = int(sum(1 for e in ev if e < -tol * scale))
    return (p, q) if p >= q else (q, p)

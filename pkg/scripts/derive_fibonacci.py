"""Derive the 2-dimensional representation of T(5,5,5) shipped in mfkit/data.

x and y act by Dehn twists about two curves on the four-holed sphere with all
boundary colors 2 in the SO(3) theory at ell = 5.  Each twist has the twist
eigenvalues {t_0, t_2} (one per color on the curve).  The lantern relation
makes x * y * z equal to the product of the four boundary twists, t_2^4,
where z is a third twist with the same eigenvalues; so xy has eigenvalues
t_2^4 / {t_0, t_2}.  We search all eigenvalue assignments over 5th roots of
unity satisfying these constraints, build x = diag(a1, a2) and y with
eigenvalues {b1, b2} and prescribed trace of xy, and keep irreducible ones.

Run:  python3 scripts/derive_fibonacci.py [--write]
"""

from __future__ import annotations

import argparse
import itertools
import json
from pathlib import Path

from mfkit import linalg
from mfkit.cohomology import MatrixRep, builtin_presentation, is_irreducible
from mfkit.cyclo import CycloScalar, root_of_unity
from mfkit.fusion import make_color_set, twist

OUT = Path(__file__).resolve().parents[1] / "src" / "mfkit" / "data" / "fibonacci_t555.json"


def build(a: tuple, b: tuple, c: tuple) -> MatrixRep | None:
    """x = diag(a), y with eigenvalues b, xy with eigenvalues c; None if impossible or reducible."""
    a1, a2 = a
    b1, b2 = b
    if a1 == a2 or b1 == b2:
        return None
    det_ok = a1 * a2 * b1 * b2 == c[0] * c[1]
    if not det_ok:
        return None
    p = (c[0] + c[1] - a2 * (b1 + b2)) / (a1 - a2)
    s = b1 + b2 - p
    q = CycloScalar.one(5)
    r = p * s - b1 * b2
    if r.is_zero():
        return None  # common eigenvector: reducible
    x = ((a1, CycloScalar.zero(5)), (CycloScalar.zero(5), a2))
    y = ((p, q), (r, s))
    return MatrixRep(2, 5, (x, y))


def derive() -> list[tuple[dict, MatrixRep]]:
    cs = make_color_set(5, "so3")
    t = [twist(lam, cs) for lam in cs.colors]
    roots = [root_of_unity(k, 5) for k in range(5)]
    pres = builtin_presentation("triangle(5,5,5)")
    boundary = t[1] ** 4
    found = []
    for a in itertools.permutations(t, 2):
        for b in itertools.permutations(t, 2):
            for c in itertools.combinations_with_replacement(roots, 2):
                # lantern: xy = boundary * z^-1 with z of eigenvalues {t_0, t_2}
                if sorted(map(repr, c)) != sorted(repr(boundary / e) for e in t):
                    continue
                rep = build(a, b, c)
                if rep is None:
                    continue
                rep.validate(pres)
                if is_irreducible(pres, rep):
                    found.append(({"x": [repr(v) for v in a], "y": [repr(v) for v in b], "xy": [repr(v) for v in c]}, rep))
    return found


def canonical() -> MatrixRep:
    """The first solution, x = diag(t_0, t_2) and y with eigenvalues (t_0, t_2)."""
    return derive()[0][1]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", action="store_true", help="overwrite the shipped data file")
    args = ap.parse_args()
    sols = derive()
    for eig, rep in sols:
        print(eig)
        for m in rep.matrices:
            print("  ", [[str(v) for v in row] for row in m])
    rep = sols[0][1]
    doc = {
        "presentation": "triangle(5,5,5)",
        "theory": {"ell": 5, "variant": "so3", "boundary_colors": [2, 2, 2, 2]},
        "eigenvalues": sols[0][0],
        "representation": rep.to_json(),
    }
    if args.write:
        OUT.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
        print(f"wrote {OUT}")


if __name__ == "__main__":
    main()

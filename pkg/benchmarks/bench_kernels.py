"""Compare the compiled and pure-Python cyclotomic kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times ``mulmod`` on random elements of Z[zeta_n] and a full exact rank
computation (the twisted H^1 of the Fibonacci adjoint representation) under
each backend.  The rank timing runs in a subprocess per backend because the
backend is chosen at import.
"""

from __future__ import annotations

import argparse
import os
import random
import subprocess
import sys
import timeit

from mfkit import _pykernels
from mfkit.cyclo import _table

try:
    from mfkit import _cykernels
except ImportError:  # extension not built
    _cykernels = None

RANK_SNIPPET = (
    "import timeit; from mfkit.cohomology import *; "
    "pres = builtin_presentation('triangle(5,5,5)'); rep = adjoint(fibonacci_rep()); "
    "print(min(timeit.repeat(lambda: h_report(pres, rep), number=5, repeat={r})) / 5)"
)


def bench_mulmod(n: int, repeat: int) -> dict[str, float]:
    rows = _table(n).rows
    rng = random.Random(n)
    vecs = [[rng.randint(-10**6, 10**6) for _ in rows[0]] for _ in range(64)]
    pairs = list(zip(vecs, reversed(vecs)))
    out = {}
    for name, mod in (("python", _pykernels), ("cython", _cykernels)):
        if mod is None:
            continue
        t = mod.Table(n, rows)
        f = mod.mulmod
        out[name] = min(timeit.repeat(lambda: [f(a, b, t) for a, b in pairs], number=20, repeat=repeat)) / (20 * len(pairs))
    return out


def bench_rank(repeat: int) -> dict[str, float]:
    out = {}
    for name, flag in (("python", "1"), ("cython", "0")):
        if name == "cython" and _cykernels is None:
            continue
        env = dict(os.environ, MFKIT_PURE_PYTHON=flag)
        res = subprocess.run([sys.executable, "-c", RANK_SNIPPET.format(r=repeat)], env=env, capture_output=True, text=True, check=True)
        out[name] = float(res.stdout)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"{'kernel':<22}{'python':>12}{'cython':>12}{'speedup':>10}")
    rows = [(f"mulmod n={n}", bench_mulmod(n, args.repeat)) for n in (5, 12, 20, 60)]
    rows.append(("H1 Fibonacci adjoint", bench_rank(args.repeat)))
    for label, t in rows:
        py, cy = t.get("python"), t.get("cython")
        speed = f"{py / cy:9.1f}x" if py and cy else "      n/a"
        cy_s = f"{cy * 1e6:10.1f}us" if cy else "       n/a"
        print(f"{label:<22}{py * 1e6:10.1f}us{cy_s}{speed}")


if __name__ == "__main__":
    main()

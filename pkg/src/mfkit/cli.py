"""Command-line front end.

Data goes to stdout (JSON with sorted keys, or CSV); logs go to stderr.
Exit status: 0 success, 1 domain error (an {"error": ...} object is printed),
2 usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import itertools
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional, Sequence

from mfkit import __version__
from mfkit.errors import MfkitError, NotARepresentation, SchemaError

log = logging.getLogger("mfkit")

FORMATS = ("json", "csv", "pretty")


@dataclass
class Config:
    ell: Optional[int] = None
    variant: str = "su2"
    format: str = "json"
    oracle: bool = False

    @classmethod
    def load(cls, path: Optional[str]) -> "Config":
        if not path:
            return cls()
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SchemaError(f"cannot read config {path}: {exc}") from None
        if not isinstance(data, dict):
            raise SchemaError("config must be a JSON object", "")
        cfg = cls()
        if "ell" in data:
            if not isinstance(data["ell"], int) or isinstance(data["ell"], bool):
                raise SchemaError("expected an integer", "/ell")
            cfg.ell = data["ell"]
        if "variant" in data:
            cfg.variant = str(data["variant"])
        if "format" in data:
            if data["format"] not in FORMATS:
                raise SchemaError(f"expected one of {', '.join(FORMATS)}", "/format")
            cfg.format = data["format"]
        if "oracle" in data:
            if not isinstance(data["oracle"], bool):
                raise SchemaError("expected a boolean", "/oracle")
            cfg.oracle = data["oracle"]
        unknown = set(data) - {"ell", "variant", "format", "oracle"}
        if unknown:
            raise SchemaError(f"unknown key {sorted(unknown)[0]!r}", f"/{sorted(unknown)[0]}")
        return cfg


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(":", ",").split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _triple(text: str) -> tuple[int, int, tuple[int, ...]]:
    parts = text.split(",", 2)
    try:
        h, n = int(parts[0]), int(parts[1])
        cols = tuple(int(c) for c in parts[2].split(":") if c != "") if len(parts) > 2 else ()
    except (ValueError, IndexError):
        raise argparse.ArgumentTypeError(f"expected h,n,c1:c2:..., got {text!r}") from None
    return h, n, cols


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 2, message names the flag
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (default from config, else json)")
    common.add_argument("--seed", type=int, default=None, help="accepted for test harnesses; never affects results")
    common.add_argument("--enable-oracle", action="store_true", help="allow the numeric Verlinde oracle")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    theory = argparse.ArgumentParser(add_help=False)
    theory.add_argument("--ell", type=int, default=None)
    theory.add_argument("--variant", choices=("su2", "so3", "SU2", "SO3"), default=None)

    p = _Parser(prog="mfkit", description="Fusion data, block dimensions, embeddings and twisted cohomology.")
    p.add_argument("--version", action="version", version=f"mfkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("fusion", parents=[common, theory], help="fusion multiplicities")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--table", action="store_true", help="full table as CSV (rows a, columns b, pages c)")
    g.add_argument("--abc", type=_int_list, help="a,b,c")

    s = sub.add_parser("dim", parents=[common, theory], help="block dimension")
    s.add_argument("--genus", type=int, default=None)
    s.add_argument("--colors", type=_int_list, default=())
    s.add_argument("--sweep", type=_int_list, default=None, help="gmax,nmax: CSV of all dims up to the bounds")

    s = sub.add_parser("twist", parents=[common, theory], help="twist eigenvalues")
    s.add_argument("--lam", type=int, default=None, help="one color (default: all)")

    sub.add_parser("props", parents=[common, theory], help="check properties (I) and (II)")

    s = sub.add_parser("embed", parents=[common, theory], help="embeddability of a colored surface")
    s.add_argument("--triple", type=_triple, required=True, help="h,n,c1:c2:...")
    s.add_argument("--gprime", type=int, required=True)
    s.add_argument("--connected", action="store_true", help="return a connected embedding into S_g")
    s.add_argument("--g", type=int, default=None)

    s = sub.add_parser("truncate", parents=[common, theory], help="validate the embeddable set as a truncation set")
    s.add_argument("--gprime", type=int, required=True)
    s.add_argument("--probe-genus", type=int, default=1)
    s.add_argument("--probe-n", type=int, default=5)

    s = sub.add_parser("h1", parents=[common], help="twisted H^0 / H^1 via Fox calculus")
    s.add_argument("--presentation", required=True, help="file or builtin:triangle(p,q,r) | builtin:free(n) | builtin:cyclic(n)")
    s.add_argument("--rep", required=True, help="representation file or builtin:fibonacci")
    s.add_argument("--adjoint", action="store_true")
    s.add_argument("--projective", action="store_true", help="accept relators mapping to scalars (requires --adjoint)")

    s = sub.add_parser("certify", parents=[common, theory], help="genus reduction certificate")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--gprime", type=int, default=None)
    s.add_argument("--explain", action="store_true", help="add a readable line per step")

    s = sub.add_parser("oracle-check", parents=[common, theory], help="compare dims with the Verlinde oracle")
    s.add_argument("--gmax", type=int, default=3)
    s.add_argument("--nmax", type=int, default=4)
    return p


def _emit(obj: Any, fmt: str, out) -> None:
    if fmt == "pretty":
        out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv" and isinstance(obj, list) and obj and isinstance(obj[0], dict):
        w = csv.DictWriter(out, fieldnames=sorted(obj[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(obj)
    elif fmt == "csv" and isinstance(obj, dict) and all(not isinstance(v, (dict, list)) for v in obj.values()):
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["key", "value"])
        for k in sorted(obj):
            w.writerow([k, json.dumps(obj[k])])
    else:
        out.write(json.dumps(obj, sort_keys=True) + "\n")


def _color_set(args, cfg: Config):
    from mfkit.fusion import make_color_set

    ell = args.ell if args.ell is not None else cfg.ell
    if ell is None:
        raise UsageError("--ell is required (or set 'ell' in the MFKIT_CONFIG file)")
    return make_color_set(ell, (args.variant or cfg.variant).lower())


def _cmd_fusion(args, cfg, out) -> Any:
    from mfkit.fusion import fusion_dim

    cs = _color_set(args, cfg)
    if args.abc is not None:
        if len(args.abc) != 3:
            raise UsageError("--abc takes exactly three colors")
        return {"fusion": fusion_dim(*args.abc, cs)}
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["c", "a", *[f"b={b}" for b in cs.colors]])
    for c in cs.colors:
        for a in cs.colors:
            w.writerow([c, a, *[fusion_dim(a, b, c, cs) for b in cs.colors]])
    return None


def _cmd_dim(args, cfg, out) -> Any:
    from mfkit.blocks import BlockLabel, dim_block

    cs = _color_set(args, cfg)
    if args.sweep is not None:
        if len(args.sweep) != 2:
            raise UsageError("--sweep takes gmax,nmax")
        gmax, nmax = args.sweep
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["genus", "colors", "dim"])
        for g in range(gmax + 1):
            for n in range(nmax + 1):
                for cols in itertools.combinations_with_replacement(cs.colors, n):
                    w.writerow([g, ":".join(map(str, cols)), dim_block(BlockLabel(g, cols), cs)])
        return None
    if args.genus is None:
        raise UsageError("--genus is required unless --sweep is given")
    if args.genus < 0:
        raise UsageError("--genus must be nonnegative")
    return {"dim": dim_block(BlockLabel(args.genus, args.colors), cs)}


def _cmd_twist(args, cfg, out) -> Any:
    from mfkit.fusion import twist

    cs = _color_set(args, cfg)
    lams = cs.colors if args.lam is None else (args.lam,)
    rows = []
    for lam in lams:
        t = twist(lam, cs)
        rows.append({"lam": lam, "order": t.order, "value": str(t), "exact": t.to_json()})
    return rows[0] if args.lam is not None else {"twists": rows}


def _cmd_props(args, cfg, out) -> Any:
    from mfkit.fusion import check_property_I, check_property_II

    cs = _color_set(args, cfg)
    return {"I": check_property_I(cs).holds, "II": check_property_II(cs).holds}


def _cmd_embed(args, cfg, out) -> Any:
    from mfkit.surfaces import connected_embedding, is_embeddable

    cs = _color_set(args, cfg)
    h, n, cols = args.triple
    if args.connected:
        if args.g is None:
            raise UsageError("--connected requires --g")
        emb = connected_embedding(h, n, cols, args.g, args.gprime, cs)
        return {"found": True, "witness": emb.to_json()}
    found, wit = is_embeddable(h, n, cols, args.gprime, cs)
    return {"found": found, "witness": wit.to_json() if wit else None}


def _cmd_truncate(args, cfg, out) -> Any:
    from mfkit.surfaces import embeddable_set, validate_truncation_set

    cs = _color_set(args, cfg)
    res = validate_truncation_set(embeddable_set(args.gprime, cs), cs, args.probe_genus, args.probe_n)
    trip = None if res.triple is None else [res.triple[0], res.triple[1], list(res.triple[2])]
    return {"ok": res.ok, "axiom": res.axiom, "triple": trip}


def _cmd_h1(args, cfg, out) -> Any:
    from mfkit.cohomology import adjoint, fibonacci_rep, h_report, load_presentation, load_rep

    pres = load_presentation(args.presentation)
    if args.projective and not args.adjoint:
        raise UsageError("--projective requires --adjoint: only the adjoint of a projective representation is linear")
    rep = fibonacci_rep() if args.rep == "builtin:fibonacci" else load_rep(args.rep)
    scalars = rep.validate(pres, projective=args.projective)
    if args.adjoint:
        rep = adjoint(rep)
    result = h_report(pres, rep).to_json()
    if args.projective:
        result["relator_scalars"] = [s.to_json() for s in scalars]
    return result


def _cmd_certify(args, cfg, out) -> Any:
    from mfkit.h1calc import Certificate, build_certificate

    cs = _color_set(args, cfg)
    cert = build_certificate(args.g, cs, args.gprime)
    res = cert.to_json()
    if args.explain and isinstance(cert, Certificate):
        res["explanation"] = [s.explain() for s in cert.steps]
    elif args.explain:
        res["explanation"] = [f"no certificate for g={args.g}: {cert.reason}"]
    return res


def _cmd_oracle(args, cfg, out) -> Any:
    from mfkit.blocks import BlockLabel, dim_block, verlinde_oracle

    if not (args.enable_oracle or cfg.oracle):
        raise UsageError("the Verlinde oracle is disabled; pass --enable-oracle or set \"oracle\": true in the config")
    cs = _color_set(args, cfg)
    checked, mismatches = 0, []
    for g in range(args.gmax + 1):
        for n in range(args.nmax + 1):
            for cols in itertools.combinations_with_replacement(cs.colors, n):
                lab = BlockLabel(g, cols)
                a, b = dim_block(lab, cs), verlinde_oracle(lab, cs)
                checked += 1
                if a != b:
                    mismatches.append({"genus": g, "colors": list(cols), "recursion": a, "oracle": b})
    return {"checked": checked, "mismatches": mismatches}


COMMANDS = {
    "fusion": _cmd_fusion,
    "dim": _cmd_dim,
    "twist": _cmd_twist,
    "props": _cmd_props,
    "embed": _cmd_embed,
    "truncate": _cmd_truncate,
    "h1": _cmd_h1,
    "certify": _cmd_certify,
    "oracle-check": _cmd_oracle,
}


def _error_object(exc: Exception) -> dict:
    err: dict[str, Any] = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SchemaError) and exc.pointer:
        err["pointer"] = exc.pointer
    if isinstance(exc, NotARepresentation) and exc.relator is not None:
        err["relator"] = exc.relator
    return {"error": err}


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(name)s: %(message)s")
    try:
        cfg = Config.load(os.environ.get("MFKIT_CONFIG"))
    except MfkitError as exc:
        _emit(_error_object(exc), "json", out)
        return 1
    fmt = args.format or cfg.format
    t0 = time.perf_counter()
    try:
        result = COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"mfkit {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except (MfkitError, ValueError, ZeroDivisionError, OSError) as exc:
        _emit(_error_object(exc), "json", out)
        return 1
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - t0)
    if result is not None:
        _emit(result, fmt, out)
    return 0


def run(argv: Sequence[str]) -> tuple[int, str]:
    """Run the CLI in-process and capture stdout."""
    buf = io.StringIO()
    with contextlib.redirect_stderr(io.StringIO()):
        code = main(list(argv), out=buf)
    return code, buf.getvalue()


def console() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console()

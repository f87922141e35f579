"""Command-line entry point.

Exit codes: 0 IN (or witness found), 1 OUT, 2 boundary/unknown/inconclusive,
3 input or usage error, 4 unsupported dual cone.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cones import member
from .emit import emit_csv, emit_svg
from .expr import ExprSyntaxError, catalog_tag
from .lattice import Answer, evaluate
from .slices import FIGURE_CLASSIFIERS, Grid, scan
from .verify import run as run_suite
from .witness import UnsupportedCone, certify_out
from .xcore import EXACT, NumericMode, Validity, XMatrix, load_xmatrix, pairing, resolve_mode, validate

EXIT_IN, EXIT_OUT, EXIT_UNDECIDED, EXIT_ERROR, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _mode(args, *mats: XMatrix) -> NumericMode:
    if args.mode == "exact":
        return EXACT
    if args.mode == "float" or args.tol is not None:
        return NumericMode(tol=args.tol if args.tol is not None else 1e-9)
    return resolve_mode(None, *mats)


def _num(x):
    return x if isinstance(x, (int, float)) or x is None else str(x)


def cmd_classify(args) -> int:
    m = load_xmatrix(args.state)
    mode = _mode(args, m)
    if validate(m, mode) is not Validity.STATE:
        raise UsageError(f"{args.state} does not describe a state")
    res = evaluate(m, args.cone, mode)
    tag = catalog_tag(res.expr)
    margin = member(m, tag, mode) if tag is not None else None
    if args.json:
        out = {
            "mode": str(mode),
            "cone": str(res.expr),
            "verdict": res.verdict.value,
            "boundary": res.boundary,
            "margin": _num(margin.margin) if margin else None,
            "binding": margin.binding if margin else None,
            "certificate": res.certificate.kind if res.certificate else None,
            "bounds": [str(t) for t in res.bounds],
        }
        if res.certificate and res.certificate.kind == "witness":
            out["witness"] = res.certificate.detail.to_json()
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        print(f"mode: {mode}")
        print(f"cone: {res.expr}")
        print(f"verdict: {res}")
        if margin is not None:
            print(f"margin: {margin.margin} [{margin.binding}]")
        if res.certificate is not None:
            print(f"certificate: {res.certificate.describe()}")
            if res.certificate.kind == "witness":
                w = res.certificate.detail
                print(f"pairing: {pairing(w.body, m, None if mode.exact else mode)}")
        if res.verdict is Answer.UNKNOWN and res.bounds:
            print("bounds tried: " + ", ".join(str(t) for t in res.bounds))
    if res.verdict is Answer.OUT:
        return EXIT_OUT
    if res.verdict is Answer.IN and not res.boundary:
        return EXIT_IN
    return EXIT_UNDECIDED


def cmd_witness(args) -> int:
    m = load_xmatrix(args.state)
    mode = _mode(args, m)
    w = certify_out(m, args.cone, mode)
    if w is None:
        if args.json:
            print(json.dumps({"mode": str(mode), "result": "inconclusive"}))
        else:
            print(f"mode: {mode}")
            print("inconclusive")
        return EXIT_UNDECIDED
    val = pairing(w.body, m, None if mode.exact else mode)
    out = {"mode": str(mode), "witness": w.to_json(), "pairing": _num(val)}
    if args.json:
        print(json.dumps(out, indent=2, ensure_ascii=False))
    else:
        print(f"mode: {mode}")
        print(f"witness {w.label} in {w.dual}:")
        print(json.dumps(w.to_json(), ensure_ascii=False))
        print(f"pairing: {val}")
    return EXIT_IN


def cmd_slice(args) -> int:
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    grid = Grid(args.grid)
    tbl = scan(grid, FIGURE_CLASSIFIERS[args.figure])
    if args.csv:
        Path(args.csv).write_bytes(emit_csv(tbl))
    if args.svg:
        Path(args.svg).write_bytes(emit_svg(tbl, args.figure))
    mism = tbl.mismatches()
    total = sum(mism.values())
    if args.json:
        print(json.dumps({
            "grid": args.grid,
            "figure": args.figure,
            "mismatches": {f"{a}~{b}": n for (a, b), n in mism.items()},
            "total": total,
        }, indent=2))
    else:
        print(f"grid {args.grid}x{args.grid}, figure {args.figure}, mode exact")
        for (a, b), n in mism.items():
            print(f"  {a} ~ {b}: {n} mismatches")
        print(f"mismatches: {total}")
    return EXIT_IN if total == 0 else EXIT_OUT


def cmd_verify(args) -> int:
    mode = EXACT if args.tol is None and args.mode != "float" else NumericMode(tol=args.tol or 1e-9)
    items = run_suite(mode, samples=args.samples, seed=args.seed)
    ok = all(i.passed for i in items)
    if args.json:
        print(json.dumps({"mode": str(mode), "passed": ok, "items": [i.to_json() for i in items]}, indent=2))
    else:
        print(f"mode: {mode}")
        for i in items:
            print(i.line())
        print("all passed" if ok else "FAILED")
    return EXIT_IN if ok else EXIT_OUT


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="partsep", description="Partial-separability cones of three-qubit X-states.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("exact", "float", "auto"), default="auto")
    common.add_argument("--tol", type=float, default=None, help="float tolerance (implies float mode under auto)")
    common.add_argument("--json", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("classify", parents=[common], help="decide membership of a state in a lattice word")
    c.add_argument("state", help="JSON state file")
    c.add_argument("--cone", required=True, help='lattice word, e.g. "A&(B|C)"')
    c.set_defaults(func=cmd_classify)

    w = sub.add_parser("witness", parents=[common], help="search a separating witness")
    w.add_argument("state")
    w.add_argument("--cone", required=True)
    w.set_defaults(func=cmd_witness)

    s = sub.add_parser("slice", parents=[common], help="scan the (s, t) plane")
    s.add_argument("--grid", type=int, default=401)
    s.add_argument("--csv")
    s.add_argument("--svg")
    s.add_argument("--figure", type=int, choices=(1, 2), default=1)
    s.set_defaults(func=cmd_slice)

    v = sub.add_parser("verify", parents=[common], help="run the counterexample suite")
    v.add_argument("--samples", type=int, default=200)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UnsupportedCone as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (UsageError, ExprSyntaxError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

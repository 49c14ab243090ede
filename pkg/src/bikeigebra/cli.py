"""Command-line entry point.

Exit status: 0 clean, 1 semantic failure (axiom violations, move mismatches,
oracle disagreement), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .algebra import AXIOM_LABELS, UNDEFINED, check_axiom, noncommuting_pairs, verify_all
from .blockmatrix import read_matrix
from .coloring import brute_force_count, count_colorings, list_colorings
from .diagram import parse_system
from .errors import BikeigebraError, NotVerifiedError
from .moves import MOVE_LABELS, check_all_moves
from .search import STAGES, ResourceError, SearchFilter, enumerate_all, iso_representatives

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _value(v):
    return None if v is UNDEFINED else v


def _dump(obj):
    print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load_system(path, fmt):
    return parse_system(Path(path).read_text(encoding="utf-8"), fmt)


def cmd_verify(args) -> int:
    X = read_matrix(args.matrix)
    if args.axiom:
        if args.axiom not in AXIOM_LABELS:
            raise _Usage(f"unknown axiom label {args.axiom!r}")
        found = check_axiom(X, args.axiom)
    else:
        found = verify_all(X)
    noncomm = noncommuting_pairs(X)
    if args.json:
        _dump({
            "matrix": str(args.matrix),
            "order": X.order,
            "status": "ok" if not found else "FAIL",
            "violations": [
                {"axiom": v.label, "witness": list(v.witness), "left": _value(v.left), "right": _value(v.right)}
                for v in found
            ],
            "commutative": not noncomm,
        })
    else:
        for v in found:
            print(v)
        print(f"order={X.order} violations={len(found)} status={'ok' if not found else 'FAIL'}")
        print(f"diagnostic commutative={'yes' if not noncomm else 'no'}")
    return EXIT_OK if not found else EXIT_FAIL


def _coloring_line(c) -> str:
    return ",".join(f"{k}={v}" for k, v in c.items())


def cmd_color(args) -> int:
    system = _load_system(args.system, args.format)
    X = read_matrix(args.matrix)
    verify = not args.no_verify
    try:
        count = count_colorings(system, X, verify=verify, workers=args.threads)
    except NotVerifiedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out = {"count": count}
    status = EXIT_OK
    if args.oracle:
        oracle = brute_force_count(system, X, verify=verify)
        out["oracle"] = oracle
        if oracle != count:
            print(f"error: oracle count {oracle} differs from count {count}", file=sys.stderr)
            status = EXIT_FAIL
    colorings = list_colorings(system, X, verify=verify, workers=args.threads) if args.list else None
    if args.json:
        if colorings is not None:
            out["colorings"] = colorings
        _dump(out)
    else:
        print(f"count={count}")
        if args.oracle:
            print(f"oracle={out['oracle']}")
        for c in colorings or []:
            print(_coloring_line(c))
    return status


def cmd_oracle(args) -> int:
    system = _load_system(args.system, args.format)
    X = read_matrix(args.matrix)
    try:
        count = brute_force_count(system, X, budget=args.budget, verify=not args.no_verify)
    except NotVerifiedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.json:
        _dump({"count": count, "method": "brute-force"})
    else:
        print(f"count={count}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        flt = SearchFilter(
            order=args.order,
            stage=args.stage,
            require_undefined=args.require_undefined,
            require_nontrivial_twist=args.require_twist,
            iso=args.iso,
            force=args.force,
        )
        raw = list(enumerate_all(replace(flt, iso=False), workers=args.threads))
    except (ValueError, ResourceError) as exc:
        raise _Usage(str(exc)) from exc
    reps = iso_representatives(raw)
    shown = reps if args.iso else raw
    summary = f"order={args.order} raw={len(raw)} iso={len(reps)}"
    if args.json:
        body = json.dumps(
            {"order": args.order, "stage": args.stage, "raw": len(raw), "iso": len(reps),
             "structures": [e.record() for e in shown]},
            sort_keys=True, separators=(",", ":"),
        ) + "\n"
    else:
        body = "\n".join(e.block() for e in shown)
    if args.out:
        Path(args.out).write_text(body, encoding="utf-8")
        print(summary)
    elif args.json:
        sys.stdout.write(body)
    else:
        if body:
            sys.stdout.write(body + "\n")
        print(summary)
    return EXIT_OK


def cmd_moves(args) -> int:
    X = read_matrix(args.matrix)
    labels = args.move or None
    if labels:
        unknown = [m for m in labels if m not in MOVE_LABELS]
        if unknown:
            raise _Usage(f"unknown move label(s): {', '.join(unknown)}; known: {' '.join(MOVE_LABELS)}")
    reports = check_all_moves(X, labels)
    if args.json:
        _dump({"matrix": str(args.matrix), "reports": [r.as_dict() for r in reports]})
    else:
        for r in reports:
            print(r.line())
            if args.verbose:
                for b, left, right in r.mismatches:
                    print(f"  boundary=({','.join(map(str, b))}) left={left} right={right}")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bikeigebra",
        description="Twisted virtual bikeigebras: axioms, census, coloring invariants, move checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check every axiom of a block-matrix structure")
    p.add_argument("matrix")
    p.add_argument("--axiom", metavar="LABEL", help="check a single axiom")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    fmt_help = "input format of SYSTEM (default: detect from the first token)"
    p = sub.add_parser("color", help="count colorings of a diagram or equation system")
    p.add_argument("system")
    p.add_argument("matrix")
    p.add_argument("--list", action="store_true", help="print every coloring")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.add_argument("--no-verify", action="store_true", help="color by a structure that fails the axioms")
    p.add_argument("--format", choices=["auto", "diagram", "equations"], default="auto", help=fmt_help)
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("oracle", help="brute-force coloring count")
    p.add_argument("system")
    p.add_argument("matrix")
    p.add_argument("--budget", type=int, default=None, help="max assignments (default $BIKEIGEBRA_BUDGET or 1e8)")
    p.add_argument("--no-verify", action="store_true")
    p.add_argument("--format", choices=["auto", "diagram", "equations"], default="auto", help=fmt_help)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("search", help="enumerate structures of a given order")
    p.add_argument("--order", type=int, required=True, metavar="N")
    p.add_argument("--stage", choices=STAGES, default="full")
    p.add_argument("--iso", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--require-undefined", action="store_true", help="keep products with an undefined cell")
    p.add_argument("--require-twist", action="store_true", help="keep non-identity twist maps")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--force", action="store_true", help="allow orders above the built-in bound")
    p.add_argument("--threads", type=int, default=1, metavar="N")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("moves", help="check the coloring bijection for every move")
    p.add_argument("matrix")
    p.add_argument("--move", action="append", metavar="LABEL", help="restrict to a move (repeatable)")
    p.add_argument("--verbose", action="store_true", help="list mismatching boundary colorings")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_moves)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BikeigebraError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

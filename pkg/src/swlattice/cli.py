"""Batch command-line interface.

Exit codes, used consistently across commands:

    0  pass / success
    1  verification failure or nothing found
    2  parse, file, or configuration error
    3  divergence notice (eval)
    4  undecided within fuel (distinguished from failure)

Output contains no timestamps; identical invocations print identical bytes.
Timing is available behind --timing on the suite command.
"""

from __future__ import annotations

import argparse
import json
import sys

from .bits import Diverged, prefix
from .approx import dump_members
from .exprs import ParseError, parse_stream
from .harness import (
    BoundsTooLarge,
    SearchBounds,
    VerifyConfig,
    brute_force_search,
    run_suite,
    verify_witness,
)
from .textio import parse_problem_file, parse_witness_file, print_witness_file

PASS, FAIL, ERROR, DIVERGED, UNKNOWN = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise SystemExit2(f"cannot read {path}: {exc.strerror}")


class SystemExit2(Exception):
    """File or parse problem: exit code 2 with a message."""


def cmd_eval(args) -> int:
    stream = parse_stream(args.expression)
    bits = prefix(stream, args.bits, args.fuel)
    if isinstance(bits, Diverged):
        print(f"diverged within fuel {args.fuel}")
        return DIVERGED
    print(bits)
    return PASS


def cmd_approx(args) -> int:
    stream = parse_stream(args.expression)
    members = dump_members(stream, args.members, args.fuel)
    for n, s, i in members:
        print(f"{n} {s} {i}")
    if len(members) < args.members:
        print(f"# no member found for index {len(members)} within fuel")
        return DIVERGED
    return PASS


def cmd_check(args) -> int:
    problems = parse_problem_file(_read(args.problems))
    witnesses = parse_witness_file(_read(args.witness))
    cfg = VerifyConfig(depth=args.depth, fuel=args.fuel)
    worst = PASS
    for name, w in witnesses.items():
        if w.source not in problems or w.target not in problems:
            raise SystemExit2(f"witness {name} references unknown problems")
        report = verify_witness(w, problems[w.source], problems[w.target], cfg)
        print(f"{name}:")
        print(report.to_text())
        code = {"pass": PASS, "fail": FAIL, "unknown": UNKNOWN}[report.verdict]
        worst = max(worst, code)
    return worst


def cmd_suite(args) -> int:
    cfg = VerifyConfig()
    if args.config:
        try:
            raw = json.loads(_read(args.config))
            cfg = VerifyConfig(**raw)
        except (json.JSONDecodeError, TypeError) as exc:
            raise SystemExit2(f"bad config: {exc}")
    if args.depth is not None:
        cfg.depth = args.depth
    if args.fuel is not None:
        cfg.fuel = args.fuel
    summary = run_suite(cfg)
    print(summary.to_json() if args.json else summary.to_text(show_timing=args.timing))
    if args.report:
        with open(args.report, "w", encoding="utf-8") as handle:
            handle.write(summary.to_json() + "\n")
    return {
        "pass": PASS,
        "fail": FAIL,
        "unknown": UNKNOWN,
        "nothing_to_check": ERROR,
    }[summary.verdict]


def cmd_search(args) -> int:
    problems = parse_problem_file(_read(args.problems))
    if args.source not in problems or args.target not in problems:
        raise SystemExit2("source or target not defined in the problem file")
    bounds = SearchBounds(args.use_bound, args.stage_bound, args.output_depth)
    cfg = VerifyConfig(depth=args.depth, fuel=args.fuel)
    try:
        outcome = brute_force_search(problems[args.source], problems[args.target], args.kind, bounds, cfg)
    except BoundsTooLarge as exc:
        raise SystemExit2(str(exc))
    if outcome.found:
        print(print_witness_file({"found": outcome.witness}), end="")
        return PASS
    print(f"none within bounds (tried {outcome.tried} table pairs)")
    return FAIL


def cmd_print_witness(args) -> int:
    witnesses = parse_witness_file(_read(args.witness))
    print(print_witness_file(witnesses), end="")
    return PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="swlattice", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="print a prefix of a stream expression")
    p.add_argument("expression")
    p.add_argument("--bits", type=int, default=32)
    p.add_argument("--fuel", type=int, default=10**6)
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("approx", help="dump members of an approximation stream as 'n s i' lines")
    p.add_argument("expression")
    p.add_argument("--members", type=int, default=8)
    p.add_argument("--fuel", type=int, default=10**6)
    p.set_defaults(fn=cmd_approx)

    p = sub.add_parser("check", help="verify witnesses from a file against named problems")
    p.add_argument("--problems", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("--depth", type=int, default=48)
    p.add_argument("--fuel", type=int, default=10**6)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("suite", help="run the acceptance suite on the built-in corpus")
    p.add_argument("--config", help="JSON file with VerifyConfig fields")
    p.add_argument("--depth", type=int)
    p.add_argument("--fuel", type=int)
    p.add_argument("--json", action="store_true")
    p.add_argument("--timing", action="store_true")
    p.add_argument("--report", help="write the JSON summary to this file")
    p.set_defaults(fn=cmd_suite)

    p = sub.add_parser("search", help="bounded brute-force search for a reduction witness")
    p.add_argument("--problems", required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--kind", choices=("sW", "W"), default="sW")
    p.add_argument("--use-bound", type=int, required=True)
    p.add_argument("--stage-bound", type=int, required=True)
    p.add_argument("--output-depth", type=int, required=True)
    p.add_argument("--depth", type=int, default=48)
    p.add_argument("--fuel", type=int, default=10**6)
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("print-witness", help="parse and canonically reprint a witness file")
    p.add_argument("--witness", required=True)
    p.set_defaults(fn=cmd_print_witness)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, SystemExit2, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())

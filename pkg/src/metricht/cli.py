"""Command-line front end.

Subcommands: check, models, equiv, rewrite, translate, qht.  Exit codes are
a stable contract: 0 for success or an affirmative verdict, 1 for a negative
verdict or a pass precondition failure, 2 for parse/usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fom
from .equilibrium import bounded_equiv, enumerate_equilibrium
from .parser import ParseError, parse_formula, parse_theory
from .rewrite import PASSES, range_split
from .semantics import is_model, mht_sat
from .syntax import Theory, format_formula
from .traces import (EnumerationBounds, enumerate_total_traces, make_alphabet,
                     trace_from_json, trace_to_json)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _load_theory(path: str) -> Theory:
    return parse_theory(_read(path), name=path)


def _load_trace(path: str):
    return trace_from_json(json.loads(_read(path)))


def _bounds(args, theories) -> EnumerationBounds:
    atoms = set()
    for theory in theories:
        atoms.update(theory.atoms())
    if args.alphabet:
        atoms.update(a.strip() for a in args.alphabet.split(",") if a.strip())
    max_time = args.max_time if args.max_time is not None else max(args.max_len - 1, 0)
    return EnumerationBounds(make_alphabet(atoms), args.max_len, max_time,
                             strict_only=not args.non_strict,
                             exact_len=getattr(args, "exact_len", False))


def _add_bounds_flags(sub, with_exact=False):
    sub.add_argument("--max-len", type=int, required=True, help="largest trace length")
    sub.add_argument("--max-time", type=int, default=None,
                     help="largest final time stamp (default: max-len - 1)")
    sub.add_argument("--non-strict", action="store_true",
                     help="allow repeated time stamps in the searched traces")
    sub.add_argument("--alphabet", default="",
                     help="extra atoms, comma separated (default: the theory's atoms)")
    if with_exact:
        sub.add_argument("--exact-len", action="store_true",
                         help="search only traces of exactly max-len states")


def cmd_check(args) -> int:
    theory = _load_theory(args.theory)
    trace, _ = _load_trace(args.trace)
    if not 0 <= args.at < trace.length:
        raise ValueError(f"state index {args.at} out of range")
    failing = None
    for i, phi in enumerate(theory.formulas, start=1):
        ok = mht_sat(trace, args.at, phi)
        print(f"formula {i}: {'SAT' if ok else 'UNSAT'}")
        if not ok and failing is None:
            failing = i
    print("SAT" if failing is None else f"UNSAT(formula {failing})")
    return 0 if failing is None else 1


def cmd_models(args) -> int:
    theory = _load_theory(args.theory)
    bounds = _bounds(args, [theory])
    if args.equilibrium:
        models = enumerate_equilibrium(theory, bounds)
    else:
        models = [t for t in enumerate_total_traces(bounds) if is_model(t, theory)]
    for trace in models:
        print(json.dumps(trace_to_json(trace, bounds.alphabet)))
    print(f"{len(models)} model{'' if len(models) == 1 else 's'}")
    return 0


def cmd_equiv(args) -> int:
    left, right = _load_theory(args.left), _load_theory(args.right)
    verdict = bounded_equiv(left, right, _bounds(args, [left, right]))
    if verdict.equivalent:
        print("EQUIVALENT (within bounds)")
        return 0
    trace, index, side = verdict.counterexample
    print(f"NOT EQUIVALENT: formula {index + 1} of the {side} theory fails on")
    print(json.dumps(trace_to_json(trace)))
    return 1


def cmd_rewrite(args) -> int:
    phi = parse_formula(args.formula)
    name = getattr(args, "pass_name")
    try:
        if name.startswith("split:"):
            result = range_split(phi, int(name.split(":", 1)[1]))
        elif name in PASSES:
            result = PASSES[name](phi)
        else:
            print(f"unknown pass {name!r}; choose from "
                  f"{', '.join(sorted(PASSES))}, split:<i>", file=sys.stderr)
            return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(format_formula(result))
    return 0


def cmd_translate(args) -> int:
    phi = parse_formula(args.formula)
    try:
        sentence = fom.translate(phi, args.at)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if not args.raw:
        sentence = fom.simplify_fom(sentence)
    print(fom.format_fom(sentence))
    return 0


def cmd_qht(args) -> int:
    sentence = fom.parse_fom(_read(args.sentence))
    interp = fom.interpretation_from_json(json.loads(_read(args.interp)))
    if args.equilibrium:
        if not fom.qht_sat(fom.QHTInterpretation(interp.domain, interp.there, interp.there),
                           sentence):
            print("NON-EQ (the there-world is not a model)")
            return 1
        witness = fom.first_smaller_model(interp.domain, interp.there, sentence)
        if witness is None:
            print("EQ")
            return 0
        print("NON-EQ witness " + json.dumps(sorted(f"{p}({t})" for p, t in witness)))
        return 1
    ok = fom.qht_sat(interp, sentence)
    print("SAT" if ok else "UNSAT")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metricht",
        description="Interval-indexed temporal reasoning over timed traces")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate a theory on a trace")
    p.add_argument("theory")
    p.add_argument("trace")
    p.add_argument("--at", type=int, default=0, help="state index (default 0)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("models", help="list bounded models as JSON lines")
    p.add_argument("theory")
    _add_bounds_flags(p, with_exact=True)
    p.add_argument("--equilibrium", action="store_true",
                   help="keep only equilibrium models")
    p.set_defaults(fn=cmd_models)

    p = sub.add_parser("equiv", help="compare two theories over a bounded space")
    p.add_argument("left")
    p.add_argument("right")
    _add_bounds_flags(p)
    p.set_defaults(fn=cmd_equiv)

    p = sub.add_parser("rewrite", help="apply a formula transformation")
    p.add_argument("--formula", required=True)
    p.add_argument("--pass", dest="pass_name", required=True,
                   help="unf, unary, demorgan, dual, swap, onestep or split:<i>")
    p.set_defaults(fn=cmd_rewrite)

    p = sub.add_parser("translate", help="print the first-order translation")
    p.add_argument("--formula", required=True)
    p.add_argument("--at", type=int, default=0, help="anchor time point (default 0)")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--raw", action="store_true", help="skip simplification")
    group.add_argument("--simplified", action="store_true", help="simplify (default)")
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("qht", help="evaluate a first-order sentence in an interpretation")
    p.add_argument("--sentence", required=True, help="path to the sentence file")
    p.add_argument("--interp", required=True, help="path to the interpretation JSON")
    p.add_argument("--equilibrium", action="store_true",
                   help="also check here-world minimality")
    p.set_defaults(fn=cmd_qht)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, fom.FOMParseError, ValueError, OSError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

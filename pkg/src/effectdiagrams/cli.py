"""Command-line front end.

Four subcommands: ``eval`` runs a program and prints the resulting
monadic value, ``diagram`` prints its effect/value presentation,
``compose`` plugs machine-format presentation files together, and
``laws`` runs the executable law suite.

Programs are given literally or as ``@path``.  Exit codes: 2 for a
syntax error, 3 for an operation that does not fit the chosen monad,
4 for a composition arity mismatch, 1 for unmet law expectations.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import presentations, serialize
from .lang import (EvalError, ParseError, SignatureError, default_defs,
                   eval_diagram, evaluate, parse, parse_defs)
from .lawcheck import (ALL_LAWS, LawSuiteConfig, default_kinds,
                       run_law_suite)
from .algebra import seq_compose
from .monads import (ArityError, DIST, KindError, MAYBE, MonadKind,
                     POWERSET, exception_kind, output_kind, state_kind)
from .presentations import ArityCapError, render

MONAD_TAGS = ("maybe", "exc", "set", "dist", "state", "output")


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("-m", "--monad", choices=MONAD_TAGS, default="maybe")
    sub.add_argument("--exceptions", default="err",
                     help="comma-separated labels for the exc monad")
    sub.add_argument("--locations", default="l0,l1",
                     help="comma-separated locations for the state monad")
    sub.add_argument("--alphabet", default="ab",
                     help="characters for the output monad")
    sub.add_argument("-f", "--fuel", type=int, default=32)
    sub.add_argument("--format", choices=("text", "machine"),
                     default="text")
    sub.add_argument("--prelude", default=None,
                     help="extra definitions file (name = term per line)")
    sub.add_argument("--seed", type=int, default=1)


def _kind_for(tag: str, args) -> MonadKind:
    if tag == "maybe":
        return MAYBE
    if tag == "exc":
        return exception_kind(tuple(args.exceptions.split(",")))
    if tag == "set":
        return POWERSET
    if tag == "dist":
        return DIST
    if tag == "state":
        return state_kind(tuple(args.locations.split(",")))
    if tag == "output":
        return output_kind(tuple(args.alphabet))
    raise KindError(f"unknown monad tag {tag!r}")


def _load_program(spec: str) -> str:
    if spec.startswith("@"):
        with open(spec[1:], encoding="utf-8") as handle:
            return handle.read()
    return spec


def _parse_program(args) -> tuple:
    kind = _kind_for(args.monad, args)
    defs = default_defs(kind=kind)
    if args.prelude:
        with open(args.prelude, encoding="utf-8") as handle:
            defs.update(parse_defs(handle.read(), kind=kind))
    term = parse(_load_program(args.program), kind=kind, defs=defs)
    return kind, term


def _cmd_eval(args) -> int:
    kind, term = _parse_program(args)
    value = evaluate(term, kind, args.fuel)
    if args.format == "machine":
        print(serialize.dumps(value))
    else:
        print(serialize.render_value(value))
    return 0


def _cmd_diagram(args) -> int:
    kind, term = _parse_program(args)
    pres = eval_diagram(term, kind, args.fuel)
    print(render(pres, args.format))
    return 0


def _cmd_compose(args) -> int:
    loaded = []
    for path in args.files:
        with open(path, encoding="utf-8") as handle:
            loaded.append(presentations.from_obj(json.load(handle)))
    outer, family = loaded[0], loaded[1:]
    try:
        result = seq_compose(outer, family)
    except ArityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    print(render(result, args.format))
    return 0


def _cmd_laws(args) -> int:
    if args.monads:
        kinds = tuple(_kind_for(tag.strip(), args)
                      for tag in args.monads.split(",") if tag.strip())
    else:
        kinds = default_kinds()
    if args.laws is None:
        laws = ALL_LAWS
    else:
        laws = tuple(name.strip()
                     for name in args.laws.split(",") if name.strip())
    cfg = LawSuiteConfig(seed=args.seed, trials=args.trials,
                         carrier_size_max=args.carrier_max,
                         arity_max=args.arity_max,
                         monads=kinds, laws=laws)
    report = run_law_suite(cfg)
    if args.format == "machine":
        print(json.dumps(report.to_obj(), ensure_ascii=False))
    else:
        print(f"{'law':<15}{'monad':<8}{'result':<8}expected")
        for res in report.results:
            verdict = "pass" if res.passed else "fail"
            wanted = "pass" if res.expected_pass else "fail"
            marker = "" if res.as_expected else "   <-- unexpected"
            print(f"{res.law:<15}{res.monad.tag:<8}{verdict:<8}"
                  f"{wanted}{marker}")
            if res.counterexample is not None:
                shown = json.dumps(res.to_obj()["counterexample"],
                                   ensure_ascii=False)
                if len(shown) > 160:
                    shown = shown[:157] + "..."
                print(f"    counterexample: {shown}")
        status = "met" if report.ok else "NOT met"
        print(f"expectations {status} (seed={report.seed})")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="effdiag",
        description="Evaluate effectful programs and work with their "
                    "effect/value presentations.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate a program")
    _add_common(p_eval)
    p_eval.add_argument("program", help="source text, or @file")
    p_eval.set_defaults(func=_cmd_eval)

    p_diag = subs.add_parser("diagram",
                             help="evaluate and print the presentation")
    _add_common(p_diag)
    p_diag.add_argument("program", help="source text, or @file")
    p_diag.set_defaults(func=_cmd_diagram)

    p_comp = subs.add_parser(
        "compose",
        help="sequentially compose presentation files (outer first)")
    _add_common(p_comp)
    p_comp.add_argument("files", nargs="+",
                        help="machine-format presentation files")
    p_comp.set_defaults(func=_cmd_compose)

    p_laws = subs.add_parser("laws", help="run the law suite")
    _add_common(p_laws)
    p_laws.add_argument("--trials", type=int, default=50)
    p_laws.add_argument("--laws", default=None,
                        help="comma-separated law identifiers")
    p_laws.add_argument("--monads", default=None,
                        help="comma-separated monad tags")
    p_laws.add_argument("--carrier-max", type=int, default=4)
    p_laws.add_argument("--arity-max", type=int, default=4)
    p_laws.set_defaults(func=_cmd_laws)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (SignatureError, KindError) as exc:
        print(f"signature error: {exc}", file=sys.stderr)
        return 3
    except (EvalError, ArityCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

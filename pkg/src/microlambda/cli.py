"""``mlc``: command-line front end.

Exit status: 0 on success (a fuel-exhausted run is a success), 1 on usage or
parse errors, 2 when a check suite reports failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from ._deep import deep
from .beta import Verdict, beta_convertible, full_development
from .distributive import INNER_SPINE, STRATEGIES, UnknownStrategy, reduce
from .harness import CHECKS, GenConfig, search_divergence_witness_report
from .lambdax import XFuelExhausted, explicify, x_reduce
from .syntax import ParseError, parse, parse_x, print_term
from .terms import App, BoundVar, FreeVar, Lam
from .lambdax import Sub
from .traces import trace_to_json, x_trace_to_json

DEFAULT_FUEL = 10_000


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_fuel() -> int:
    raw = os.environ.get("MLC_DEFAULT_FUEL")
    if raw is None:
        return DEFAULT_FUEL
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"MLC_DEFAULT_FUEL must be a natural number, got {raw!r}")
    if value < 0:
        raise UsageError("MLC_DEFAULT_FUEL must be a natural number")
    return value


def _natural(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("expected a natural number")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("plain", "json"), default="plain")
    common.add_argument("--fuel", type=_natural, default=None, help="step budget (default 10000 or $MLC_DEFAULT_FUEL)")
    common.add_argument("--trace", action="store_true", help="include per-step terms")

    parser = _Parser(prog="mlc", description="Micro λ-calculus: distributive reduction and its projections")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("normalize", parents=[common], help="reduce a term with a strategy")
    p.add_argument("term", nargs="?", help="term text (default: standard input)")
    p.add_argument("--strategy", default=INNER_SPINE, help=f"one of: {', '.join(STRATEGIES)}")

    for name, text in (("develop", "full β-development"), ("explicify", "explicification into λx")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("term", nargs="?")

    p = sub.add_parser("x-normalize", parents=[common], help="x-normalize a λx term")
    p.add_argument("term", nargs="?")
    p.add_argument("--from-term", action="store_true", help="explicify a pure term first")

    p = sub.add_parser("eq", parents=[common], help="α-equivalence and β-convertibility")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("parse", parents=[common], help="term text to de Bruijn JSON")
    p.add_argument("term", nargs="?")

    p = sub.add_parser("print", parents=[common], help="de Bruijn JSON to term text")
    p.add_argument("json", nargs="?")

    p = sub.add_parser("check", parents=[common], help="run property check suites")
    p.add_argument("suites", nargs="*", help=f"any of: {', '.join(CHECKS)} (default: all)")
    p.add_argument("--count", type=_natural, default=None)
    p.add_argument("--seed", type=_seed, default=0)
    p.add_argument("--max-size", type=_natural, default=GenConfig.max_size)
    p.add_argument("--closed", action="store_true", help="generate closed terms only")

    p = sub.add_parser("search-witness", parents=[common], help="search for a term on which naive distribution diverges")
    p.add_argument("--max-size", type=_natural, default=14)
    p.add_argument("--time-budget", type=float, default=None, help="seconds")
    return parser


# -- de Bruijn JSON -----------------------------------------------------------


def term_to_data(t):
    if isinstance(t, BoundVar):
        return {"bvar": t.index}
    if isinstance(t, FreeVar):
        return {"fvar": t.name}
    if isinstance(t, Lam):
        return {"lam": term_to_data(t.body)}
    if isinstance(t, App):
        return {"app": [term_to_data(t.fun), term_to_data(t.arg)]}
    return {"sub": [term_to_data(t.body), term_to_data(t.subst)]}


def data_to_term(d):
    try:
        (kind, value), = d.items()
    except (AttributeError, ValueError):
        raise UsageError(f"not a term node: {d!r}")
    if kind == "bvar" and isinstance(value, int) and value >= 0:
        return BoundVar(value)
    if kind == "fvar" and isinstance(value, str) and value:
        return FreeVar(value)
    if kind == "lam":
        return Lam(data_to_term(value))
    if kind in ("app", "sub") and isinstance(value, list) and len(value) == 2:
        a, b = data_to_term(value[0]), data_to_term(value[1])
        return App(a, b) if kind == "app" else Sub(a, b)
    raise UsageError(f"not a term node: {d!r}")


# -- commands -------------------------------------------------------------------


def _read(text: Optional[str]) -> str:
    if text is None or text == "-":
        return sys.stdin.read()
    return text


def _emit(args, payload: dict, plain: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(plain)


def _plain_steps(doc: dict) -> List[str]:
    lines = []
    for step in doc["steps"]:
        path = "[" + ", ".join(step["path"]) + "]"
        line = f"{step['index'] + 1:>5}  {step['rule']:<10} {path}"
        if "term" in step:
            line += f"  {step['term']}"
        lines.append(line)
    return lines


def cmd_normalize(args) -> int:
    term = parse(_read(args.term))
    fuel = default_fuel() if args.fuel is None else args.fuel
    trace = reduce(term, args.strategy, fuel)
    doc = trace_to_json(trace, with_terms=args.trace)
    lines = _plain_steps(doc) if args.trace else []
    lines.append(doc["result"])
    lines.append(f"# {doc['status']} after {len(trace.steps)} steps [{' '.join(trace.rules())}]")
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_develop(args) -> int:
    term = parse(_read(args.term))
    result = print_term(full_development(term))
    _emit(args, {"input": print_term(term), "result": result}, result)
    return 0


def cmd_explicify(args) -> int:
    term = parse(_read(args.term))
    result = print_term(explicify(term))
    _emit(args, {"input": print_term(term), "result": result}, result)
    return 0


def cmd_x_normalize(args) -> int:
    text = _read(args.term)
    xterm = explicify(parse(text)) if args.from_term else parse_x(text)
    doc = x_trace_to_json(xterm, x_reduce(xterm, args.fuel), with_terms=args.trace)
    lines = _plain_steps(doc) if args.trace else []
    lines += [doc["result"], f"# x-normal form after {len(doc['steps'])} steps"]
    _emit(args, doc, "\n".join(lines))
    return 0


def cmd_eq(args) -> int:
    a, b = parse(args.left), parse(args.right)
    fuel = 1_000 if args.fuel is None else args.fuel
    alpha = a == b
    verdict = Verdict.YES if alpha else beta_convertible(a, b, fuel)
    payload = {"alpha": alpha, "convertible": verdict.value}
    _emit(args, payload, f"alpha-equivalent: {'yes' if alpha else 'no'}\nβ-convertible: {verdict.value}")
    return 0


def cmd_parse(args) -> int:
    term = parse(_read(args.term))
    print(json.dumps(term_to_data(term)))
    return 0


def cmd_print(args) -> int:
    try:
        data = json.loads(_read(args.json))
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}")
    print(print_term(data_to_term(data)))
    return 0


def cmd_check(args) -> int:
    suites = args.suites or list(CHECKS)
    unknown = [s for s in suites if s not in CHECKS]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; expected any of {', '.join(CHECKS)}")
    config = GenConfig(max_size=args.max_size, seed=args.seed, closed_only=args.closed)
    reports = []
    for name in suites:
        kwargs = {} if args.count is None else {"n": args.count}
        if name == "normalization" and args.fuel is not None:
            kwargs["beta_fuel"] = args.fuel
        reports.append(CHECKS[name](config, **kwargs))
    payload = {
        "config": {
            "max_size": config.max_size,
            "seed": config.seed,
            "free_name_pool": list(config.free_name_pool),
            "closed_only": config.closed_only,
        },
        "reports": [r.to_dict() for r in reports],
    }
    lines = []
    for r in reports:
        lines.append(r.summary())
        for f in r.failures[:10]:
            lines.append(f"  #{f.index} {f.term}\n      {f.diagnostic}")
    _emit(args, payload, "\n".join(lines))
    return 0 if all(r.ok for r in reports) else 2


def cmd_search_witness(args) -> int:
    fuel = 2_000 if args.fuel is None else args.fuel
    outcome = search_divergence_witness_report(args.max_size, fuel, time_budget=args.time_budget)
    payload = {"max_size": args.max_size, "fuel": fuel, **outcome.to_dict()}
    if outcome.witness is None:
        plain = f"no witness up to size {args.max_size} (candidates: {outcome.candidates})"
    else:
        plain = (
            f"{payload['witness']}\n"
            f"# leftmost-outermost-dist: fuel-exhausted after {fuel} steps\n"
            f"# inner-spine: normal-form {payload['inner-spine']['result']} "
            f"after {payload['inner-spine']['steps']} steps"
        )
    if outcome.inconclusive:
        plain += f"\n# inconclusive (outgrew node budget): {len(outcome.inconclusive)}"
    _emit(args, payload, plain)
    return 0


COMMANDS = {
    "normalize": cmd_normalize,
    "develop": cmd_develop,
    "explicify": cmd_explicify,
    "x-normalize": cmd_x_normalize,
    "eq": cmd_eq,
    "parse": cmd_parse,
    "print": cmd_print,
    "check": cmd_check,
    "search-witness": cmd_search_witness,
}


@deep
def run_cli(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"mlc: {exc}", file=sys.stderr)
        return 1
    except ParseError as exc:
        print(f"mlc: parse error: {exc}", file=sys.stderr)
        return 1
    except UnknownStrategy as exc:
        print(f"mlc: {exc}", file=sys.stderr)
        return 1
    except XFuelExhausted as exc:
        print(f"mlc: internal error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()

"""Command-line front end.

Usage:  igc --dim N [--max-degree D] [--seed S] [--format text|json]
            [--script FILE] <command> [args...]

Commands:
  bracket (free|lie) E1 E2      bracket of two field elements
  act PERM (free|lie) E         apply a word of adjacent swaps, e.g. PERM=0,1,0
  cup E1 E2 | compose E1 E2     products of k-fields
  sdiff E1 E2 I J               strong difference over the pair (I, J)
  face E I                      face map
  homotopy E I J                homotopy of the (I, J) swap pair
  trivial? E                    trivial-homotopy test with witness
  reduce E                      cohomology class as a polyvector
  wedge P Q | schouten P Q      polyvector operations
  let NAME = EXPR               bind a name (scripts and shared sessions)
  check [--max-degree D] [--seed S] [--only NAME] [--invert NAME]

Exit codes: 0 ok, 1 usage or parse error, 2 violated precondition,
3 check failures.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
from dataclasses import dataclass

from .chart_algebra import ChartSpec, Poly
from .checks import run_suite
from .errors import DomainError
from .free_lr import FreeLRElem, free_bracket, lie_bracket_ext
from .groupoid import (
    KField,
    act,
    compose,
    cup,
    face,
    homotopy,
    is_trivial_homotopy,
    reduce_to_polyvector,
    strong_diff,
)
from .parsing import (
    ParseError,
    Session,
    as_elem,
    as_kfield,
    as_pv,
    parse_expression,
)
from .polyvector import Polyvector, schouten, wedge


class UsageError(Exception):
    pass


@dataclass
class CommandOutcome:
    text: str
    payload: object
    code: int = 0


def _value_json(value):
    if isinstance(value, (FreeLRElem, KField, Polyvector)):
        return value.to_json()
    if isinstance(value, Poly):
        return str(value)
    return value


def _subset_str(phi) -> str:
    return "{" + ",".join(map(str, sorted(phi))) + "}"


def _parse(session: Session, src: str):
    return parse_expression(src, session)


def _need(argv, n, usage):
    if len(argv) != n:
        raise UsageError(f"usage: {usage}")


def _int_arg(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"expected an integer, got {text!r}") from None


def run_command(argv: list[str], session: Session) -> CommandOutcome:
    """Execute one parsed command against the session."""
    if not argv:
        raise UsageError("no command given")
    cmd, args = argv[0], argv[1:]
    chart = session.chart

    if cmd == "bracket":
        _need(argv, 4, "bracket (free|lie) E1 E2")
        flavor = args[0]
        if flavor not in ("free", "lie"):
            raise UsageError("bracket flavor must be 'free' or 'lie'")
        u = as_elem(_parse(session, args[1]), chart)
        v = as_elem(_parse(session, args[2]), chart)
        result = free_bracket(u, v) if flavor == "free" else lie_bracket_ext(u, v)
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "act":
        _need(argv, 4, "act PERM (free|lie) E")
        try:
            word = [int(t) for t in args[0].split(",") if t != ""]
        except ValueError:
            raise UsageError(f"bad swap word {args[0]!r}; use comma-separated indices") from None
        if args[1] not in ("free", "lie"):
            raise UsageError("act flavor must be 'free' or 'lie'")
        nu = as_kfield(_parse(session, args[2]), chart)
        result = act(word, nu, args[1])
        return CommandOutcome(str(result), _value_json(result))

    if cmd in ("cup", "compose"):
        _need(argv, 3, f"{cmd} E1 E2")
        mu = as_kfield(_parse(session, args[0]), chart)
        nu = as_kfield(_parse(session, args[1]), chart)
        result = cup(mu, nu) if cmd == "cup" else compose(mu, nu)
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "sdiff":
        _need(argv, 5, "sdiff E1 E2 I J")
        mu = as_kfield(_parse(session, args[0]), chart)
        nu = as_kfield(_parse(session, args[1]), chart)
        result = strong_diff(mu, nu, (_int_arg(args[2]), _int_arg(args[3])))
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "face":
        _need(argv, 3, "face E I")
        nu = as_kfield(_parse(session, args[0]), chart)
        result = face(nu, _int_arg(args[1]))
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "homotopy":
        _need(argv, 4, "homotopy E I J")
        nu = as_kfield(_parse(session, args[0]), chart)
        result = homotopy(nu, _int_arg(args[1]), _int_arg(args[2]))
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "trivial?":
        _need(argv, 2, "trivial? E")
        nu = as_kfield(_parse(session, args[0]), chart)
        ok, witness = is_trivial_homotopy(nu)
        if ok:
            return CommandOutcome("true", {"trivial": True, "witness": None})
        i, j, phi, psi = witness
        text = f"false  witness: ({i},{j},{_subset_str(phi)},{_subset_str(psi)})"
        payload = {"trivial": False, "witness": [i, j, sorted(phi), sorted(psi)]}
        return CommandOutcome(text, payload)

    if cmd == "reduce":
        _need(argv, 2, "reduce E")
        nu = as_kfield(_parse(session, args[0]), chart)
        result = reduce_to_polyvector(nu)
        return CommandOutcome(str(result), _value_json(result))

    if cmd in ("wedge", "schouten"):
        _need(argv, 3, f"{cmd} P Q")
        p = as_pv(_parse(session, args[0]), chart)
        q = as_pv(_parse(session, args[1]), chart)
        result = wedge(p, q) if cmd == "wedge" else schouten(p, q)
        return CommandOutcome(str(result), _value_json(result))

    if cmd == "let":
        if len(args) < 3 or args[1] != "=":
            raise UsageError("usage: let NAME = EXPR")
        name = args[0]
        if not name.isidentifier():
            raise UsageError(f"bad binding name {name!r}")
        session.bindings[name] = _parse(session, " ".join(args[2:]))
        return CommandOutcome("", None)

    if cmd == "check":
        return _run_check(args, session)

    raise UsageError(f"unknown command {cmd!r}")


def _run_check(args: list[str], session: Session) -> CommandOutcome:
    seed = session.seed
    max_degree = session.chart.max_degree
    only = invert = None
    it = iter(args)
    for flag in it:
        if flag == "--max-degree":
            max_degree = _int_arg(next(it, ""))
        elif flag == "--seed":
            seed = _int_arg(next(it, ""))
        elif flag == "--only":
            only = next(it, None)
        elif flag == "--invert":
            invert = next(it, None)
        else:
            raise UsageError(f"unknown check flag {flag!r}")
    try:
        reports = run_suite(seed=seed, max_degree=max_degree, only=only, invert=invert)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = []
    for r in reports:
        if r.passed:
            lines.append(f"ok {r.name} ({r.cases} cases)")
        else:
            first = r.failures[0]
            lines.append(f"FAIL {r.name}: {len(r.failures)} failure(s); first: {first}")
    failed = sum(not r.passed for r in reports)
    lines.append("all checks passed" if not failed else f"{failed} check(s) failed")
    payload = {"passed": failed == 0, "reports": [r.to_json() for r in reports]}
    return CommandOutcome("\n".join(lines), payload, 3 if failed else 0)


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(
        prog="igc",
        description="Exact calculator for iterated tangent fields and their cohomology.",
    )
    parser.add_argument("--dim", type=int, required=True, help="chart dimension n")
    parser.add_argument("--max-degree", type=int, default=4, dest="max_degree",
                        help="bracket-length cutoff (default 4)")
    parser.add_argument("--seed", type=int, default=0, help="seed for check sampling")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--script", help="run commands from a file, one per line")
    parser.add_argument("command", nargs=argparse.REMAINDER, help="command and arguments")
    return parser


def _emit(outcome: CommandOutcome, fmt: str):
    if fmt == "json":
        print(json.dumps(outcome.payload))
    elif outcome.text:
        print(outcome.text)


def main(argv: list[str] | None = None) -> int:
    opts = _build_parser().parse_args(argv)
    try:
        chart = ChartSpec(opts.dim, opts.max_degree)
    except DomainError as exc:
        print(f"igc: error: {exc}", file=sys.stderr)
        return 1
    session = Session(chart, fmt=opts.format, seed=opts.seed)

    def run_one(tokens: list[str]) -> int:
        try:
            outcome = run_command(tokens, session)
        except UsageError as exc:
            print(f"igc: {exc}", file=sys.stderr)
            return 1
        except ParseError as exc:
            print(f"igc: parse error: {exc}", file=sys.stderr)
            return 1
        except DomainError as exc:
            print(f"igc: error: {exc}", file=sys.stderr)
            return 2
        _emit(outcome, session.fmt)
        return outcome.code

    if opts.script:
        if opts.command:
            print("igc: give either --script or an inline command, not both", file=sys.stderr)
            return 1
        try:
            lines = open(opts.script).read().splitlines()
        except OSError as exc:
            print(f"igc: cannot read script: {exc}", file=sys.stderr)
            return 1
        for number, line in enumerate(lines, 1):
            stripped = line.split("#", 1)[0].strip()
            if not stripped:
                continue
            code = run_one(shlex.split(stripped))
            if code != 0:
                print(f"igc: script line {number} failed", file=sys.stderr)
                return code
        return 0

    if not opts.command:
        print("igc: no command given (try `igc --dim 2 check`)", file=sys.stderr)
        return 1
    return run_one(opts.command)

"""Command-line front end.

Exit codes: 0 derivable / valid / ok, 1 underivable / invalid / failed,
2 input error or resource limit, 64 bad command-line usage.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import nd
from .engine import (DerivationError, DerivationFormatError, Limits, OracleDisagreement,
                     ResourceLimitExceeded, check, decide, dumps, loads, render_latex,
                     render_tree)
from .signature import BASE, Signature, UnknownTagError
from .structural import general_identity
from .syntax import (MINUS, PLUS, ParseError, dualize_sequent, parse_formula, parse_sequent,
                     print_sequent)
from .uniqueness import uniqueness_report

EXIT_OK, EXIT_NO, EXIT_ERROR, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _signature(copies: Sequence[str] | None) -> Signature | None:
    if not copies:
        return None
    sig = BASE
    for spec in copies:
        conn, sep, subset = spec.partition(":")
        if not sep:
            raise UsageError(f"--copy expects <connective>:<full|proof-only|dual-only>, got {spec!r}")
        try:
            sig = sig.extend(conn.strip(), subset.strip())
        except ValueError as e:
            raise UsageError(f"--copy {spec!r}: {e}") from None
    return sig


def _style(args) -> str:
    return "ascii" if args.ascii else "unicode"


def _limits(args) -> Limits:
    return Limits.from_env(max_sequents=getattr(args, "max_sequents", None))


def _emit_proof(d, fmt: str, style: str) -> None:
    if fmt == "json":
        print(dumps(d))
    elif fmt == "latex":
        print(render_latex(d))
    elif fmt == "tree":
        print(render_tree(d, style))


def cmd_decide(args) -> int:
    goal = parse_sequent(args.sequent)
    sig = _signature(args.copy) or Signature.covering(goal.formulas())
    result = decide(goal, sig, oracle=args.oracle, limits=_limits(args),
                    procedure=args.procedure)
    if result:
        print("DERIVABLE")
        _emit_proof(result.proof, args.proof, _style(args))
        return EXIT_OK
    print("UNDERIVABLE")
    stats = result.stats.as_dict()
    print("  " + ", ".join(f"{k}={v}" for k, v in stats.items()))
    return EXIT_NO


def cmd_check(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        d = loads(fh.read())
    try:
        check(d, _signature(args.copy))
    except DerivationError as e:
        print(f"INVALID: {e}")
        return EXIT_NO
    print(f"OK: {print_sequent(d.conclusion, _style(args))} ({d.size} nodes)")
    return EXIT_OK


def cmd_nd_check(args) -> int:
    with open(args.file, encoding="utf-8") as fh:
        root = nd.loads(fh.read())
    try:
        result = nd.nd_check(root, _signature(args.copy))
    except nd.NdError as e:
        print(f"INVALID: {e}")
        return EXIT_NO
    print(f"OK: {print_sequent(result.sequent(), _style(args))} [{result.line}]")
    for w in result.warnings:
        print(f"warning: {w}")
    return EXIT_OK


def cmd_unique(args) -> int:
    report = uniqueness_report(args.connective, "partial" if args.partial else "full",
                               oracle=args.oracle, limits=_limits(args))
    if args.json:
        print(report.dumps())
    else:
        print(report.table(_style(args)))
    if args.latex:
        print(report.latex())
    return EXIT_OK if report.unique else EXIT_NO


def cmd_dual(args) -> int:
    goal = parse_sequent(args.sequent)
    dual = dualize_sequent(goal)
    style = _style(args)
    print(print_sequent(dual, style))
    if not args.decide:
        return EXIT_OK
    sig = _signature(args.copy) or Signature.covering(goal.formulas())
    a = decide(goal, sig, limits=_limits(args))
    b = decide(dual, sig.dual(), limits=_limits(args))
    word = {True: "DERIVABLE", False: "UNDERIVABLE"}
    print(f"original: {word[bool(a)]}")
    print(f"dual:     {word[bool(b)]}")
    return EXIT_OK if bool(a) == bool(b) else EXIT_NO


def cmd_identity(args) -> int:
    f = parse_formula(args.formula)
    d = general_identity(f, PLUS if args.mode == "+" else MINUS)
    check(d)
    _emit_proof(d, args.proof, _style(args))
    return EXIT_OK


def cmd_selftest(args) -> int:
    from .selftest import run
    return EXIT_OK if run(quick=args.quick, style=_style(args)) else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="twoint", description="2Int sequent calculus toolkit")
    p.add_argument("--ascii", action="store_true", help="ASCII output only")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, copies=True, limits=True):
        sp.add_argument("--ascii", action="store_true", default=argparse.SUPPRESS)
        if copies:
            sp.add_argument("--copy", action="append", metavar="CONN:SUBSET",
                            help="append a copy of a connective (full, proof-only, dual-only)")
        if limits:
            sp.add_argument("--max-sequents", type=int, metavar="N")

    sp = sub.add_parser("decide", help="decide a sequent")
    sp.add_argument("sequent")
    sp.add_argument("--oracle", action="store_true", help="cross-check with forward saturation")
    sp.add_argument("--proof", choices=("tree", "json", "latex", "none"), default="tree")
    sp.add_argument("--procedure", choices=("backward", "forward"), default="backward")
    common(sp)
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("check", help="validate a derivation JSON file")
    sp.add_argument("file")
    common(sp, limits=False)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("nd-check", help="validate a natural deduction JSON file")
    sp.add_argument("file")
    common(sp, limits=False)
    sp.set_defaults(func=cmd_nd_check)

    sp = sub.add_parser("unique", help="uniqueness report for a connective")
    sp.add_argument("connective")
    sp.add_argument("--partial", action="store_true",
                    help="proof-only and dual-only copies (twelve sequents)")
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--latex", action="store_true")
    sp.add_argument("--oracle", action="store_true")
    common(sp, copies=False)
    sp.set_defaults(func=cmd_unique)

    sp = sub.add_parser("dual", help="dualize a sequent")
    sp.add_argument("sequent")
    sp.add_argument("--decide", action="store_true", help="decide both sequents")
    common(sp)
    sp.set_defaults(func=cmd_dual)

    sp = sub.add_parser("identity", help="derive A |- A for an arbitrary formula")
    sp.add_argument("formula")
    sp.add_argument("mode", choices=("+", "-"))
    sp.add_argument("--proof", choices=("tree", "json", "latex"), default="tree")
    common(sp, copies=False, limits=False)
    sp.set_defaults(func=cmd_identity)

    sp = sub.add_parser("selftest", help="run the bundled checks")
    sp.add_argument("--quick", action="store_true", help="smaller invariant samples")
    common(sp, copies=False, limits=False)
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv:
        build_parser().print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, UnknownTagError, DerivationFormatError, nd.NdError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ResourceLimitExceeded as e:
        print(f"resource limit: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OracleDisagreement as e:
        print(f"oracle disagreement: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""Command line front end.

Exit codes: 0 when every residual is zero, 1 on a mathematical failure
(nonzero residual, vanishing recurrence coefficient), 2 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from .algebra import format_scalar, to_scalar
from .appell import AppellCase, PoleInFamily, solution_family
from .lattice import LatticeParam
from .ops import DEFAULT_HORIZON, ZeroC, alsc_ttrr, generate_ops
from .pearson import Inadmissible, PearsonData
from . import suites

FAMILIES = ("asc", "rogers", "case1", "case2")
SUITES = ("identities", "appell", "system", "structure", "pearson", "functional", "falsify")

# lets "-1/3" through as a value instead of an unknown option
_NEGATIVE_RATIONAL = re.compile(r"^-\d+(/\d+)?$")


def _scalar(text: str) -> Fraction:
    try:
        return to_scalar(text)
    except (ValueError, ZeroDivisionError, TypeError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _lattice(text: str) -> LatticeParam:
    try:
        return LatticeParam(_scalar(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _sign(text: str) -> int:
    if text in ("+1", "1", "+"):
        return 1
    if text in ("-1", "-"):
        return -1
    raise argparse.ArgumentTypeError("sign must be +1 or -1")


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def _nonneg(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _add_common(p: argparse.ArgumentParser) -> None:
    p._negative_number_matcher = _NEGATIVE_RATIONAL
    p.add_argument("--v", type=_lattice, default=LatticeParam(Fraction(1, 2)), help="q^(1/2), a positive rational != 1")
    p.add_argument("--sign", type=_sign, default=1, help="+1 or -1")
    p.add_argument("--case", type=int, choices=(1, 2), default=1)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json", default="json")
    fmt.add_argument("--table", dest="fmt", action="store_const", const="table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qappell", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="dump a recurrence and its polynomials")
    gen.add_argument("family", choices=FAMILIES)
    _add_common(gen)
    gen.add_argument("--n", type=_positive, default=DEFAULT_HORIZON, help="horizon N (P_0..P_N)")
    gen.add_argument("--a", type=_scalar, default=None)
    gen.add_argument("--b", type=_scalar, default=None)

    ver = sub.add_parser("verify", help="run a residual suite")
    ver.add_argument("suite", choices=SUITES)
    _add_common(ver)
    ver.add_argument("--n", type=_positive, default=None, help="largest index checked")
    ver.add_argument("--m", type=_nonneg, default=18, help="largest moment checked")
    ver.add_argument("--r", type=_scalar, default=Fraction(0), help="falsification parameter")
    ver.add_argument("--degree", type=_nonneg, default=10)
    ver.add_argument("--trials", type=_positive, default=50)
    ver.add_argument("--seed", type=_nonneg, default=0)
    ver.add_argument("--pearson", type=_scalar, nargs=5, metavar=("A", "B", "C", "D", "E"), default=None,
                     help="phi = A z^2 + B z + C, psi = D z + E")
    ver.add_argument("--coefficients", choices=("resolved", "printed"), default="resolved",
                     help="structure suite: use printed coefficients or the oracle-supported variant")
    return parser


def _family_ttrr(args, parser):
    lp, N = args.v, args.n
    if args.family == "asc":
        if args.a is None or args.b is None:
            parser.error("asc needs --a and --b")
        return alsc_ttrr(args.a, args.b, lp, N)
    if args.family == "rogers":
        return alsc_ttrr(0, 0, lp, N)
    ac = AppellCase(1 if args.family == "case1" else 2, args.sign)
    return solution_family(ac, lp, N)[0]


def cmd_generate(args, parser, out) -> int:
    try:
        ttrr = _family_ttrr(args, parser)
    except ZeroC as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    fam = generate_ops(ttrr)
    if args.fmt == "json":
        record = {"family": args.family, "v": format_scalar(args.v.v)}
        if args.family in ("case1", "case2"):
            record["sign"] = "+1" if args.sign > 0 else "-1"
        if args.family == "asc":
            record["a"], record["b"] = format_scalar(args.a), format_scalar(args.b)
        record["N"] = ttrr.horizon
        record.update(fam.to_json())
        out.write(json.dumps(record) + "\n")
    else:
        out.write(f"# {args.family}  v = {args.v.v}  q = {args.v.q}\n")
        for n, p in enumerate(fam.polynomials):
            c = format_scalar(ttrr.c(n)) if n >= 1 else "-"
            out.write(f"{n:>3}  B={format_scalar(ttrr.B[n]):<24} C={c:<24} P={p}\n")
    return 0


def _run_suite(args):
    lp = args.v
    ac = AppellCase(args.case, args.sign)
    name = args.suite
    if name == "identities":
        return suites.identities_suite(lp, args.degree, args.trials, args.seed) + suites.monomial_suite(lp)
    if name == "appell":
        return suites.appell_suite(ac, lp, args.n or 20)
    if name == "system":
        return suites.system_suite(ac, lp, args.n or 15)
    if name == "structure":
        return suites.structure_suite(ac, lp, args.n or 15, args.coefficients)
    if name == "pearson":
        pd = PearsonData.of(*args.pearson) if args.pearson else None
        return suites.pearson_suite(lp, args.sign, args.n or 15, args.m, pd)
    if name == "functional":
        return suites.functional_suite(ac, lp, args.m)
    if name == "falsify":
        return suites.falsify_suite(args.r, lp, args.n or 10)
    raise AssertionError(name)


def cmd_verify(args, out) -> int:
    try:
        reports = _run_suite(args)
    except (ZeroC, Inadmissible, PoleInFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    ok = True
    for rep in reports:
        ok &= rep.passed
        if args.fmt == "json":
            out.write(rep.to_json() + "\n")
        else:
            bad = [f"{r.label}:{r.index}" if r.label else r.index for r in rep.residuals if not r.is_zero]
            status = "PASS" if rep.passed else "FAIL"
            idx = [r.index for r in rep.residuals]
            span = f"{min(idx)}..{max(idx)}" if idx else "-"
            line = f"{status}  {rep.check:<24} indices {span:<8}"
            if bad:
                line += " nonzero at " + ", ".join(str(b) for b in bad)
            out.write(line + "\n")
    return 0 if ok else 1


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "generate":
            return cmd_generate(args, parser, out)
        return cmd_verify(args, out)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

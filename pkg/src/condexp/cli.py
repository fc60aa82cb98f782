"""Command line front end.

Exit status: 0 on success, 1 when a verification ran and failed, 2 on any
input error (bad flags, unreadable or malformed files, violated
preconditions).
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import formats
from ._rational import format_rational, parse_rational
from .boolean_algebra import make_dyadic_algebra, make_finite_algebra
from .cond_expectation import check_ce_axioms
from .errors import InputError, ParseError, VerificationFailure
from .functional import positive_split
from .selftest import DEFAULT_SEED, format_results, run_selftest
from .simple_function import SimpleFunction, freudenthal_approx
from .witness import BranchChain, build_tower, divergence_holds, verify_divergence

BINARY_OPS = {
    "sup": SimpleFunction.sup,
    "inf": SimpleFunction.inf,
    "add": SimpleFunction.__add__,
    "mul": SimpleFunction.__mul__,
}
UNARY_OPS = ("abs", "freudenthal")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(2, f"{self.prog}: ParseError: {message}\n")


def _read_text(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise FileNotFoundError(f"no such file: {path}") from None


def _load(path: str, kind: str):
    return formats.loads(_read_text(path), kind)


def _write(path: str, value) -> None:
    Path(path).write_text(formats.dumps(value), encoding="utf-8")


def cmd_algebra(args) -> int:
    if args.kind == "finite":
        if args.atoms is None:
            raise ParseError("--kind finite needs --atoms")
        if args.depth is not None:
            raise ParseError("--depth applies to --kind dyadic only")
        B = make_finite_algebra([a.strip() for a in args.atoms.split(",")])
    else:
        if args.depth is None:
            raise ParseError("--kind dyadic needs --depth")
        if args.atoms is not None:
            raise ParseError("--atoms applies to --kind finite only")
        B = make_dyadic_algebra(args.depth)
    _write(args.out, B)
    print(f"{B.kind} algebra: {len(B)} atoms, {B.count_clopens()} clopen sets")
    return 0


def _load_operands(path: str, algebra):
    data = formats.parse_json(_read_text(path))
    docs = data if isinstance(data, list) else [data]
    if not docs:
        raise ParseError("values file holds no functions")
    return [formats.function_from_obj(d, algebra) for d in docs]


def cmd_fn(args) -> int:
    algebra = _load(args.algebra, "algebra")
    fs = _load_operands(args.values, algebra)
    if args.op in UNARY_OPS:
        if len(fs) != 1:
            raise ParseError(f"--op {args.op} takes exactly one function, got {len(fs)}")
        f = fs[0]
        if args.op == "abs":
            result = abs(f)
        else:
            if args.eps is None:
                raise ParseError("--op freudenthal needs --eps")
            result = freudenthal_approx(f, parse_rational(args.eps))
    else:
        if args.eps is not None:
            raise ParseError("--eps applies to --op freudenthal only")
        if len(fs) < 2:
            raise ParseError(f"--op {args.op} takes at least two functions, got {len(fs)}")
        result = fs[0]
        for g in fs[1:]:
            result = BINARY_OPS[args.op](result, g)
    _write(args.out, result)
    print(formats.dumps(result), end="")
    return 0


def cmd_ce_apply(args) -> int:
    T = _load(args.operator, "operator")
    f = formats.function_from_obj(formats.parse_json(_read_text(args.fn)), T.algebra)
    g = T.apply(f)
    _write(args.out, g)
    print(formats.dumps(g), end="")
    return 0


def cmd_ce_check(args) -> int:
    if args.trials < 1:
        raise ParseError("--trials must be at least 1")
    T = _load(args.operator, "operator")
    report = check_ce_axioms(T, args.trials, random.Random(args.seed))
    print(report.format_table())
    if not report.passed:
        raise VerificationFailure("at least one axiom failed")
    return 0


def cmd_split(args) -> int:
    phi = _load(args.measure, "measure")
    K1, K2 = positive_split(phi)
    a1, a2 = phi.measure(K1), phi.measure(K2)
    print(json.dumps(
        {
            "K1": list(K1),
            "K2": list(K2),
            "alpha1": format_rational(a1),
            "alpha2": format_rational(a2),
        },
        indent=2,
    ))
    return 0


def cmd_witness(args) -> int:
    if args.tower == "uniform":
        tower = build_tower(args.depth)
    else:
        tower = _load(args.tower, "tower")
        if tower.depth != args.depth:
            raise ParseError(f"tower file has depth {tower.depth}, --depth says {args.depth}")
    branch = BranchChain.parse(args.branch)
    table = verify_divergence(tower, branch, args.upto)
    print(formats.format_table(table))
    problem = divergence_holds(table)
    if problem:
        raise VerificationFailure(problem)
    return 0


def cmd_selftest(args) -> int:
    results = run_selftest(args.seed)
    print(format_results(results))
    if not all(r.passed for r in results):
        raise VerificationFailure("selftest failed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="condexp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("algebra", help="write a finite or dyadic Boolean algebra")
    p.add_argument("--kind", choices=("finite", "dyadic"), required=True)
    p.add_argument("--atoms", help="comma separated atom names")
    p.add_argument("--depth", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("fn", help="Riesz-space operations on simple functions")
    p.add_argument("--algebra", required=True)
    p.add_argument("--values", required=True, help="a function document or a JSON list of them")
    p.add_argument("--op", choices=[*BINARY_OPS, *UNARY_OPS], required=True)
    p.add_argument("--eps", help="grid step p/q for --op freudenthal")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fn)

    p = sub.add_parser("ce-apply", help="apply a conditional expectation operator")
    p.add_argument("--operator", required=True)
    p.add_argument("--fn", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ce_apply)

    p = sub.add_parser("ce-check", help="verify the conditional expectation axioms")
    p.add_argument("--operator", required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_ce_check)

    p = sub.add_parser("split", help="split X into two clopens of positive measure")
    p.add_argument("--measure", required=True)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("witness", help="tabulate phi(f_n) along a dyadic branch")
    p.add_argument("--tower", required=True, help="'uniform' or a tower file")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--branch", required=True)
    p.add_argument("--upto", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("selftest", help="run every invariant suite")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_selftest)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except VerificationFailure as e:
        print(f"FAIL: {e}", file=sys.stderr)
        return 1
    except (InputError, ValueError, FileNotFoundError, IsADirectoryError) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

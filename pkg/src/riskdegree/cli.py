"""Command-line interface: ``riskdegree <command> ...``.

Exit codes: 0 success, 2 input/parse/validation error, 3 empty data,
4 unsupported parameter regime.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .degree import degree, equivalent_cvar
from .errors import (
    ConvexityError,
    DomainError,
    EmptySample,
    InfiniteRisk,
    MeasureFormatError,
    RiskDegreeError,
    UnsupportedExponent,
    WeightSumError,
)
from .evaluate import ZpFamily, check_equivalence, rho_empirical
from .formats import dump_measure, format_number, format_text, load_measure, load_sample

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_EMPTY = 3
EXIT_REGIME = 4

COMPARE_TOL = 1e-9


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _load_measure(path):
    try:
        return load_measure(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_INPUT) from None
    except (MeasureFormatError, WeightSumError, DomainError, ConvexityError) as exc:
        raise CliError(f"{path}: {type(exc).__name__}: {exc}", EXIT_INPUT) from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8", newline="\n")


def cmd_degree(args) -> int:
    m = _load_measure(args.measure)
    report = degree(m, args.p)
    if args.json:
        payload = {k: (format_number(v) if isinstance(v, float) else v) for k, v in report.as_dict().items()}
        print(json.dumps(payload))
    else:
        print(f"degree: {format_text(report.value)}")
        print(f"branch: {report.branch.value}")
        residual = "n/a" if report.cross_residual is None else format_text(report.cross_residual)
        print(f"cross_residual: {residual}")
    return EXIT_OK


def cmd_equivalent_cvar(args) -> int:
    m = _load_measure(args.measure)
    print(format_text(equivalent_cvar(m, args.p)))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    m = _load_measure(args.measure)
    try:
        sample = load_sample(args.samples)
    except OSError as exc:
        raise CliError(f"cannot read {args.samples}: {exc.strerror}", EXIT_INPUT) from None
    except EmptySample as exc:
        raise CliError(f"{args.samples}: {exc}", EXIT_EMPTY) from None
    except MeasureFormatError as exc:
        raise CliError(f"{args.samples}: {exc}", EXIT_INPUT) from None
    print(format_text(rho_empirical(m, sample)))
    return EXIT_OK


def cmd_compare(args) -> int:
    if not args.p > -1.0:
        raise CliError(f"compare needs p > -1 (Z_p has infinite mean otherwise), got p={args.p!r}", EXIT_REGIME)
    if not args.theta > 0.0:
        raise CliError(f"--theta must be positive, got {args.theta!r}", EXIT_INPUT)
    a = _load_measure(args.a)
    b = _load_measure(args.b)
    fam = ZpFamily(args.p, args.theta)
    try:
        rep = check_equivalence(a, b, fam, COMPARE_TOL)
    except InfiniteRisk as exc:
        raise CliError(str(exc), EXIT_REGIME) from None
    print(f"degree_a: {format_text(rep.degree_a)}")
    print(f"degree_b: {format_text(rep.degree_b)}")
    print(f"risk_a: {format_text(rep.risk_a)}")
    print(f"risk_b: {format_text(rep.risk_b)}")
    print("EQUAL" if rep.degrees_equal and rep.risks_equal else "UNEQUAL")
    return EXIT_OK


def cmd_curve(args) -> int:
    if args.steps < 2:
        raise CliError(f"--steps must be at least 2, got {args.steps}", EXIT_INPUT)
    if not args.p_min < args.p_max:
        raise CliError(f"--p-min must be below --p-max, got {args.p_min} >= {args.p_max}", EXIT_INPUT)
    m = _load_measure(args.measure)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["p", "degree", "branch"])
    for p in np.linspace(args.p_min, args.p_max, args.steps):
        rep = degree(m, float(p))
        writer.writerow([format_text(format_number(rep.p)), format_text(rep.value), rep.branch.value])
    _write(buf.getvalue(), args.out)
    return EXIT_OK


def cmd_convert(args) -> int:
    m = _load_measure(args.input)
    try:
        text = dump_measure(m, args.to)
    except (ConvexityError, WeightSumError) as exc:
        raise CliError(f"{args.input}: {type(exc).__name__}: {exc}", EXIT_INPUT) from None
    _write(text, args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riskdegree", description="Degree of risk aversion of spectral risk measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("degree", help="p-degree r_p of a measure")
    p.add_argument("measure")
    p.add_argument("p", type=float)
    p.add_argument("--json", action="store_true", help="emit a JSON object")
    p.set_defaults(func=cmd_degree)

    p = sub.add_parser("equivalent-cvar", help="level alpha of the CVaR with the same p-degree")
    p.add_argument("measure")
    p.add_argument("p", type=float)
    p.set_defaults(func=cmd_equivalent_cvar)

    p = sub.add_parser("evaluate", help="risk of an empirical loss sample")
    p.add_argument("measure")
    p.add_argument("samples")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="compare two measures by p-degree and by their risk of Z_p")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("p", type=float)
    p.add_argument("--theta", type=float, default=1.0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("curve", help="CSV of r_p over a uniform p grid")
    p.add_argument("measure")
    p.add_argument("--p-min", type=float, required=True)
    p.add_argument("--p-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_curve)

    p = sub.add_parser("convert", help="rewrite a measure file in the other representation")
    p.add_argument("input")
    p.add_argument("--to", choices=["kusuoka", "dual_utility"], required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convert)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"riskdegree: error: {exc}", file=sys.stderr)
        return exc.code
    except UnsupportedExponent as exc:
        print(f"riskdegree: error: {exc}", file=sys.stderr)
        return EXIT_REGIME
    except RiskDegreeError as exc:
        print(f"riskdegree: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

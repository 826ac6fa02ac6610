"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 unreadable input, 3 domain violation,
4 diagnostic mismatch.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .aggregator import (
    WeightedData,
    ces,
    ces_generator_for,
    ces_lda_weights,
    cobb_douglas,
    lda_mean,
    leontief,
    normalized_ces,
    oracle_argmin_first,
)
from .consumer import ConsumerProgram, oracle_solve, solve, stationarity_residuals
from .econ.diagnostics import completeness_matrix
from .econ.calculus import mrs
from .econ.duality import ces_dual_pair
from .econ.lifting import price_consumption_curve
from .errors import DegenerateParameterError, DomainError, ParseError
from .generators import CesParams, make_cobb_douglas, parse_generator
from .io import read_table

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_DOMAIN, EXIT_MISMATCH = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with status 2 on bad flags; usage errors here are status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _num(v: float) -> float:
    """Round to 12 significant digits so printed values are stable (``4.0`` not ``3.9999999999999996``)."""
    return float(f"{v:.12g}")


def _emit(report: dict, as_json: bool, out) -> None:
    if as_json:
        out.write(json.dumps(report, indent=2) + "\n")
        return
    for key, value in report.items():
        if isinstance(value, list):
            value = " ".join(repr(v) for v in value)
        out.write(f"{key}: {value}\n")


def _generator(text: str):
    try:
        return parse_generator(text)
    except (DomainError, DegenerateParameterError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- commands --------------------------------------------------------------------------


def cmd_index(args, out) -> int:
    table = read_table(args.input)
    x, w = table.values, table.weights
    report = {}
    if args.generator:
        g = _generator(args.generator)
        d = WeightedData(g.check(x), w)
        value = lda_mean(g, d, normalize=args.normalize).value
        oracle = oracle_argmin_first(g, d)
        if args.normalize:
            oracle /= d.gamma_sum
        report.update(value=_num(value), family=f"LDA[{g.name}]", oracle_residual=abs(value - oracle))
    elif args.family == "ces":
        if args.sigma is None:
            raise UsageError("--family ces needs --sigma")
        p = CesParams(args.sigma, w)
        value = (normalized_ces(p, x) if args.normalize else ces(p, x)).value
        d = WeightedData(x, p.beta if args.normalize else ces_lda_weights(p))
        oracle = oracle_argmin_first(ces_generator_for(p.sigma), d)
        report.update(value=_num(value), family="NormalizedCES" if args.normalize else "CES",
                      oracle_residual=abs(value - oracle))
    elif args.family == "cd":
        b = w / math.fsum(w.tolist()) if args.normalize else w
        value = cobb_douglas(b, x).value
        report.update(value=_num(value), family="CobbDouglas")
        if math.isclose(math.fsum(b.tolist()), 1.0, rel_tol=1e-12):
            g = make_cobb_douglas(1.0)
            report["oracle_residual"] = abs(value - oracle_argmin_first(g, WeightedData(x, b)))
    elif args.family == "leontief":
        report.update(value=_num(leontief(w, x).value), family="Leontief")
    else:
        raise UsageError("give --generator or --family")
    _emit(report, args.json, out)
    return EXIT_OK


def cmd_dual(args, out) -> int:
    table = read_table(args.input)
    prices = table.prices if table.prices is not None else table.values
    p = CesParams(args.sigma, table.weights)
    c, pair = ces_dual_pair(p, prices, args.cstar)
    report = {
        "p_star": _num(pair.z_star.value),
        "c_star": _num(pair.x_star.value),
        "demands": [_num(v) for v in c],
        "duality_residual": pair.product_residual,
    }
    _emit(report, args.json, out)
    return EXIT_OK


def cmd_diagnose(args, out) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    report = completeness_matrix(trials=args.trials, seed=args.seed)
    if args.json:
        out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    else:
        out.write(report.to_text() + "\n")
    bad = report.mismatches()
    if bad:
        fam, col, got, exp = bad[0]
        sys.stderr.write(f"mismatch at {fam} / {col}: got {got}, expected {exp}\n")
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_consumer(args, out) -> int:
    if not 0.0 < args.gamma < 1.0:
        raise UsageError(f"--gamma must lie strictly between 0 and 1, got {args.gamma}")
    if not (args.r > 0 and args.pstar > 0):
        raise UsageError("--r and --pstar must be positive")
    prog = ConsumerProgram(args.r, args.pstar, args.gamma, _generator(args.generator))
    sol = oracle_solve(prog) if args.oracle else solve(prog)
    res_c, res_m = stationarity_residuals(prog, sol)
    report = {
        "c_star": _num(sol.c_star),
        "m": _num(sol.m),
        "m_over_pstar": _num(sol.m / prog.p_star),
        "u_star": _num(sol.u_star),
        "budget_residual": sol.budget_residual,
        "res_c": res_c,
        "res_m": res_m,
    }
    if sol.c_interval is not None:
        report["c_interval"] = [_num(v) for v in sol.c_interval]
    _emit(report, args.json, out)
    return EXIT_OK


def _write_tsv(path: Path, header: Sequence[str], rows) -> None:
    lines = ["\t".join(header)]
    lines += ["\t".join(repr(float(v)) for v in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def cmd_curves(args, out) -> int:
    g = _generator(args.generator)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{args.figure}.tsv"
    if args.figure == "prices":
        curve = price_consumption_curve(g, args.cbar, args.samples)
        _write_tsv(path, ("c_tilde", "relative_price"), curve.rows())
    elif args.figure == "mrs":
        lo, hi = g.sample_range
        xs = np.geomspace(lo, hi, args.samples) if lo > 0 else np.linspace(lo, hi, args.samples)
        rows = [(xi, mrs(g, WeightedData([xi, args.xj], [1.0, 1.0]), 0, 1)) for xi in xs]
        _write_tsv(path, ("x_i", "mrs"), rows)
    else:
        rows = []
        for gam in np.round(np.linspace(0.05, 0.95, 19), 10):
            prog = ConsumerProgram(args.r, args.pstar, float(gam), g)
            sol = solve(prog)
            rows.append((gam, sol.c_star, sol.m / prog.p_star))
        _write_tsv(path, ("gamma", "c_star", "m_over_pstar"), rows)
    _emit({"figure": args.figure, "generator": g.name, "path": str(path)}, args.json, out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="ldagg", description="Low-distortion aggregators: indices, duality, diagnostics.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("index", parents=[common], help="aggregate a CSV of values")
    p.add_argument("--input", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--generator", help="generator name, e.g. ces:sigma=2, cd:b=1, is")
    src.add_argument("--family", choices=("ces", "cd", "leontief"))
    p.add_argument("--sigma", type=float)
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("dual", parents=[common], help="CES price index and demands")
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--cstar", type=float, required=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("diagnose", parents=[common], help="completeness matrix of the four families")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_diagnose)

    p = sub.add_parser("consumer", parents=[common], help="split a budget between consumption and money")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--pstar", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--generator", required=True)
    p.add_argument("--oracle", action="store_true", help="use the brute-force grid search")
    p.set_defaults(func=cmd_consumer)

    p = sub.add_parser("curves", parents=[common], help="write figure data as TSV")
    p.add_argument("--figure", choices=("prices", "mrs", "util"), required=True)
    p.add_argument("--generator", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--cbar", type=float, default=1.0, help="normalized hidden index (prices)")
    p.add_argument("--xj", type=float, default=1.0, help="fixed second input (mrs)")
    p.add_argument("--r", type=float, default=10.0)
    p.add_argument("--pstar", type=float, default=2.0)
    p.set_defaults(func=cmd_curves)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        sys.stderr.write(f"ldagg: error: {exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        sys.stderr.write(f"ldagg: cannot parse input: {exc}\n")
        return EXIT_PARSE
    except ValueError as exc:
        # DomainError, DegenerateParameterError and parameter validation
        sys.stderr.write(f"ldagg: domain error: {exc}\n")
        return EXIT_DOMAIN

"""Command-line front end.

Exit codes: 0 on success, 1 on invalid input, 2 when a verification suite fails.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import cost_model, factorizer, ft_overhead, verify
from .tables import (
    TableError,
    ingest,
    shipped_counts,
    shipped_molecules,
    to_csv,
    to_table,
)

EXIT_OK, EXIT_INVALID, EXIT_VERIFY = 0, 1, 2

ESTIMATE_COLUMNS = (
    "name", "basis", "N", "R", "M", "alpha", "objective", "eps_Q", "eps_P", "beta",
    "lambda_rot", "n_T", "D_T", "n_L", "V_n", "V_D", "n_T_over_D_T",
)
PLOT_COLUMNS = ("name", "basis", "regime", "L_intl", "n_RSG", "t_algo_hours")
REPORT_COLUMNS = (
    "name", "basis", "N", "n_T", "n_L", "n_T_table", "n_L_table", "Vn_ratio", "VD_ratio",
    "d_high", "n_RSG_high", "t_hours_high", "d_moderate", "n_RSG_moderate", "t_hours_moderate",
)
OBJECTIVES = {"vn": "Vn", "vd": "VD"}


def _num(x: float) -> str:
    return f"{x:.15g}"


def _load_molecules(path):
    return shipped_molecules() if path is None else ingest(path)


def _emit(text: str, output) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def _render(columns, rows, fmt: str) -> str:
    return to_table(columns, rows) if fmt == "table" else to_csv(columns, rows)


# --- estimate -------------------------------------------------------------------

def estimate_row(report: cost_model.CostReport) -> dict[str, str]:
    inst = report.instance
    return {
        "name": inst.name,
        "basis": inst.basis,
        "N": str(inst.N),
        "R": str(inst.R),
        "M": str(inst.M),
        "alpha": _num(inst.alpha),
        "objective": report.objective,
        "eps_Q": f"{report.eps_Q:.6g}",
        "eps_P": f"{report.eps_P:.6g}",
        "beta": str(report.beta),
        "lambda_rot": str(report.lambdas[cost_model.ROTATION_LOOKUP]),
        "n_T": str(report.n_T),
        "D_T": str(report.D_T),
        "n_L": str(report.n_L),
        "V_n": str(report.V_n),
        "V_D": str(report.V_D),
        "n_T_over_D_T": f"{report.count_depth_ratio:.4f}",
    }


def run_estimate(instances, objective: str = "Vn", eps: float = 1e-3) -> list[cost_model.CostReport]:
    return [cost_model.total_cost(inst, eps, objective) for inst in instances]


# --- overhead -------------------------------------------------------------------

def _regimes(label: str) -> list[ft_overhead.NoiseRegime]:
    if label == "both":
        return [ft_overhead.HIGH, ft_overhead.MODERATE]
    return [ft_overhead.regime(label)]


def logical_counts(instances, source: str, eps: float = 1e-3) -> list[tuple[int, float]]:
    """``(n_L, n_T)`` per instance from the shipped serial-T table or the cost model."""
    if source == "table":
        table = shipped_counts()
        out = []
        for inst in instances:
            key = (inst.name, inst.basis)
            if key not in table:
                raise TableError(f"no shipped logical counts for {inst.name}/{inst.basis}")
            out.append(table[key])
        return out
    if source == "model":
        return [(r.n_L, float(r.n_T)) for r in run_estimate(instances, "Vn", eps)]
    raise ValueError(f"unknown counts source {source!r}")


def run_overhead(instances, counts, regime_label: str, L_values, params: ft_overhead.FtParams):
    """Reports in input order: molecule, then regime, then interleaving ratio."""
    out = []
    for inst, (n_L, n_T) in zip(instances, counts):
        for reg in _regimes(regime_label):
            for rep in ft_overhead.tradeoff_curve(n_T, n_L, reg, params, L_values):
                out.append((inst, rep))
    return out


def plot_row(inst, rep: ft_overhead.FtReport) -> dict[str, str]:
    return {
        "name": inst.name,
        "basis": inst.basis,
        "regime": rep.regime.label,
        "L_intl": str(rep.params.L_intl),
        "n_RSG": str(rep.n_RSG),
        "t_algo_hours": f"{rep.t_algo_hours:.6g}",
    }


def parse_interleave_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ValueError(f"interleaving list {text!r} must hold integers") from None
    if not values or min(values) < 1:
        raise ValueError("interleaving ratios must be integers >= 1")
    return values


def parse_interleave_range(text: str) -> list[int]:
    """``A:B:steps`` to log-spaced distinct integers from ``A`` to ``B``."""
    parts = text.split(":")
    try:
        a, b, steps = int(parts[0]), int(parts[1]), int(parts[2])
    except (ValueError, IndexError):
        raise ValueError(f"interleaving range {text!r} must look like A:B:steps") from None
    if len(parts) != 3 or a < 1 or b < a or steps < 1:
        raise ValueError("interleaving range needs 1 <= A <= B and steps >= 1")
    if steps == 1:
        return [a]
    return sorted({int(round(v)) for v in np.geomspace(a, b, steps)})


# --- report ---------------------------------------------------------------------

def report_rows(eps: float = 1e-3) -> list[dict[str, str]]:
    """Cost model against the shipped counts, plus overheads from the shipped counts."""
    table = shipped_molecules()
    counts = shipped_counts()
    rows = []
    for inst in table.instances:
        vn = cost_model.total_cost(inst, eps, "Vn")
        vd = cost_model.total_cost(inst, eps, "VD")
        n_L_t, n_T_t = counts[(inst.name, inst.basis)]
        row = {
            "name": inst.name,
            "basis": inst.basis,
            "N": str(inst.N),
            "n_T": f"{vn.n_T:.4g}",
            "n_L": str(vn.n_L),
            "n_T_table": f"{n_T_t:.4g}",
            "n_L_table": str(n_L_t),
            "Vn_ratio": f"{vn.count_depth_ratio:.2f}",
            "VD_ratio": f"{vd.count_depth_ratio:.2f}",
        }
        for reg in (ft_overhead.HIGH, ft_overhead.MODERATE):
            rep = ft_overhead.estimate(n_T_t, n_L_t, reg)
            row[f"d_{reg.label}"] = str(rep.d)
            row[f"n_RSG_{reg.label}"] = f"{rep.n_RSG:.3g}"
            row[f"t_hours_{reg.label}"] = f"{rep.t_algo_hours:.3g}"
        rows.append(row)
    return rows


# --- argument parsing -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors count as validation failures."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftchem", description="Fault-tolerant chemistry resource estimates.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("factorize", help="double-factorize a two-electron tensor")
    p.add_argument("--tensor", required=True, help="tensor file (text or binary)")
    p.add_argument("--one-body", help="one-body matrix file")
    p.add_argument("--eps", type=float, default=1e-3, help="truncation threshold")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--output")

    p = sub.add_parser("estimate", help="logical T-count, T-depth and qubits")
    p.add_argument("--molecules", help="molecule CSV (default: shipped table)")
    p.add_argument("--objective", choices=sorted(OBJECTIVES), default="vn")
    p.add_argument("--eps", type=float, default=1e-3, help="total algorithmic error")
    p.add_argument("--format", choices=("csv", "table"), default="csv")
    p.add_argument("--output")

    for name, help_text in (("overhead", "fault-tolerant footprint and runtime"),
                            ("sweep", "footprint/runtime along an interleaving sweep")):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--molecules", help="molecule CSV (default: shipped table)")
        p.add_argument("--counts", choices=("table", "model"), default="table")
        p.add_argument("--regime", choices=("high", "moderate", "both"), default="both")
        p.add_argument("--eps", type=float, default=1e-3, help="algorithmic error for model counts")
        p.add_argument("--eps-total", type=float, default=1e-2, help="fault-tolerant failure budget")
        p.add_argument("--output")
        if name == "overhead":
            p.add_argument("--interleave", default="1", help="comma-separated ratios")
            p.add_argument("--format", choices=("csv", "table", "plotdata"), default="csv")
        else:
            p.add_argument("--interleave-range", default="1:1000:13", help="A:B:steps, log-spaced")
            p.add_argument("--format", choices=("csv", "table", "plotdata"), default="plotdata")

    p = sub.add_parser("verify", help="run oracle verification suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("report", help="summary of model and overheads on the shipped data")
    p.add_argument("--format", choices=("csv", "table", "plotdata"), default="table")
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--output")
    return parser


def _cmd_factorize(args) -> int:
    h = factorizer.read_tensor(args.tensor)
    t = factorizer.read_one_body(args.one_body) if args.one_body else None
    full = factorizer.double_factorize(h, t)
    f = factorizer.truncate(full, args.eps)
    max_abs, frob = factorizer.reconstruction_error(f, h)
    row = {
        "N": str(f.n_orbitals),
        "R": str(f.rank_R),
        "M": str(f.rank_M),
        "max_M": str(f.max_rank_M),
        "alpha": _num(f.alpha),
        "truncation_bound": f"{f.truncation_error_bound:.6g}",
        "max_abs_error": f"{max_abs:.6g}",
        "frobenius_error": f"{frob:.6g}",
    }
    _emit(_render(list(row), [row], args.format), args.output)
    return EXIT_OK


def _cmd_estimate(args) -> int:
    table = _load_molecules(args.molecules)
    reports = run_estimate(table.instances, OBJECTIVES[args.objective], args.eps)
    _emit(_render(ESTIMATE_COLUMNS, [estimate_row(r) for r in reports], args.format), args.output)
    return EXIT_OK


def _cmd_overhead(args, L_values) -> int:
    table = _load_molecules(args.molecules)
    counts = logical_counts(table.instances, args.counts, args.eps)
    params = ft_overhead.FtParams(eps_total=args.eps_total)
    results = run_overhead(table.instances, counts, args.regime, L_values, params)
    if args.format == "plotdata":
        text = to_csv(PLOT_COLUMNS, [plot_row(i, r) for i, r in results])
    else:
        rows = [ft_overhead.csv_row(i.name, i.basis, r) for i, r in results]
        text = _render(ft_overhead.CSV_COLUMNS, rows, args.format)
    _emit(text, args.output)
    return EXIT_OK


def _cmd_verify(args) -> int:
    ok = True
    for rep in verify.run_suite(args.suite, args.seed):
        for line in rep.lines():
            print(line)
        ok &= rep.passed
    print("verification " + ("passed" if ok else "FAILED"))
    return EXIT_OK if ok else EXIT_VERIFY


def _cmd_report(args) -> int:
    if args.format == "plotdata":
        table = shipped_molecules()
        counts = logical_counts(table.instances, "table")
        results = run_overhead(table.instances, counts, "both", parse_interleave_range("1:1000:13"),
                               ft_overhead.FtParams())
        text = to_csv(PLOT_COLUMNS, [plot_row(i, r) for i, r in results])
    else:
        text = _render(REPORT_COLUMNS, report_rows(args.eps), args.format)
    _emit(text, args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        code = _dispatch(args)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    return code


def _dispatch(args) -> int:
    try:
        if args.command == "factorize":
            return _cmd_factorize(args)
        if args.command == "estimate":
            return _cmd_estimate(args)
        if args.command == "overhead":
            return _cmd_overhead(args, parse_interleave_list(args.interleave))
        if args.command == "sweep":
            return _cmd_overhead(args, parse_interleave_range(args.interleave_range))
        if args.command == "verify":
            return _cmd_verify(args)
        return _cmd_report(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

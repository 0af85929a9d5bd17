import csv
import math
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import record_criterion
from ftchem import cost_model as cm
from ftchem import factorizer as fz
from ftchem import ft_overhead as ft
from ftchem import ppm
from ftchem.tables import shipped_counts, shipped_molecules
from ftchem.verify import check_compiled_program, check_frames, check_ppm_circuits, gizens_suite

DATA = Path(__file__).parent / "data"
REGIMES = (ft.HIGH, ft.MODERATE)
L_VALUES = (1, 10, 100, 1000)


def _table7():
    with open(DATA / "table7_ft.csv") as fh:
        return list(csv.DictReader(fh))


def _report(number, title, passed, detail):
    record_criterion(number, title, passed, detail)
    assert passed, detail


@pytest.fixture(scope="module")
def ft_rows():
    """Timed overhead estimates for every Table-7 row in both regimes."""
    counts = shipped_counts()
    rows = _table7()
    start = time.perf_counter()
    reports = [(row, reg, ft.estimate(counts[(row["name"], row["basis"])][1],
                                      counts[(row["name"], row["basis"])][0], reg))
               for row in rows for reg in REGIMES]
    return reports, time.perf_counter() - start


@pytest.fixture(scope="module")
def cost_reports():
    return [(inst, cm.total_cost(inst, 1e-3, "Vn"), cm.total_cost(inst, 1e-3, "VD"))
            for inst in shipped_molecules().instances]


def test_criterion_01_runtime_reproduction(ft_rows):
    reports, elapsed = ft_rows
    worst_t, worst_d = 0.0, 0
    for row, reg, rep in reports:
        table_t = float(row[f"t_hours_{reg.label}"])
        worst_t = max(worst_t, abs(rep.t_algo_hours / table_t - 1))
        implied_d = round(table_t * 3600 * rep.params.f_RSG / rep.n_T)
        worst_d = max(worst_d, abs(rep.d - implied_d))
    ok = len(reports) == 70 and worst_t <= 0.05 and worst_d <= 1 and elapsed < 1.0
    _report(1, "runtime vs 70 table entries", ok,
            f"max rel dev {worst_t:.2%}, max |d - implied d| {worst_d}, {elapsed * 1e3:.1f} ms")


def test_criterion_02_footprint_reproduction(ft_rows):
    reports, elapsed = ft_rows
    worst = max(abs(rep.n_RSG / float(row[f"n_RSG_{reg.label}"]) - 1) for row, reg, rep in reports)
    distill_ok = all(rep.n_distill == 240 * rep.d ** 2 for _, _, rep in reports)
    ok = len(reports) == 70 and worst <= 0.05 and distill_ok and elapsed < 1.0
    _report(2, "footprint vs 70 table entries", ok, f"max rel dev {worst:.2%}, n_distill = 240 d^2: {distill_ok}")


def test_criterion_03_distance_bands(ft_rows):
    reports, _ = ft_rows
    high = [rep.d for _, reg, rep in reports if reg is ft.HIGH]
    mod = [rep.d for _, reg, rep in reports if reg is ft.MODERATE]
    ok = 23 <= min(mod) and max(mod) <= 31 and 33 <= min(high) and max(high) <= 44
    _report(3, "code distance bands", ok, f"moderate [{min(mod)}, {max(mod)}], high [{min(high)}, {max(high)}]")


def test_criterion_04_msd_ratio(ft_rows):
    reports, _ = ft_rows
    worst_all = max(rep.msd_ratio for _, _, rep in reports)
    large = [rep.msd_ratio for row, _, rep in reports if row["basis"] in ("cc-pVDZ", "cc-pVTZ")]
    worst_large = max(large)
    ok = worst_all <= 0.02 and worst_large <= 0.003
    _report(4, "distillation share of footprint", ok,
            f"max {worst_all:.2%} (limit 2%), cc-pVDZ/cc-pVTZ max {worst_large:.2%} (limit 0.3%)")


def test_criterion_05_interleaving_invariance(ft_rows):
    reports, _ = ft_rows
    invariant, endpoints = True, True
    for row, reg, base in reports:
        curve = ft.tradeoff_curve(base.n_T, base.n_L, reg, L_values=L_VALUES)
        product0 = base.n_RSG * base.t_algo
        for rep in curve:
            L = rep.params.L_intl
            # ceil(n/L) * L lies in [n, n + L - 1]
            lo, hi = product0, (base.n_RSG + L - 1) * base.t_algo
            invariant &= lo * (1 - 1e-12) <= rep.n_RSG * rep.t_algo <= hi * (1 + 1e-12)
        first, last = curve[0], curve[-1]
        endpoints &= first.n_RSG == base.n_RSG and first.t_algo == base.t_algo
        endpoints &= last.n_RSG == math.ceil(base.n_RSG / 1000) and last.t_algo == pytest.approx(1000 * base.t_algo)
    _report(5, "interleaving trade-off", invariant and endpoints,
            f"product constant up to ceiling: {invariant}, curve endpoints from L=1 values: {endpoints}")


def test_criterion_06_logical_cost_model(cost_reports):
    counts = shipped_counts()
    worst_t, worst_l = 1.0, 0.0
    for inst, vn, _ in cost_reports:
        n_L, n_T = counts[(inst.name, inst.basis)]
        worst_t = max(worst_t, vn.n_T / n_T, n_T / vn.n_T)
        worst_l = max(worst_l, abs(vn.n_L / n_L - 1))
    Ms = [2 ** k for k in range(10, 21)]
    y = [cm.total_cost(cm.MolecularInstance("s", "s", 16, 50, M, 100.0), 1e-3, "Vn").n_TQ for M in Ms]
    slope = float(np.polyfit(np.log(Ms), np.log(y), 1)[0])
    ok = len(cost_reports) == 35 and worst_t <= 2 and worst_l <= 0.25 and abs(slope - 0.5) <= 0.05
    _report(6, "logical counts vs serial table", ok,
            f"worst n_T factor {worst_t:.3f}, worst n_L dev {worst_l:.2%}, slope in M {slope:.3f}")


def test_criterion_07_depth_ratio_bands(cost_reports):
    vn = [r.count_depth_ratio for _, r, _ in cost_reports]
    vd = [r.count_depth_ratio for _, _, r in cost_reports]
    same_qubits = all(a.n_L == b.n_L for _, a, b in cost_reports)
    ok = min(vn) >= 6 and max(vn) <= 20 and min(vd) >= 15 and max(vd) <= 60 and same_qubits
    _report(7, "count/depth ratio bands", ok,
            f"Vn [{min(vn):.2f}, {max(vn):.2f}], VD [{min(vd):.2f}, {max(vd):.2f}], equal qubits: {same_qubits}")


def test_criterion_08_gizens():
    rep = gizens_suite(seed=0, sizes=(2, 4, 8), samples=100)
    failed = [c.name for c in rep.checks if not c.passed]
    worst = max(float(c.detail.split()[1]) for c in rep.checks if "residual" in c.name or "agreement" in c.name)
    _report(8, "tree basis change", rep.passed, f"max residual {worst:.2e} over 3 x 100 vectors, failed {failed}")


def test_criterion_09_ppm_equivalence():
    worst_p, worst_f, worst_y = check_ppm_circuits(3, 100, np.random.default_rng(0))
    ok = worst_p <= 1e-10 and worst_f <= 1e-10 and worst_y <= 1e-10
    _report(9, "measurement circuits vs projection", ok,
            f"63 Paulis x 100 states: max |dp| {worst_p:.1e}, max infidelity {worst_f:.1e}, Y register {worst_y:.1e}")


def test_criterion_10_frame_soundness():
    rng = np.random.default_rng(0)
    bad, valid = check_frames(1000, 5, rng)
    checks = []
    for i in range(3):
        program = ppm.random_program(4, 20, rng, n_measure=4)
        checks.append(check_compiled_program(program, 4, shots=500, seed=i))
    programs_ok = all(c.p_value > 1e-3 and c.impossible == 0 and c.min_fidelity > 1 - 1e-10 for c in checks)
    ok = bad == 0 and valid and programs_ok
    p_values = ", ".join(f"{c.p_value:.3f}" for c in checks)
    _report(10, "frame and compiled execution", ok,
            f"{bad}/1000 frame mismatches, 3 programs x 500 shots chi2 p = {p_values}")


def test_criterion_11_factorizer_round_trip():
    rng = np.random.default_rng(0)
    worst, bound_ok = 0.0, True
    for _ in range(40):
        n = int(rng.integers(2, 9))
        h = fz.random_psd_tensor(n, int(rng.integers(1, n * n + 1)), rng)
        f = fz.double_factorize(h)
        worst = max(worst, fz.reconstruction_error(f, h)[0])
        for eps in (1e-3, 1e-2, 1e-1, 1.0):
            g = fz.truncate(f, eps)
            bound_ok &= fz.reconstruction_error(g, h)[1] <= g.truncation_error_bound + 1e-10
    ok = worst <= 1e-8 and bound_ok
    _report(11, "factorization round trip", ok, f"max untruncated error {worst:.1e}, truncation bound held: {bound_ok}")

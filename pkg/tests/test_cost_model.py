import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftchem import cost_model as cm
from ftchem.tables import shipped_molecules

EC_STO = cm.MolecularInstance("EC", "STO-3G", 34, 176, 4493, 529.0)


@pytest.fixture(scope="module")
def paired_reports():
    out = []
    for inst in shipped_molecules().instances:
        out.append((cm.total_cost(inst, 1e-3, "Vn"), cm.total_cost(inst, 1e-3, "VD")))
    return out


def test_qrom_examples():
    assert cm.qrom_tcount(8, 4, 1) == 8
    assert cm.qrom_tcount(8, 4, 2) == 8
    assert cm.qrom_tdepth(8, 1) == 8
    assert cm.qrom_tdepth(8, 8) == 4


@settings(max_examples=200)
@given(st.integers(1, 10**5), st.integers(1, 500), st.integers(1, 4096))
def test_depth_never_exceeds_count(K, b, lam):
    assert cm.qrom_tdepth(K, lam) <= cm.qrom_tcount(K, b, lam)


def test_qrom_rejects_bad_inputs():
    with pytest.raises(cm.CostModelError):
        cm.qrom_tcount(0, 1, 1)
    with pytest.raises(cm.CostModelError):
        cm.qrom_tdepth(4, 0)


def test_beta_examples():
    assert cm.beta_bits(1, 1.0, 1.0) == 6
    assert cm.beta_bits(34, 529.0, 5e-4) == 31
    values = [cm.beta_bits(34, 529.0, e) for e in np.logspace(-8, -1, 40)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_pe_iterations_examples():
    assert cm.pe_iterations(2 / math.pi, 1.0, 0.5) == 1
    # 529 * pi * 0.5 / 5e-4 = 1661902.51...
    assert cm.pe_iterations(529.0, 5e-4, 0.5) == 1661903
    a, b = cm.pe_iterations(529.0, 1e-3), cm.pe_iterations(529.0, 2e-3)
    assert b == math.ceil(a / 2) or b == a // 2


def test_alpha_scaling_scales_iterations():
    a = cm.pe_iterations(52.9, 5e-4)
    b = cm.pe_iterations(529.0, 5e-4)
    assert 10 * a - 10 <= b <= 10 * a


def test_degenerate_instance_closed_forms():
    inst = cm.MolecularInstance("x", "y", 1, 1, 1, 1.0)
    budget = cm.ErrorBudget.split(1.0, 0.5)
    lambdas = cm.LambdaAssignment({s: 1 for s in cm.QROM_SITES})
    q = cm.qubitization_cost(inst, budget, lambdas)
    c = cm.DEFAULT_CONSTANTS
    beta = cm.beta_bits(1, 1.0, 0.5)
    mu = cm.keep_bits(0.5)
    comps = {comp.label: comp for comp in q.components}
    assert comps[cm.ROTATION_LOOKUP].count == 4 * 2  # K = M + N = 2, lambda 1
    assert comps["basis_rotations"].count == 0
    assert comps[cm.PREPARE_R].count == 4 * 1 + c.c_cmp * mu
    assert comps["select_reflection"].count == c.c_sel + c.c_ref * 1
    assert q.n_L == beta + 2 + c.c_anc * math.ceil(math.log2(1 / 0.5))
    assert q.n_TQ == sum(comp.total_count for comp in q.components)


def test_lambda_exceeding_entries_rejected():
    budget = cm.ErrorBudget.split(1e-3, 0.5)
    with pytest.raises(cm.CostModelError):
        cm.qubitization_cost(EC_STO, budget, cm.LambdaAssignment({cm.PREPARE_R: 1000}))


def test_single_qrom_minimizer():
    for grid in ("integer", "pow2"):
        cands = cm.lambda_candidates(16, grid)
        best = min(cands, key=lambda lam: (cm.qrom_tcount(16, 1, lam), lam))
        assert best == 4 and cm.qrom_tcount(16, 1, best) == 7


def test_wide_words_force_lambda_one():
    cands = cm.lambda_candidates(8, "integer")
    assert min(cands, key=lambda lam: (cm.qrom_tcount(8, 100, lam), lam)) == 1


@pytest.mark.parametrize("grid", ["pow2", "integer"])
def test_count_optimizer_matches_exhaustive_scan(grid):
    rng = np.random.default_rng(8)
    constants = cm.with_constants(lambda_grid=grid)
    for _ in range(10):
        inst = cm.MolecularInstance("r", "r", int(rng.integers(2, 60)), int(rng.integers(1, 800)),
                                    int(rng.integers(1, 20000)), float(rng.uniform(1, 2000)))
        budget = cm.ErrorBudget.split(1e-3, float(rng.uniform(0.05, 0.95)))
        got = cm.optimize_lambda_count(inst, budget, constants)
        beta = cm.beta_bits(inst.N, inst.alpha, budget.eps_Q)
        mu = cm.keep_bits(budget.eps_Q, constants)
        for site, (K, b) in cm.qrom_sites(inst, beta, mu).items():
            cands = cm.lambda_candidates(K, grid)
            best = min(cands, key=lambda lam: (cm.qrom_tcount(K, b, lam), lam))
            assert cm.qrom_tcount(K, b, got[site]) == cm.qrom_tcount(K, b, best)


def test_contingent_assignment_shape():
    budget = cm.ErrorBudget.split(1e-3, 0.3)
    base = cm.optimize_lambda_count(EC_STO, budget)
    cont = cm.optimize_lambda_depth_contingent(EC_STO, budget)
    beta = cm.beta_bits(EC_STO.N, EC_STO.alpha, budget.eps_Q)
    sites = cm.qrom_sites(EC_STO, beta, cm.keep_bits(budget.eps_Q))
    q_max = max(base[s] * b for s, (_, b) in sites.items())
    for s, (K, b) in sites.items():
        assert cont[s] * b <= q_max or cont[s] == 1
    # sites with equal word size get equal fan-outs
    by_bits = {}
    for s, (K, b) in sites.items():
        if base[s] * b != q_max and cont[s] < K:
            by_bits.setdefault(b, set()).add(cont[s])
    assert all(len(v) == 1 for v in by_bits.values())


def test_ec_sto3g_against_serial_counts():
    rep = cm.total_cost(EC_STO, 1e-3, "Vn")
    assert 0.75 * 2685 <= rep.n_L <= 1.25 * 2685
    assert 6.32e10 / 2 <= rep.n_T <= 6.32e10 * 2


def test_ec_ccpvdz_contingent_ratio():
    inst = next(i for i in shipped_molecules().instances if (i.name, i.basis) == ("EC", "cc-pVDZ"))
    rep = cm.total_cost(inst, 1e-3, "VD")
    assert 20 <= rep.count_depth_ratio <= 30


def test_paired_runs(paired_reports):
    for vn, vd in paired_reports:
        assert vd.D_T <= vn.D_T
        assert vd.n_T >= vn.n_T
        assert vd.n_L == vn.n_L
        assert 6 <= vn.count_depth_ratio <= 20
        for rep in (vn, vd):
            assert rep.D_T <= rep.n_T
            assert sum(r.volume_percent for r in rep.breakdown) == pytest.approx(100.0, abs=0.1)
            assert all(r.t_count >= 0 for r in rep.breakdown)


def test_objective_consistency(paired_reports):
    for vn, _ in paired_reports[:10]:
        assert all(vn.V_n <= p.n_L * p.n_T for p in vn.trace)


def test_volume_shares():
    rep = cm.total_cost(EC_STO, 1e-3, "Vn")
    shares = {r.label: r.volume_percent for r in cm.volume_breakdown(rep)}
    assert 20 <= shares[cm.ROTATION_LOOKUP] <= 45
    for inst in shipped_molecules().instances:
        if inst.basis == "cc-pVTZ":
            shares = {r.label: r.volume_percent for r in cm.total_cost(inst, 1e-3, "Vn").breakdown}
            assert shares[cm.ROTATION_LOOKUP] > shares["basis_rotations"]


def test_count_decreases_with_looser_budget():
    for inst in shipped_molecules().instances:
        counts = [cm.total_cost(inst, eps, "Vn").n_T for eps in (1e-3, 3e-3, 1e-2)]
        assert counts[0] > counts[1] > counts[2]


def test_scaling_exponent_in_m():
    Ms = [2 ** k for k in range(10, 21)]
    y = [cm.total_cost(cm.MolecularInstance("s", "s", 16, 50, M, 100.0), 1e-3, "Vn").n_TQ for M in Ms]
    slope = np.polyfit(np.log(Ms), np.log(y), 1)[0]
    assert slope == pytest.approx(0.5, abs=0.05)


def test_invalid_inputs():
    with pytest.raises(cm.CostModelError):
        cm.MolecularInstance("a", "b", 0, 1, 1, 1.0)
    with pytest.raises(cm.CostModelError):
        cm.ErrorBudget(1e-3, 8e-4, 8e-4)
    with pytest.raises(cm.CostModelError):
        cm.total_cost(EC_STO, 1e-3, "Vx")

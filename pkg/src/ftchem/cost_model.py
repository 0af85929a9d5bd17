"""Logical cost model for double-factorized qubitization with phase estimation.

Counts are expressed in T gates. Data-lookup (QROM) costs are given by the
usual select-swap formula in Toffoli units and converted with
``ModelConstants.toffoli_t_count`` T gates per Toffoli for counts and one
layer per Toffoli for depth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Literal

import numpy as np

Objective = Literal["Vn", "VD"]

ROTATION_LOOKUP = "rotation_lookup"
PREPARE_R = "prepare_R"
PREPARE_M = "prepare_M"
QROM_SITES = (ROTATION_LOOKUP, PREPARE_R, PREPARE_M)

STRATEGIES = ("min-count", "min-depth-independent", "min-depth-contingent")


class CostModelError(ValueError):
    """Invalid input to the logical cost model."""


@dataclass(frozen=True)
class MolecularInstance:
    """Factorization parameters of one molecule in one basis set."""

    name: str
    basis: str
    N: int
    R: int
    M: int
    alpha: float

    def __post_init__(self):
        for key in ("N", "R", "M"):
            if int(getattr(self, key)) < 1:
                raise CostModelError(f"{key} must be >= 1, got {getattr(self, key)}")
        if not self.alpha > 0:
            raise CostModelError(f"alpha must be positive, got {self.alpha}")


@dataclass(frozen=True)
class ErrorBudget:
    eps_total: float
    eps_Q: float
    eps_P: float
    pe_constant: float = 0.5

    def __post_init__(self):
        if min(self.eps_total, self.eps_Q, self.eps_P, self.pe_constant) <= 0:
            raise CostModelError("error budget entries must be positive")
        if self.eps_Q + self.eps_P > self.eps_total * (1 + 1e-12):
            raise CostModelError(
                f"eps_Q + eps_P = {self.eps_Q + self.eps_P} exceeds eps_total = {self.eps_total}"
            )

    @classmethod
    def split(cls, eps_total: float, share_Q: float, pe_constant: float = 0.5) -> "ErrorBudget":
        """Budget with ``share_Q`` of ``eps_total`` assigned to qubitization."""
        return cls(eps_total, share_Q * eps_total, (1.0 - share_Q) * eps_total, pe_constant)


@dataclass(frozen=True)
class ModelConstants:
    """Named constants of the composite qubitization model.

    The multiplicities record how often each block appears in one walk step.
    ``lambda_grid`` selects the fan-outs scanned by the optimizers: powers of
    two (a swap network over address bits) or every integer.
    """

    c_sel: int = 4
    c_ref: int = 16
    c_cmp: int = 16
    c_cmp_depth: int = 4
    c_sel_depth: int = 2
    c_ref_depth: int = 2
    c_anc: int = 3
    mu_cap: int = 32
    toffoli_t_count: int = 4
    toffoli_t_depth: int = 1
    rotation_lookup_uses: int = 2
    rotation_uses: int = 4
    prepare_R_uses: int = 4
    prepare_M_uses: int = 8
    lambda_grid: str = "pow2"

    def __post_init__(self):
        if self.lambda_grid not in ("pow2", "integer"):
            raise CostModelError(f"lambda_grid must be 'pow2' or 'integer', got {self.lambda_grid!r}")


DEFAULT_CONSTANTS = ModelConstants()


@dataclass(frozen=True)
class LambdaAssignment:
    values: dict[str, int]
    strategy: str = "min-count"

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise CostModelError(f"unknown lambda strategy {self.strategy!r}")
        for site, lam in self.values.items():
            if int(lam) < 1:
                raise CostModelError(f"lambda for {site} must be >= 1, got {lam}")

    def __getitem__(self, site: str) -> int:
        return self.values[site]


@dataclass(frozen=True)
class Component:
    """One subroutine of the walk step; ``count``/``depth`` are per use."""

    label: str
    count: int
    depth: int
    qubits: int
    uses: int = 1

    @property
    def total_count(self) -> int:
        return self.count * self.uses

    @property
    def total_depth(self) -> int:
        return self.depth * self.uses


@dataclass(frozen=True)
class QubitizationCost:
    components: tuple[Component, ...]
    n_TQ: int
    D_TQ: int
    n_L: int
    beta: int
    mu: int


@dataclass(frozen=True)
class BreakdownRow:
    label: str
    t_count: int
    t_depth: int
    qubits: int
    volume_percent: float


@dataclass(frozen=True)
class TracePoint:
    share_Q: float
    n_T: int
    D_T: int
    n_L: int
    lambdas: dict[str, int]


@dataclass(frozen=True)
class CostReport:
    instance: MolecularInstance
    objective: str
    budget: ErrorBudget
    beta: int
    lambdas: LambdaAssignment
    pe_iterations: int
    n_TQ: int
    D_TQ: int
    n_T: int
    D_T: int
    n_L: int
    breakdown: tuple[BreakdownRow, ...]
    trace: tuple[TracePoint, ...] = field(default=(), repr=False)

    @property
    def V_n(self) -> int:
        return self.n_L * self.n_T

    @property
    def V_D(self) -> int:
        return self.n_L * self.D_T

    @property
    def eps_Q(self) -> float:
        return self.budget.eps_Q

    @property
    def eps_P(self) -> float:
        return self.budget.eps_P

    @property
    def count_depth_ratio(self) -> float:
        return self.n_T / self.D_T


def _ceil_log2(x: int) -> int:
    return 0 if x <= 1 else (int(x) - 1).bit_length()


def qrom_tcount(K: int, b: int, lam: int) -> int:
    """Select-swap data lookup cost ``ceil(K/lam) + b*(lam-1)``."""
    if K < 1 or b < 1 or lam < 1:
        raise CostModelError(f"qrom_tcount needs K, b, lam >= 1 (got {K}, {b}, {lam})")
    return -(-K // lam) + b * (lam - 1)


def qrom_tdepth(K: int, lam: int) -> int:
    """Select-swap lookup depth ``ceil(K/lam) + ceil(log2 lam)``; independent of word size."""
    if K < 1 or lam < 1:
        raise CostModelError(f"qrom_tdepth needs K, lam >= 1 (got {K}, {lam})")
    return -(-K // lam) + _ceil_log2(lam)


def beta_bits(N: int, alpha: float, eps_Q: float) -> int:
    """Bits of precision per rotation angle."""
    if N <= 0 or alpha <= 0 or eps_Q <= 0:
        raise CostModelError("beta_bits needs positive inputs")
    return math.ceil(5.652 + math.log2(N * alpha / eps_Q))


def pe_iterations(alpha: float, eps_P: float, P: float = 0.5) -> int:
    """Number of walk-operator applications in phase estimation."""
    if alpha <= 0 or eps_P <= 0 or P <= 0:
        raise CostModelError("pe_iterations needs positive inputs")
    return math.ceil(alpha * math.pi * P / eps_P)


def keep_bits(eps_Q: float, constants: ModelConstants = DEFAULT_CONSTANTS) -> int:
    """Keep-probability bits used by the alias-sampling comparators."""
    return max(1, min(constants.mu_cap, math.ceil(math.log2(1.0 / eps_Q))))


def qrom_sites(inst: MolecularInstance, beta: int, mu: int) -> dict[str, tuple[int, int]]:
    """Entries ``K`` and word size ``b`` of every lookup in the walk step."""
    return {
        ROTATION_LOOKUP: (inst.M + inst.N, inst.N * beta),
        PREPARE_R: (inst.R, _ceil_log2(inst.R) + mu),
        PREPARE_M: (inst.M, _ceil_log2(inst.M) + mu),
    }


def _prepare_component(label, K, b, lam, mu, uses, c: ModelConstants) -> Component:
    count = (
        c.toffoli_t_count * qrom_tcount(K, b, lam)
        + c.c_cmp * mu
        + 4 * _ceil_log2(K)
    )
    depth = (
        c.toffoli_t_depth * qrom_tdepth(K, lam)
        + c.c_cmp_depth * _ceil_log2(mu)
        + (1 if K > 1 else 0)
    )
    return Component(label, count, depth, lam * b, uses)


def qubitization_cost(
    inst: MolecularInstance,
    budget: ErrorBudget,
    lambdas: LambdaAssignment,
    constants: ModelConstants = DEFAULT_CONSTANTS,
) -> QubitizationCost:
    """Per-walk-step T-count, T-depth and qubit count."""
    c = constants
    N = inst.N
    beta = beta_bits(N, inst.alpha, budget.eps_Q)
    mu = keep_bits(budget.eps_Q, c)
    sites = qrom_sites(inst, beta, mu)
    for site, (K, _) in sites.items():
        lam = lambdas.values.get(site, 1)
        if lam > K:
            raise CostModelError(f"lambda={lam} for {site} exceeds its {K} entries")

    K_rot, b_rot = sites[ROTATION_LOOKUP]
    lam_rot = lambdas.values.get(ROTATION_LOOKUP, 1)
    n_logN = _ceil_log2(N)
    components = (
        Component(
            ROTATION_LOOKUP,
            c.toffoli_t_count * qrom_tcount(K_rot, b_rot, lam_rot),
            c.toffoli_t_depth * qrom_tdepth(K_rot, lam_rot),
            lam_rot * b_rot,
            c.rotation_lookup_uses,
        ),
        Component(
            "basis_rotations",
            2 * (N - 1) * beta,
            2 * n_logN * beta,
            N,
            c.rotation_uses,
        ),
        _prepare_component(
            PREPARE_R, *sites[PREPARE_R], lambdas.values.get(PREPARE_R, 1), mu,
            c.prepare_R_uses, c,
        ),
        _prepare_component(
            PREPARE_M, *sites[PREPARE_M], lambdas.values.get(PREPARE_M, 1), mu,
            c.prepare_M_uses, c,
        ),
        Component(
            "select_reflection",
            c.c_sel * N + c.c_ref * _ceil_log2(inst.M + N),
            c.c_sel_depth * n_logN + c.c_ref_depth * _ceil_log2(inst.M + N),
            2 * N,
        ),
    )
    n_TQ = sum(comp.total_count for comp in components)
    D_TQ = sum(comp.total_depth for comp in components)
    n_L = N * beta * lam_rot + 2 * N + c.c_anc * math.ceil(math.log2(N / budget.eps_Q))
    return QubitizationCost(components, n_TQ, D_TQ, n_L, beta, mu)


def lambda_scan_limit(K: int, b: int) -> int:
    return min(K, math.ceil(4 * math.sqrt(K / b)) + 16)


def lambda_candidates(upper: int, grid: str = "pow2") -> list[int]:
    """Fan-outs in ``[1, upper]`` allowed by ``grid``."""
    if grid == "integer":
        return list(range(1, upper + 1))
    out, lam = [], 1
    while lam <= upper:
        out.append(lam)
        lam *= 2
    return out


def _argmin(values: Callable[[int], float], upper: int, grid: str = "pow2") -> int:
    best, best_val = 1, values(1)
    for lam in lambda_candidates(upper, grid)[1:]:
        val = values(lam)
        if val < best_val:
            best, best_val = lam, val
    return best


def optimize_lambda_count(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: ModelConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Each lookup takes the fan-out minimizing its own select-swap count.

    Ties go to the smaller lambda.
    """
    beta = beta_bits(inst.N, inst.alpha, budget.eps_Q)
    mu = keep_bits(budget.eps_Q, constants)
    values = {}
    for site, (K, b) in qrom_sites(inst, beta, mu).items():
        values[site] = _argmin(
            lambda lam: qrom_tcount(K, b, lam), lambda_scan_limit(K, b), constants.lambda_grid
        )
    return LambdaAssignment(values, "min-count")


def optimize_lambda_depth_independent(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: ModelConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Each lookup minimizes its own depth times its own qubit footprint."""
    beta = beta_bits(inst.N, inst.alpha, budget.eps_Q)
    mu = keep_bits(budget.eps_Q, constants)
    values = {}
    for site, (K, b) in qrom_sites(inst, beta, mu).items():
        values[site] = _argmin(
            lambda lam: qrom_tdepth(K, lam) * (lam * b + _ceil_log2(K)),
            lambda_scan_limit(K, b),
            constants.lambda_grid,
        )
    return LambdaAssignment(values, "min-depth-independent")


def optimize_lambda_depth_contingent(
    inst: MolecularInstance,
    budget: ErrorBudget,
    constants: ModelConstants = DEFAULT_CONSTANTS,
) -> LambdaAssignment:
    """Stretch every lookup to the largest ancilla block already allocated.

    The site whose min-count lambda times word size is largest sets
    ``Q_max``; every other site gets ``floor(Q_max / b)`` (at least 1, at most
    its entry count), so no extra qubits are needed.
    """
    base = optimize_lambda_count(inst, budget, constants)
    beta = beta_bits(inst.N, inst.alpha, budget.eps_Q)
    mu = keep_bits(budget.eps_Q, constants)
    sites = qrom_sites(inst, beta, mu)
    q_max_site = max(sites, key=lambda s: (base[s] * sites[s][1], s == ROTATION_LOOKUP))
    q_max = base[q_max_site] * sites[q_max_site][1]
    values = {}
    for site, (K, b) in sites.items():
        if site == q_max_site:
            values[site] = base[site]
        else:
            values[site] = min(K, max(1, q_max // b))
    return LambdaAssignment(values, "min-depth-contingent")


STRATEGY_FUNCS = {
    "min-count": optimize_lambda_count,
    "min-depth-independent": optimize_lambda_depth_independent,
    "min-depth-contingent": optimize_lambda_depth_contingent,
}

OBJECTIVE_STRATEGY = {"Vn": "min-count", "VD": "min-depth-contingent"}


def _evaluate(inst, eps_total, share_Q, objective, strategy, constants, pe_constant, qubit_budget):
    budget = ErrorBudget.split(eps_total, share_Q, pe_constant)
    lambdas = STRATEGY_FUNCS[strategy](inst, budget, constants)
    q = qubitization_cost(inst, budget, lambdas, constants)
    n_L = q.n_L
    if strategy == "min-depth-contingent":
        # contingent lambdas borrow ancillae already allocated by the min-count layout
        base = optimize_lambda_count(inst, budget, constants)
        n_L = qubitization_cost(inst, budget, base, constants).n_L
    iters = pe_iterations(inst.alpha, budget.eps_P, pe_constant)
    n_T, D_T = q.n_TQ * iters, q.D_TQ * iters
    score = n_L * (n_T if objective == "Vn" else D_T)
    if qubit_budget is not None:
        if n_L > qubit_budget:
            score = math.inf
        else:
            n_L = qubit_budget
            score = n_L * (n_T if objective == "Vn" else D_T)
    return score, budget, lambdas, q, n_L, iters


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def total_cost(
    inst: MolecularInstance,
    eps_total: float = 1e-3,
    objective: Objective = "Vn",
    constants: ModelConstants = DEFAULT_CONSTANTS,
    pe_constant: float = 0.5,
    strategy: str | None = None,
    share_bounds: tuple[float, float] = (0.01, 0.99),
    qubit_budget: int | None = None,
) -> CostReport:
    """Optimize the qubitization/phase-estimation error split and lambdas.

    Golden-section search over the log-odds of the qubitization share,
    followed by a local grid around the best point.  The returned report is
    the best point of the full search trace.

    With the contingent strategy the lookups only borrow qubits that a
    min-count layout already holds.  Unless ``qubit_budget`` is given, that
    allocation is the one of the ``Vn``-optimal report, so both objectives
    report the same ``n_L``; splits whose min-count layout would need more
    qubits are rejected.
    """
    if eps_total <= 0:
        raise CostModelError("eps_total must be positive")
    if objective not in OBJECTIVE_STRATEGY:
        raise CostModelError(f"objective must be 'Vn' or 'VD', got {objective!r}")
    strategy = strategy or OBJECTIVE_STRATEGY[objective]
    seeds = []
    if strategy == "min-depth-contingent" and qubit_budget is None:
        reference = total_cost(
            inst, eps_total, "Vn", constants, pe_constant, "min-count", share_bounds
        )
        qubit_budget = reference.n_L
        seeds.append(reference.budget.eps_Q / eps_total)
    trace: dict[float, tuple] = {}

    def f(u: float) -> float:
        share = 1.0 / (1.0 + math.exp(-u))
        share = round(share, 12)
        if share not in trace:
            trace[share] = _evaluate(
                inst, eps_total, share, objective, strategy, constants, pe_constant, qubit_budget
            )
        return trace[share][0]

    lo = math.log(share_bounds[0] / (1 - share_bounds[0]))
    hi = math.log(share_bounds[1] / (1 - share_bounds[1]))
    a, b = lo, hi
    x1 = b - _GOLDEN * (b - a)
    x2 = a + _GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while (b - a) > 1e-3 * (hi - lo):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _GOLDEN * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _GOLDEN * (b - a)
            f2 = f(x2)
    for share in seeds:
        f(math.log(share / (1 - share)))

    centre = min(trace, key=lambda s: (trace[s][0], s))
    u0 = math.log(centre / (1 - centre))
    for step in np.linspace(-0.5, 0.5, 21):
        f(min(hi, max(lo, u0 + step)))
    for u in np.linspace(lo, hi, 9):
        f(u)

    best = min(trace, key=lambda s: (trace[s][0], s))
    score, budget, lambdas, q, n_L, iters = trace[best]
    report_trace = tuple(
        TracePoint(s, v[3].n_TQ * v[5], v[3].D_TQ * v[5], v[4], dict(v[2].values))
        for s, v in sorted(trace.items())
    )
    return CostReport(
        instance=inst,
        objective=objective,
        budget=budget,
        beta=q.beta,
        lambdas=lambdas,
        pe_iterations=iters,
        n_TQ=q.n_TQ,
        D_TQ=q.D_TQ,
        n_T=q.n_TQ * iters,
        D_T=q.D_TQ * iters,
        n_L=n_L,
        breakdown=_breakdown(q),
        trace=report_trace,
    )


def _breakdown(q: QubitizationCost) -> tuple[BreakdownRow, ...]:
    total = q.n_TQ
    return tuple(
        BreakdownRow(
            comp.label,
            comp.total_count,
            comp.total_depth,
            comp.qubits,
            100.0 * comp.total_count / total if total else 100.0 / len(q.components),
        )
        for comp in q.components
    )


def volume_breakdown(report: CostReport | QubitizationCost) -> tuple[BreakdownRow, ...]:
    """Share of the walk-step volume ``n_T * n_L`` per subroutine.

    All subroutines share the same qubit register, so a subroutine's volume
    share equals its share of the T-count, with repeated blocks counted once
    per use.
    """
    if isinstance(report, CostReport):
        return report.breakdown
    return _breakdown(report)


def with_constants(**overrides) -> ModelConstants:
    return replace(DEFAULT_CONSTANTS, **overrides)

"""Fault-tolerant footprint and runtime from logical counts.

Logical error per operation follows ``eps(d) = A * exp(-B d)``.  The data
block holds ``n_L`` logical qubits of ``2 d^2`` resource-state generators
(RSGs) each, the magic state factories add ``n_distill`` RSGs, and every T
gate takes ``d`` clock cycles.  Interleaving by ``L`` divides the RSG count and
multiplies the cycle count by the same factor.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

MAX_INTERLEAVING = 5000


class OverheadWarning(UserWarning):
    """Parameters outside the modelled range."""


@dataclass(frozen=True)
class NoiseRegime:
    """Sub-threshold scaling ``A exp(-B d)`` of one physical noise point."""

    label: str
    A: float
    B: float
    p_P: float | None = None
    p_E: float | None = None
    magic_input_error: float = 1e-3

    def __post_init__(self):
        if not (self.A > 0 and self.B > 0):
            raise ValueError(f"regime {self.label!r}: A and B must be positive")
        for name in ("p_P", "p_E", "magic_input_error"):
            value = getattr(self, name)
            if value is not None and not 0 <= value < 1:
                raise ValueError(f"regime {self.label!r}: {name} must lie in [0, 1)")


HIGH = NoiseRegime("high", A=0.4, B=1.1, p_P=9.4e-4, p_E=9.4e-3)
MODERATE = NoiseRegime("moderate", A=0.5, B=1.6, p_P=4.7e-4, p_E=4.7e-3)
REGIMES = {"high": HIGH, "moderate": MODERATE}


def regime(label: str, A: float | None = None, B: float | None = None) -> NoiseRegime:
    """Named regime, or a custom one when ``A`` and ``B`` are given."""
    if A is not None or B is not None:
        if A is None or B is None:
            raise ValueError("custom regime needs both A and B")
        return NoiseRegime("custom", A, B)
    try:
        return REGIMES[label]
    except KeyError:
        raise ValueError(f"unknown regime {label!r}; expected one of {sorted(REGIMES)}") from None


@dataclass(frozen=True)
class FtParams:
    """Architecture parameters.

    Attributes:
        eps_total: Failure budget of the whole computation.
        f_RSG: RSG clock rate in Hz.
        L_intl: Interleaving ratio.
        n_factories: Number of magic state factories.
        c_distill: RSGs per factory in units of ``d^2``.
        surgery_error_share: Fraction of the per-gate budget granted to the
            data-block operation that consumes a magic state; the distilled
            state itself takes the rest.
    """

    eps_total: float = 1e-2
    f_RSG: float = 1e9
    L_intl: int = 1
    n_factories: int = 2
    c_distill: float = 120.0
    surgery_error_share: float = 0.5

    def __post_init__(self):
        if min(self.eps_total, self.f_RSG, self.L_intl, self.n_factories, self.c_distill) <= 0:
            raise ValueError("FtParams entries must be positive")
        if not 0 < self.surgery_error_share <= 1:
            raise ValueError("surgery_error_share must lie in (0, 1]")
        if self.L_intl > MAX_INTERLEAVING:
            warnings.warn(
                f"interleaving ratio {self.L_intl} exceeds {MAX_INTERLEAVING}",
                OverheadWarning,
                stacklevel=2,
            )


@dataclass(frozen=True)
class FtReport:
    regime: NoiseRegime
    params: FtParams
    n_T: float
    n_L: int
    eps_gate: float
    d: int
    n_distill: int
    n_RSG: int
    n_cycles: float
    t_algo: float
    msd_ratio: float
    distance_warning: bool = field(default=False)

    @property
    def t_algo_hours(self) -> float:
        return self.t_algo / 3600.0

    @property
    def idle_rsgs_per_qubit(self) -> int:
        return idle_qubit_footprint(self.d)


def gate_budget(eps_total: float, n_T: float, n_L: float) -> float:
    """Largest tolerable error per gate, ``eps_total / (n_T n_L)``."""
    if min(eps_total, n_T, n_L) <= 0:
        raise ValueError("gate_budget needs positive inputs")
    return eps_total / (n_T * n_L)


def code_distance(regime: NoiseRegime, eps_gate: float) -> tuple[int, bool]:
    """Smallest ``d`` with ``A exp(-B d) <= eps_gate``.

    Returns:
        ``(d, warning)``; ``warning`` is set when ``eps_gate >= A`` so that no
        protection is needed and ``d`` is clamped to 1.
    """
    if eps_gate <= 0:
        raise ValueError("eps_gate must be positive")
    if eps_gate >= regime.A:
        return 1, True
    return max(1, math.ceil(math.log(regime.A / eps_gate) / regime.B)), False


def distillation_footprint(d: int, params: FtParams = FtParams()) -> int:
    if d < 1:
        raise ValueError("d must be >= 1")
    return math.ceil(params.n_factories * params.c_distill * d * d)


def footprint(n_L: int, d: int, n_distill: int, L_intl: int = 1) -> int:
    """RSG count ``ceil((2 d^2 n_L + n_distill) / L_intl)``."""
    if n_L < 1 or d < 1 or n_distill < 0 or L_intl < 1:
        raise ValueError("footprint needs n_L, d, L_intl >= 1 and n_distill >= 0")
    return -(-(2 * d * d * n_L + n_distill) // L_intl)


def runtime(n_T: float, d: int, f_RSG: float = 1e9, L_intl: int = 1) -> tuple[float, float]:
    """Clock cycles ``n_T d L_intl`` and wall time in seconds."""
    if n_T <= 0 or d < 1 or f_RSG <= 0 or L_intl < 1:
        raise ValueError("runtime needs positive inputs")
    n_cycles = n_T * d * L_intl
    return n_cycles, n_cycles / f_RSG


def idle_qubit_footprint(d: int) -> int:
    """RSGs that keep one logical qubit idling without interleaving."""
    if d < 1:
        raise ValueError("d must be >= 1")
    return d * d


def estimate(n_T: float, n_L: int, regime: NoiseRegime, params: FtParams = FtParams()) -> FtReport:
    """Full overhead report for one set of logical counts."""
    eps_gate = gate_budget(params.eps_total, n_T, n_L)
    d, warn = code_distance(regime, eps_gate * params.surgery_error_share)
    n_distill = distillation_footprint(d, params)
    n_rsg = footprint(n_L, d, n_distill, params.L_intl)
    n_cycles, t_algo = runtime(n_T, d, params.f_RSG, params.L_intl)
    msd = n_distill / (2 * d * d * n_L + n_distill)
    return FtReport(regime, params, n_T, n_L, eps_gate, d, n_distill, n_rsg, n_cycles, t_algo, msd, warn)


def tradeoff_curve(
    n_T: float,
    n_L: int,
    regime: NoiseRegime,
    params: FtParams = FtParams(),
    L_values=(1, 2, 5, 10, 20, 50, 100, 200, 500, 1000),
) -> list[FtReport]:
    """Reports along a sweep of interleaving ratios; distance does not change with ``L``."""
    out = []
    for L in L_values:
        if not 1 <= L <= MAX_INTERLEAVING:
            raise ValueError(f"interleaving ratio {L} outside [1, {MAX_INTERLEAVING}]")
        out.append(estimate(n_T, n_L, regime, replace(params, L_intl=int(L))))
    return out


CSV_COLUMNS = (
    "name", "basis", "regime", "A", "B", "eps_total", "d", "n_L", "n_T", "L_intl",
    "n_distill", "n_RSG", "n_cycles", "t_algo_hours", "msd_ratio",
)


def csv_row(name: str, basis: str, report: FtReport) -> dict[str, str]:
    """One output row; hours carry three significant digits."""
    return {
        "name": name,
        "basis": basis,
        "regime": report.regime.label,
        "A": f"{report.regime.A:g}",
        "B": f"{report.regime.B:g}",
        "eps_total": f"{report.params.eps_total:g}",
        "d": str(report.d),
        "n_L": str(report.n_L),
        "n_T": f"{report.n_T:.6g}",
        "L_intl": str(report.params.L_intl),
        "n_distill": str(report.n_distill),
        "n_RSG": str(report.n_RSG),
        "n_cycles": f"{report.n_cycles:.6g}",
        "t_algo_hours": f"{report.t_algo_hours:.3g}",
        "msd_ratio": f"{report.msd_ratio:.4g}",
    }

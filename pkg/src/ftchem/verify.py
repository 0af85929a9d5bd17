"""Oracle-backed verification suites for the circuit constructions and the factorizer."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import factorizer, gizens, oracle, ppm
from .pauli import CliffordFrame, PauliString, frame_lookup, frame_update

SUITES = ("gizens", "ppm", "factorizer")


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str) -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def lines(self) -> list[str]:
        return [f"[{'PASS' if c.passed else 'FAIL'}] {self.suite}: {c.name}: {c.detail}" for c in self.checks]


# --- gizens -------------------------------------------------------------------

def gizens_suite(seed: int = 0, sizes=(2, 4, 8), samples: int = 100) -> SuiteReport:
    """Tree and ladder against the Majorana oracle for random signed unit vectors."""
    rep = SuiteReport("gizens", seed)
    rng = np.random.default_rng(seed)
    for n in sizes:
        worst_tree = worst_ladder = worst_pair = 0.0
        shape_ok = True
        for _ in range(samples):
            u = gizens.random_unit_vector(n, rng)
            tree, ladder = gizens.gizens_tree(u), gizens.givens_ladder(u)
            worst_tree = max(worst_tree, gizens.verify_basis_change(tree, u).residual)
            worst_ladder = max(worst_ladder, gizens.verify_basis_change(ladder, u).residual)
            pair = gizens.conjugated_gamma(tree, 0) - gizens.conjugated_gamma(ladder, 0)
            worst_pair = max(worst_pair, float(np.sqrt((abs(pair.data) ** 2).sum())))
            shape_ok &= (
                tree.depth == math.ceil(math.log2(n))
                and tree.count == n - 1
                and ladder.count == n - 1
                and ladder.depth == n - 1
                and tree.layers_disjoint()
            )
        tol = gizens.RESIDUAL_TOL
        rep.add(f"N={n} tree residual", worst_tree <= tol, f"max {worst_tree:.3e} over {samples}")
        rep.add(f"N={n} ladder residual", worst_ladder <= tol, f"max {worst_ladder:.3e} over {samples}")
        rep.add(f"N={n} ladder/tree agreement", worst_pair <= tol, f"max {worst_pair:.3e}")
        rep.add(
            f"N={n} shape",
            shape_ok,
            f"tree depth {math.ceil(math.log2(n))}, {n - 1} rotations each",
        )
    return rep


# --- ppm ------------------------------------------------------------------------

def all_paulis(n: int):
    """Every non-identity Hermitian Pauli string on ``n`` qubits with a + sign."""
    for letters in itertools.product("IXYZ", repeat=n):
        if set(letters) != {"I"}:
            yield PauliString.from_label("+" + "".join(letters))


def check_ppm_circuits(n: int, states_per_pauli: int, rng: np.random.Generator) -> tuple[float, float, float]:
    """Worst probability error, worst post-state infidelity and worst ``|Y>`` infidelity."""
    worst_p = worst_f = worst_y = 0.0
    for p in all_paulis(n):
        circuits = (ppm.ppm_circuit(p), ppm.ppm_circuit_no_phase(p))
        for _ in range(states_per_pauli):
            psi = oracle.random_state(n, rng)
            direct, _ = oracle.project(psi, p, 1)
            for c in circuits:
                worst_p = max(worst_p, abs(ppm.ppm_probability(c, psi) - direct))
                run = ppm.run_ppm_circuit(c, psi, rng)
                _, post = oracle.project(psi, p, run.outcome)
                worst_f = max(worst_f, 1.0 - oracle.fidelity(post, run.data))
                if run.y_fidelity is not None:
                    worst_y = max(worst_y, 1.0 - run.y_fidelity)
    return worst_p, worst_f, worst_y


def random_clifford_frame(n: int, depth: int, rng: np.random.Generator):
    """Frame and dense unitary of a random product of ``exp(i k pi/4 P)``."""
    frame = CliffordFrame.identity(n)
    c = np.eye(1 << n, dtype=complex)
    for _ in range(depth):
        p = _random_hermitian(n, rng)
        k = int(rng.integers(0, 4))
        frame = frame_update(frame, k, p)
        c = c @ oracle.ppr_matrix(p, k * math.pi / 4)
    return frame, c


def _random_hermitian(n: int, rng: np.random.Generator) -> PauliString:
    while True:
        x, z = int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n))
        if x or z:
            p = PauliString(n, x, z, bin(x & z).count("1") + 2 * int(rng.integers(0, 2)))
            return p


def check_frames(pairs: int, max_n: int, rng: np.random.Generator) -> tuple[int, bool]:
    """Random (frame, correction) pairs against dense conjugation.

    Returns:
        Number of mismatching pairs and whether symplectic validity held throughout.
    """
    bad, valid = 0, True
    for _ in range(pairs):
        n = int(rng.integers(1, max_n + 1))
        frame, c = random_clifford_frame(n, int(rng.integers(0, 6)), rng)
        p = _random_hermitian(n, rng)
        k = int(rng.integers(0, 4))
        new = frame_update(frame, k, p)
        c_new = c @ oracle.ppr_matrix(p, k * math.pi / 4)
        valid &= new.is_valid()
        gens = [PauliString.single(n, j, "X") for j in range(n)] + [PauliString.single(n, j, "Z") for j in range(n)]
        q = _random_hermitian(n, rng)
        pairs_to_check = list(zip(new.rows, gens)) + [(frame_lookup(new, q), q)]
        if any(not np.allclose(img.matrix(), oracle.conjugate(c_new, g), atol=1e-10) for img, g in pairs_to_check):
            bad += 1
    return bad, valid


@dataclass(frozen=True)
class ProgramCheck:
    p_value: float
    impossible: int
    min_fidelity: float


def check_compiled_program(program, n: int, shots: int, seed: int, fidelity_shots: int = 20) -> ProgramCheck:
    """Compiled-stream outputs against the exact distribution of the direct run.

    Also projects the direct run onto the outcomes of the first
    ``fidelity_shots`` shots and compares data states.
    """
    exact = ppm.program_distribution(program, n)
    stream = ppm.compile_program(program, n)
    counts: Counter = Counter()
    min_fid = 1.0
    for shot in range(shots):
        res = ppm.execute(stream, seed=seed * 100003 + shot)
        outs = res.outcomes(stream.outputs)
        counts[outs] += 1
        if shot < fidelity_shots:
            _, direct = ppm.simulate_program(program, n, forced=outs)
            data, _ = oracle.split_product(res.logical_state(), n)
            min_fid = min(min_fid, oracle.fidelity(data / np.linalg.norm(data), direct))
    keys = [k for k, p in exact.items() if p > 1e-12]
    impossible = sum(v for k, v in counts.items() if k not in keys)
    if len(keys) < 2:
        p_value = 1.0
    else:
        observed = np.array([counts[k] for k in keys], dtype=float)
        expected = np.array([exact[k] for k in keys]) * shots
        expected *= observed.sum() / expected.sum()
        p_value = float(stats.chisquare(observed, expected).pvalue)
    return ProgramCheck(p_value, impossible, min_fid)


def ppm_suite(seed: int = 0, states_per_pauli: int = 100, frame_pairs: int = 1000,
              programs: int = 3, shots: int = 500) -> SuiteReport:
    rep = SuiteReport("ppm", seed)
    rng = np.random.default_rng(seed)
    worst_p, worst_f, worst_y = check_ppm_circuits(3, states_per_pauli, rng)
    rep.add("CAT circuits vs direct measurement (3 qubits)", worst_p <= 1e-10 and worst_f <= 1e-10,
            f"max |dp| {worst_p:.2e}, max infidelity {worst_f:.2e}")
    rep.add("|Y> register restored", worst_y <= 1e-10, f"max infidelity {worst_y:.2e}")
    bad, valid = check_frames(frame_pairs, 5, rng)
    rep.add("frame update and lookup vs dense conjugation", bad == 0 and valid,
            f"{bad} mismatches in {frame_pairs} pairs, symplectic {'kept' if valid else 'broken'}")
    for i in range(programs):
        prog = ppm.random_program(4, 20, rng, n_measure=4)
        res = check_compiled_program(prog, 4, shots, seed + i)
        ok = res.p_value > 1e-3 and res.impossible == 0 and res.min_fidelity > 1 - 1e-10
        rep.add(f"compiled program {i} vs direct run", ok,
                f"chi2 p={res.p_value:.3f}, impossible {res.impossible}, min fidelity {res.min_fidelity:.12f}")
    return rep


# --- factorizer ----------------------------------------------------------------

def factorizer_suite(seed: int = 0, samples: int = 20, max_n: int = 8) -> SuiteReport:
    rep = SuiteReport("factorizer", seed)
    rng = np.random.default_rng(seed)
    zero = factorizer.double_factorize(np.zeros((3, 3, 3, 3)))
    rep.add("zero tensor", zero.rank_R == 0 and zero.alpha == 0.0, f"R={zero.rank_R}, alpha={zero.alpha}")
    worst_exact, bound_ok, monotone = 0.0, True, True
    for _ in range(samples):
        n = int(rng.integers(2, max_n + 1))
        h = factorizer.random_psd_tensor(n, int(rng.integers(1, n * n + 1)), rng)
        f = factorizer.double_factorize(h)
        worst_exact = max(worst_exact, factorizer.reconstruction_error(f, h)[0])
        last = f.rank_M
        for eps in (1e-3, 1e-2, 1e-1, 1.0, 10.0):
            g = factorizer.truncate(f, eps)
            err = factorizer.reconstruction_error(g, h)[0]
            bound_ok &= err <= g.truncation_error_bound + 1e-10 and g.truncation_error_bound <= eps
            monotone &= g.rank_M <= last
            last = g.rank_M
    rep.add("untruncated reconstruction", worst_exact <= 1e-8, f"max abs error {worst_exact:.2e} over {samples}")
    rep.add("truncation error within bound", bound_ok, "eps in {1e-3 .. 10}")
    rep.add("truncation monotone in eps", monotone, "rank never grows with eps")
    return rep


def run_suite(name: str, seed: int = 0) -> list[SuiteReport]:
    """Run one suite by name, or all of them for ``"all"``."""
    runners = {"gizens": gizens_suite, "ppm": ppm_suite, "factorizer": factorizer_suite}
    if name == "all":
        return [runners[s](seed) for s in SUITES]
    if name not in runners:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES + ('all',)}")
    return [runners[name](seed)]

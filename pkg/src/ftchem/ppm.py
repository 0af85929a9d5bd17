"""Pauli product measurements, Clifford-frame compilation and layer scheduling.

Programs are Clifford+T sequences of ``PPR_T(P) = exp(i pi/8 P)``,
``CLIFFORD(k, P) = exp(i k pi/4 P)``, Pauli measurements and qubit
initialisations.  :func:`compile_program` turns every ``PPR_T`` into magic
state consumption by a Pauli product measurement and defers all Cliffords to a
runtime frame; :func:`execute` runs such a stream on the statevector oracle.

Conditional corrections fire when the measurement they reference returns -1.
The magic state is ``|T> = exp(i pi/8 Z)|+> = (|0> + e^{-i pi/4}|1>)/sqrt 2`` so
that outcome +1 of ``P (x) Z_m`` leaves ``exp(i pi/8 P)`` on the data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import oracle
from .pauli import CliffordFrame, PauliError, PauliString, frame_lookup, frame_update

KINDS = ("PPR_T", "CLIFFORD", "PPM", "INIT", "DESTRUCTIVE_MEAS")
INIT_BASES = ("0", "+", "T", "Y")


class PpmError(ValueError):
    """Invalid program, stream or circuit request."""


def _require_hermitian(p: PauliString) -> None:
    if not p.is_hermitian():
        raise PpmError(f"{p} is not Hermitian")


def _require_nontrivial(p: PauliString) -> None:
    if p.is_identity():
        raise PpmError("identity Pauli has nothing to measure")
    _require_hermitian(p)


# --- CAT-state measurement circuits ---------------------------------------

@dataclass(frozen=True)
class PpmCircuit:
    """Gate-level Pauli product measurement.

    Register layout: data ``0..n-1``, CAT ancillas next, then the ``|Y>``
    register when present.  Gates are ``("h", q)``, ``("cx", c, t)``,
    ``("cz", c, t)``, ``("sdg", q)`` and ``("mx", q)``.  The declared outcome is
    ``sign`` times the joint parity of the ancilla X measurements.
    """

    pauli: PauliString
    ancillas: tuple[int, ...]
    y_register: int | None
    gates: tuple[tuple, ...]
    sign: int

    @property
    def n_data(self) -> int:
        return self.pauli.n

    @property
    def n_total(self) -> int:
        return self.n_data + len(self.ancillas) + (self.y_register is not None)

    @property
    def uses_y_register(self) -> bool:
        return any(self.y_register in g[1:] for g in self.gates if g[0] != "mx")


def _cat_gates(ancillas) -> list[tuple]:
    gates = [("h", ancillas[0])]
    gates += [("cx", a, b) for a, b in zip(ancillas, ancillas[1:])]
    return gates


def _site_gates(letter: str, anc: int, q: int, with_sdg: bool) -> list[tuple]:
    if letter == "X":
        return [("cx", anc, q)]
    if letter == "Z":
        return [("cz", anc, q)]
    gates = [("cx", anc, q), ("cz", anc, q)]
    return gates + [("sdg", anc)] if with_sdg else gates


def _sign_of(p: PauliString) -> int:
    return -1 if p.label().startswith("-") else 1


def ppm_circuit(p: PauliString) -> PpmCircuit:
    """CAT state over the support, one controlled Pauli per site, X readout."""
    _require_nontrivial(p)
    n, support = p.n, p.support
    ancillas = tuple(range(n, n + len(support)))
    gates = _cat_gates(ancillas)
    for anc, q in zip(ancillas, support):
        gates += _site_gates(p.letter(q), anc, q, with_sdg=True)
    gates += [("mx", a) for a in ancillas]
    return PpmCircuit(p, ancillas, None, tuple(gates), _sign_of(p))


def ppm_circuit_no_phase(p: PauliString) -> PpmCircuit:
    """Variant without ``S^dag``: each Y site contributes ``i``, settled by a ``|Y>`` register."""
    _require_nontrivial(p)
    n, support = p.n, p.support
    ancillas = tuple(range(n, n + len(support) + 1))
    y_reg = n + len(ancillas)
    gates = _cat_gates(ancillas)
    for anc, q in zip(ancillas, support):
        gates += _site_gates(p.letter(q), anc, q, with_sdg=False)
    n_y = p.n_y
    if n_y % 2:
        gates += _site_gates("Y", ancillas[-1], y_reg, with_sdg=False)
        n_y += 1
    gates += [("mx", a) for a in ancillas]
    sign = _sign_of(p) * (-1) ** (n_y // 2)
    return PpmCircuit(p, ancillas, y_reg, tuple(gates), sign)


Y_STATE = np.array([1.0, 1j]) / math.sqrt(2)


def _initial_state(circuit: PpmCircuit, data: np.ndarray) -> np.ndarray:
    parts = [data, oracle.basis_state(len(circuit.ancillas))]
    if circuit.y_register is not None:
        parts.append(Y_STATE)
    return oracle.tensor_states(*parts)


def _apply_gates(circuit: PpmCircuit, state: np.ndarray) -> np.ndarray:
    for g in circuit.gates:
        if g[0] in ("h", "sdg"):
            state = oracle.apply_1q(state, g[0], g[1])
        elif g[0] == "cx":
            state = oracle.apply_controlled(state, "x", g[1], g[2])
        elif g[0] == "cz":
            state = oracle.apply_controlled(state, "z", g[1], g[2])
    return state


def _x_parity(circuit: PpmCircuit) -> PauliString:
    n = circuit.n_total
    return PauliString(n, x=sum(1 << a for a in circuit.ancillas))


def ppm_probability(circuit: PpmCircuit, data: np.ndarray) -> float:
    """Exact probability that the circuit declares +1."""
    state = _apply_gates(circuit, _initial_state(circuit, data))
    prob_even, _ = oracle.project(state, _x_parity(circuit), 1)
    return prob_even if circuit.sign == 1 else 1.0 - prob_even


@dataclass(frozen=True)
class PpmRun:
    outcome: int
    data: np.ndarray
    y_fidelity: float | None


def run_ppm_circuit(circuit: PpmCircuit, data: np.ndarray, rng: np.random.Generator) -> PpmRun:
    """Sample the ancilla readout and return the declared outcome and data state."""
    state = _apply_gates(circuit, _initial_state(circuit, data))
    n = circuit.n_total
    parity = 1
    for a in circuit.ancillas:
        bit, state = oracle.measure_pauli(state, PauliString(n, x=1 << a), rng)
        parity *= bit
    data_out, rest = oracle.split_product(state, circuit.n_data)
    y_fid = None
    if circuit.y_register is not None:
        _, y_part = oracle.split_product(rest / np.linalg.norm(rest), len(circuit.ancillas))
        y_fid = oracle.fidelity(y_part / np.linalg.norm(y_part), Y_STATE)
    norm = np.linalg.norm(data_out)
    return PpmRun(circuit.sign * parity, data_out / norm, y_fid)


# --- instructions, programs and streams ------------------------------------

@dataclass(frozen=True)
class Instruction:
    """One logical instruction.

    Attributes:
        kind: One of :data:`KINDS`.
        pauli: Operand of PPR_T, CLIFFORD and PPM.
        k: Clifford power, ``exp(i k pi/4 P)``.
        qubit: Target of INIT and DESTRUCTIVE_MEAS.
        basis: INIT basis in ``0 + T Y`` or the X/Z basis of a destructive measurement.
        condition: Record index whose -1 outcome triggers this CLIFFORD.
    """

    kind: str
    pauli: PauliString | None = None
    k: int = 0
    qubit: int | None = None
    basis: str | None = None
    condition: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PpmError(f"unknown instruction kind {self.kind!r}")
        if self.kind in ("PPR_T", "CLIFFORD", "PPM"):
            if self.pauli is None:
                raise PpmError(f"{self.kind} needs a Pauli operand")
            _require_hermitian(self.pauli)
        if self.kind == "CLIFFORD" and self.k not in (0, 1, 2, 3):
            raise PpmError(f"Clifford power k={self.k} outside 0..3")
        if self.kind == "INIT" and self.basis not in INIT_BASES:
            raise PpmError(f"INIT basis {self.basis!r} not in {INIT_BASES}")
        if self.kind == "DESTRUCTIVE_MEAS" and self.basis not in ("X", "Z"):
            raise PpmError("destructive measurement basis must be X or Z")
        if self.kind in ("INIT", "DESTRUCTIVE_MEAS") and (self.qubit is None or self.qubit < 0):
            raise PpmError(f"{self.kind} needs a qubit index")


def ppr_t(p) -> Instruction:
    return Instruction("PPR_T", _p(p))


def clifford(k: int, p, condition: int | None = None) -> Instruction:
    return Instruction("CLIFFORD", _p(p), k=k % 4, condition=condition)


def ppm(p) -> Instruction:
    return Instruction("PPM", _p(p))


def init(qubit: int, basis: str) -> Instruction:
    return Instruction("INIT", qubit=qubit, basis=basis)


def destructive_meas(qubit: int, basis: str = "X") -> Instruction:
    return Instruction("DESTRUCTIVE_MEAS", qubit=qubit, basis=basis)


def _p(p) -> PauliString:
    return p if isinstance(p, PauliString) else PauliString.from_label(p)


def _program_width(program) -> int:
    widths = {ins.pauli.n for ins in program if ins.pauli is not None}
    if len(widths) > 1:
        raise PpmError(f"instructions act on different register sizes {sorted(widths)}")
    n = widths.pop() if widths else 0
    top = max((ins.qubit + 1 for ins in program if ins.qubit is not None), default=0)
    return max(n, top)


def parse_program(text: str) -> list[Instruction]:
    """Read ``T P`` / ``C k P`` / ``M P`` / ``INIT q B`` lines; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if parts[0] == "T" and len(parts) == 2:
                out.append(ppr_t(parts[1]))
            elif parts[0] == "C" and len(parts) == 3:
                k = int(parts[1])
                if k not in (0, 1, 2, 3):
                    raise PpmError(f"Clifford power {k} outside 0..3")
                out.append(clifford(k, parts[2]))
            elif parts[0] == "M" and len(parts) == 2:
                out.append(ppm(parts[1]))
            elif parts[0] == "INIT" and len(parts) == 3:
                out.append(init(int(parts[1]), parts[2]))
            else:
                raise PpmError(f"unrecognised instruction {parts[0]!r}")
        except (PpmError, PauliError, ValueError) as exc:
            raise PpmError(f"line {lineno}: {exc}") from None
    _program_width(out)
    return out


def format_program(program) -> str:
    lines = []
    for ins in program:
        if ins.kind == "PPR_T":
            lines.append(f"T {ins.pauli}")
        elif ins.kind == "CLIFFORD" and ins.condition is None:
            lines.append(f"C {ins.k} {ins.pauli}")
        elif ins.kind == "PPM":
            lines.append(f"M {ins.pauli}")
        elif ins.kind == "INIT":
            lines.append(f"INIT {ins.qubit} {ins.basis}")
        else:
            raise PpmError(f"{ins.kind} has no program text form")
    return "".join(line + "\n" for line in lines)


@dataclass
class CompiledStream:
    """Runtime instruction stream.

    Attributes:
        n_data: Program qubits.
        n_qubits: Data qubits plus the magic register slot, if any.
        instructions: INIT, PPM, DESTRUCTIVE_MEAS and CLIFFORD entries.
        outputs: Record indices of the program's own measurements.
    """

    n_data: int
    n_qubits: int
    instructions: list[Instruction] = field(default_factory=list)
    outputs: list[int] = field(default_factory=list)

    @property
    def n_measurements(self) -> int:
        return sum(ins.kind in ("PPM", "DESTRUCTIVE_MEAS") for ins in self.instructions)

    def ppm_paulis(self) -> list[PauliString]:
        return [ins.pauli for ins in self.instructions if ins.kind == "PPM"]

    def to_text(self) -> str:
        lines = [f"# qubits {self.n_qubits} data {self.n_data}"]
        for ins in self.instructions:
            if ins.kind == "INIT":
                lines.append(f"INIT {ins.qubit} {ins.basis}")
            elif ins.kind == "PPM":
                lines.append(f"PPM {ins.pauli}")
            elif ins.kind == "DESTRUCTIVE_MEAS":
                lines.append(f"DM {ins.qubit} {ins.basis}")
            else:
                cond = "" if ins.condition is None else f" if {ins.condition}"
                lines.append(f"C {ins.k} {ins.pauli}{cond}")
        return "\n".join(lines) + "\n"


class _Emitter:
    def __init__(self, n_data: int, n_qubits: int):
        self.stream = CompiledStream(n_data, n_qubits)
        self.n_records = 0

    def measure(self, ins: Instruction) -> int:
        self.stream.instructions.append(ins)
        self.n_records += 1
        return self.n_records - 1

    def emit(self, ins: Instruction) -> None:
        self.stream.instructions.append(ins)


def _widen(p: PauliString, n: int) -> PauliString:
    return p.embed(n)


def compile_program(program, n_data: int | None = None) -> CompiledStream:
    """Lower a Clifford+T program to a PPM stream with deferred Cliffords.

    Raises:
        PpmError: The program contains an instruction outside Clifford+T.
    """
    program = list(program)
    for ins in program:
        if ins.kind not in ("PPR_T", "CLIFFORD", "PPM", "INIT"):
            raise PpmError(f"{ins.kind} is not a Clifford+T program instruction")
        if ins.kind == "CLIFFORD" and ins.condition is not None:
            raise PpmError("programs may not contain conditional Cliffords")
    n = _program_width(program) if n_data is None else n_data
    needs_magic = any(ins.kind == "PPR_T" or (ins.kind == "INIT" and ins.basis == "T") for ins in program)
    n_tot = n + int(needs_magic)
    em = _Emitter(n, n_tot)
    magic = n

    def lower_t(p: PauliString) -> None:
        pw = _widen(p, n_tot)
        em.emit(init(magic, "T"))
        r = em.measure(ppm(pw * PauliString(n_tot, z=1 << magic)))
        em.emit(clifford(1, pw, condition=r))
        r = em.measure(destructive_meas(magic, "X"))
        em.emit(clifford(2, pw, condition=r))

    for ins in program:
        if ins.kind == "PPR_T":
            lower_t(ins.pauli)
        elif ins.kind == "CLIFFORD":
            if ins.k:
                em.emit(clifford(ins.k, _widen(ins.pauli, n_tot)))
        elif ins.kind == "PPM":
            em.stream.outputs.append(em.measure(ppm(_widen(ins.pauli, n_tot))))
        else:
            q = ins.qubit
            letter = {"0": "Z", "+": "X", "T": "X", "Y": "Y"}[ins.basis]
            fix = "X" if letter == "Z" else "Z"
            r = em.measure(ppm(PauliString.single(n_tot, q, letter)))
            em.emit(clifford(2, PauliString.single(n_tot, q, fix), condition=r))
            if ins.basis == "T":
                lower_t(PauliString.single(n, q, "Z"))
    return em.stream


@dataclass
class RecordEntry:
    index: int
    pauli: PauliString
    outcome: int


@dataclass
class ExecutionResult:
    record: list[RecordEntry]
    frame: CliffordFrame
    state: np.ndarray
    corrections: list[tuple[int, PauliString]]

    def outcomes(self, indices=None) -> tuple[int, ...]:
        if indices is None:
            return tuple(e.outcome for e in self.record)
        return tuple(self.record[i].outcome for i in indices)

    def logical_state(self) -> np.ndarray:
        """``C |psi_phys>`` with ``C`` the product of all applied corrections."""
        state = self.state
        for k, p in reversed(self.corrections):
            state = oracle.apply_ppr(state, p, k * math.pi / 4)
        return state


_PREP = {
    "0": np.array([1.0, 0.0], dtype=complex),
    "+": np.array([1.0, 1.0], dtype=complex) / math.sqrt(2),
    "Y": Y_STATE,
    "T": np.array([1.0, np.exp(-0.25j * math.pi)]) / math.sqrt(2),
}


def reset_qubit(state: np.ndarray, q: int, basis: str, rng: np.random.Generator) -> np.ndarray:
    """Measure ``Z_q``, flip to ``|0>`` and rotate into ``basis``."""
    n = oracle.n_qubits(state)
    bit, state = oracle.measure_pauli(state, PauliString.single(n, q, "Z"), rng)
    if bit == -1:
        state = oracle.apply_1q(state, "x", q)
    target = _PREP[basis]
    # unitary with first column equal to the target state
    u = np.array([[target[0], -np.conj(target[1])], [target[1], np.conj(target[0])]])
    return oracle.apply_1q(state, u, q)


def _frame_trivial_on(frame: CliffordFrame, q: int) -> bool:
    """True when the frame maps ``X_q`` and ``Z_q`` to themselves and no other row touches ``q``."""
    bit = 1 << q
    for j in range(frame.n):
        xr, zr = frame.xs[j], frame.zs[j]
        if j == q:
            if (xr.x, xr.z, xr.s, zr.x, zr.z, zr.s) != (bit, 0, 0, 0, bit, 0):
                return False
        elif (xr.x | xr.z | zr.x | zr.z) & bit:
            return False
    return True


def execute(stream: CompiledStream, seed: int = 0, backend: str = "statevector") -> ExecutionResult:
    """Run a compiled stream; every PPM is rewritten through the live frame first.

    Raises:
        CapacityError: The stream needs more qubits than the oracle holds.
        PpmError: Unknown backend or an instruction the runtime cannot take.
    """
    if backend != "statevector":
        raise PpmError(f"unknown backend {backend!r}")
    n = stream.n_qubits
    rng = np.random.default_rng(seed)
    state = oracle.basis_state(n)
    frame = CliffordFrame.identity(n)
    record: list[RecordEntry] = []
    corrections: list[tuple[int, PauliString]] = []
    for ins in stream.instructions:
        if ins.kind == "PPM":
            bit, state = oracle.measure_pauli(state, frame_lookup(frame, ins.pauli), rng)
            record.append(RecordEntry(len(record), ins.pauli, bit))
        elif ins.kind == "DESTRUCTIVE_MEAS":
            p = PauliString.single(n, ins.qubit, ins.basis)
            bit, state = oracle.measure_pauli(state, frame_lookup(frame, p), rng)
            record.append(RecordEntry(len(record), p, bit))
        elif ins.kind == "CLIFFORD":
            if ins.condition is not None:
                if ins.condition >= len(record):
                    raise PpmError(f"correction refers to future record {ins.condition}")
                if record[ins.condition].outcome != -1:
                    continue
            phys = frame_lookup(frame, ins.pauli)
            frame = frame_update(frame, ins.k, phys)
            corrections.append((ins.k, phys))
        elif ins.kind == "INIT":
            if not _frame_trivial_on(frame, ins.qubit):
                raise PpmError(f"INIT on qubit {ins.qubit} while the frame acts on it")
            state = reset_qubit(state, ins.qubit, ins.basis, rng)
        else:
            raise PpmError(f"{ins.kind} must be compiled before execution")
    return ExecutionResult(record, frame, state, corrections)


def simulate_program(program, n: int, seed: int = 0, forced=None) -> tuple[tuple[int, ...], np.ndarray]:
    """Direct statevector run of a program; returns measurement outcomes and the final state.

    ``forced`` optionally fixes the measurement outcomes in order, in which
    case the state is projected onto them.
    """
    rng = np.random.default_rng(seed)
    state = oracle.basis_state(n)
    outs = []
    for ins in program:
        if ins.kind == "PPR_T":
            state = oracle.apply_ppr(state, ins.pauli, math.pi / 8)
        elif ins.kind == "CLIFFORD":
            state = oracle.apply_ppr(state, ins.pauli, ins.k * math.pi / 4)
        elif ins.kind == "PPM":
            if forced is not None:
                bit = forced[len(outs)]
                prob, state = oracle.project(state, ins.pauli, bit)
                if prob == 0.0:
                    raise PpmError("forced outcome has zero probability")
            else:
                bit, state = oracle.measure_pauli(state, ins.pauli, rng)
            outs.append(bit)
        elif ins.kind == "INIT":
            state = reset_qubit(state, ins.qubit, ins.basis, rng)
        else:
            raise PpmError(f"{ins.kind} is not a program instruction")
    return tuple(outs), state


def program_distribution(program, n: int) -> dict[tuple[int, ...], float]:
    """Exact output distribution by branching on every measurement.

    INIT is treated as a reset of a qubit that is not entangled with the rest.
    """
    dist: dict[tuple[int, ...], float] = {}
    rng = np.random.default_rng(0)

    def walk(i: int, state: np.ndarray, outs: tuple, weight: float) -> None:
        if weight < 1e-15:
            return
        for j in range(i, len(program)):
            ins = program[j]
            if ins.kind == "PPM":
                for bit in (1, -1):
                    prob, post = oracle.project(state, ins.pauli, bit)
                    if prob > 0:
                        walk(j + 1, post, outs + (bit,), weight * prob)
                return
            if ins.kind == "PPR_T":
                state = oracle.apply_ppr(state, ins.pauli, math.pi / 8)
            elif ins.kind == "CLIFFORD":
                state = oracle.apply_ppr(state, ins.pauli, ins.k * math.pi / 4)
            else:
                state = reset_qubit(state, ins.qubit, ins.basis, rng)
        dist[outs] = dist.get(outs, 0.0) + weight

    walk(0, oracle.basis_state(n), (), 1.0)
    return dist


def format_record(record) -> str:
    return "".join(f"{e.index} {e.pauli} {e.outcome:+d}\n" for e in record)


def parse_record(text: str) -> list[RecordEntry]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        parts = raw.split()
        try:
            idx, p, bit = int(parts[0]), PauliString.from_label(parts[1]), int(parts[2])
        except (IndexError, ValueError) as exc:
            raise PpmError(f"line {lineno}: {exc}") from None
        if bit not in (1, -1) or len(parts) != 3:
            raise PpmError(f"line {lineno}: malformed record {raw!r}")
        out.append(RecordEntry(idx, p, bit))
    return out


def random_program(n: int, n_gates: int, rng: np.random.Generator, t_fraction: float = 0.5,
                   n_measure: int = 2) -> list[Instruction]:
    """Random Clifford+T program ending in ``Z`` measurements of the first qubits."""

    def rand_pauli() -> PauliString:
        while True:
            x, z = int(rng.integers(0, 1 << n)), int(rng.integers(0, 1 << n))
            if x or z:
                p = PauliString(n, x, z, bin(x & z).count("1"))
                return -p if rng.random() < 0.5 else p

    prog = []
    for _ in range(n_gates):
        if rng.random() < t_fraction:
            prog.append(ppr_t(rand_pauli()))
        else:
            prog.append(clifford(int(rng.integers(1, 4)), rand_pauli()))
    prog += [ppm(PauliString.single(n, q, "Z")) for q in range(min(n_measure, n))]
    return prog


# --- layer scheduling -------------------------------------------------------

@dataclass(frozen=True)
class PpmLayerSchedule:
    layers: tuple[tuple[int, ...], ...]
    max_width: float
    distance: float

    @property
    def n_layers(self) -> int:
        return len(self.layers)


def schedule_layers(ppms, m: float = math.inf, d: float = math.inf) -> PpmLayerSchedule:
    """Greedy first-fit layering of mutually commuting PPMs.

    A PPM may join a layer only after the last layer holding a member it
    anticommutes with, so non-commuting PPMs keep program order.
    """
    if m < 1 or d < 1:
        raise PpmError("m and d must be at least 1")
    cap = min(m, d)
    ppms = [_p(p) for p in ppms]
    layers: list[list[int]] = []
    for i, p in enumerate(ppms):
        start = 0
        for li in range(len(layers) - 1, -1, -1):
            if any(not p.commutes(ppms[j]) for j in layers[li]):
                start = li + 1
                break
        for li in range(start, len(layers)):
            if len(layers[li]) < cap:
                layers[li].append(i)
                break
        else:
            layers.append([i])
    return PpmLayerSchedule(tuple(tuple(layer) for layer in layers), m, d)


def schedule_is_valid(schedule: PpmLayerSchedule, ppms) -> bool:
    """Layers commute internally, respect the width cap and keep non-commuting order."""
    ppms = [_p(p) for p in ppms]
    where = {}
    cap = min(schedule.max_width, schedule.distance)
    for li, layer in enumerate(schedule.layers):
        if len(layer) > cap:
            return False
        for a in layer:
            where[a] = li
            if any(not ppms[a].commutes(ppms[b]) for b in layer if b != a):
                return False
    if sorted(where) != list(range(len(ppms))):
        return False
    return all(
        where[i] < where[j]
        for i in range(len(ppms)) for j in range(i + 1, len(ppms))
        if not ppms[i].commutes(ppms[j])
    )


def speedup_estimate(schedule: PpmLayerSchedule, n_T: float) -> float:
    """``n_T`` over the number of layers."""
    if schedule.n_layers == 0:
        raise PpmError("empty schedule")
    return n_T / schedule.n_layers

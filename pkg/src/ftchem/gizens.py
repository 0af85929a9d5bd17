"""Fermionic basis changes that send ``gamma_0`` to ``gamma_u = sum_j u_j gamma_j``.

A rotation ``(p, q, theta)`` acts on Majorana operators as

    gamma_p -> sin(theta) gamma_p + cos(theta) gamma_q

and leaves every other ``gamma_j`` alone, so ``theta = pi/2`` is the identity.
The Givens ladder uses adjacent pairs in ``N - 1`` sequential layers.  The
Gizens tree splits the vector in halves recursively, reaching depth
``ceil(log2 N)`` with the same ``N - 1`` rotations.

Under Jordan-Wigner with ``gamma_j = Z_0 .. Z_{j-1} X_j`` a rotation is the
commuting pair ``exp(i a X_p Z..Z Y_q) exp(-i a Y_p Z..Z X_q)`` with
``a = (theta - pi/2) / 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .oracle import MAX_QUBITS, CapacityError, pauli_sparse
from .pauli import PauliString

UNIT_TOL = 1e-12
RESIDUAL_TOL = 1e-9


class GizensError(ValueError):
    """Invalid basis-change input."""


@dataclass(frozen=True)
class Rotation:
    kind: str
    p: int
    q: int
    theta: float
    layer: int
    elidable: bool = False


@dataclass
class RotationCircuit:
    """Rotations in time order; ``layer`` counts from 0."""

    n_modes: int
    rotations: list[Rotation] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return 1 + max((r.layer for r in self.rotations), default=-1)

    @property
    def count(self) -> int:
        return len(self.rotations)

    def layers(self) -> list[list[Rotation]]:
        out: list[list[Rotation]] = [[] for _ in range(self.depth)]
        for r in self.rotations:
            out[r.layer].append(r)
        return out

    def layers_disjoint(self) -> bool:
        """Within each layer the spans ``[p, q]`` do not overlap."""
        for layer in self.layers():
            spans = sorted((r.p, r.q) for r in layer)
            if any(a[1] >= b[0] for a, b in zip(spans, spans[1:])):
                return False
        return True

    def to_text(self) -> str:
        lines = [f"# modes {self.n_modes}"]
        for i, layer in enumerate(self.layers()):
            if i:
                lines.append("---")
            for r in layer:
                if r.kind == "givens":
                    lines.append(f"GIVENS {r.p} {r.theta!r}")
                else:
                    lines.append(f"GIZENS {r.p} {r.q} {r.theta!r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RotationCircuit":
        n_modes, layer, rotations = None, 0, []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if len(parts) == 2 and parts[0] == "modes":
                    n_modes = int(parts[1])
                continue
            if line == "---":
                layer += 1
                continue
            parts = line.split()
            try:
                if parts[0] == "GIVENS" and len(parts) == 3:
                    p = int(parts[1])
                    rotations.append(Rotation("givens", p, p + 1, float(parts[2]), layer))
                elif parts[0] == "GIZENS" and len(parts) == 4:
                    rotations.append(Rotation("gizens", int(parts[1]), int(parts[2]), float(parts[3]), layer))
                else:
                    raise ValueError
            except (ValueError, IndexError):
                raise GizensError(f"line {lineno}: cannot parse {raw!r}") from None
        top = 1 + max((r.q for r in rotations), default=0)
        return cls(n_modes or top, rotations)


@dataclass(frozen=True)
class PauliRotationPair:
    """``exp(i angle first) exp(-i angle second)``; the two strings commute."""

    first: PauliString
    second: PauliString
    angle: float


def _as_unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float).ravel()
    if u.size == 0:
        raise GizensError("empty vector")
    norm = np.linalg.norm(u)
    if norm == 0:
        raise GizensError("zero vector has no basis change")
    if abs(norm - 1.0) > UNIT_TOL:
        raise GizensError(f"vector norm {norm:.15g} is not 1 within {UNIT_TOL}")
    return u


def pad_pow2(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    n = 1 << max(0, math.ceil(math.log2(u.size)))
    return np.concatenate([u, np.zeros(n - u.size)])


def givens_ladder(u) -> RotationCircuit:
    """Adjacent rotations ``(k, k+1)`` for ``k = 0..N-2`` in time order."""
    u = _as_unit(u)
    n = u.size
    if n < 2:
        raise GizensError("need at least two modes")
    tail = np.sqrt(np.cumsum((u ** 2)[::-1])[::-1])
    circuit = RotationCircuit(n)
    for k in range(n - 1):
        right = u[k + 1] if k == n - 2 else tail[k + 1]
        theta = math.atan2(u[k], right)
        elidable = tail[k] == 0.0
        circuit.rotations.append(Rotation("givens", k, k + 1, 0.0 if elidable else theta, k, elidable))
    return circuit


def gizens_tree(u) -> RotationCircuit:
    """Binary-tree circuit of depth ``ceil(log2 N)`` after zero padding."""
    u = pad_pow2(_as_unit(u))
    n = u.size
    if n < 2:
        raise GizensError("need at least two modes")
    levels = n.bit_length() - 1
    circuit = RotationCircuit(n)
    for j in range(levels):
        span = n >> j
        half = span >> 1
        for lo in range(0, n, span):
            if half == 1:
                left, right = u[lo], u[lo + 1]
            else:
                left = float(np.linalg.norm(u[lo:lo + half]))
                right = float(np.linalg.norm(u[lo + half:lo + span]))
            elidable = left == 0.0 and right == 0.0
            theta = 0.0 if elidable else math.atan2(left, right)
            circuit.rotations.append(Rotation("gizens", lo, lo + half, theta, j, elidable))
    return circuit


def rotation_angle(theta: float) -> float:
    """Pauli-rotation angle ``a`` realising the Majorana rotation ``theta``."""
    return 0.5 * (theta - 0.5 * math.pi)


def jw_pair(p: int, q: int, theta: float, n_qubits: int) -> PauliRotationPair:
    if not 0 <= p < q < n_qubits:
        raise GizensError(f"need 0 <= p < q < {n_qubits}, got ({p}, {q})")
    mid = "Z" * (q - p - 1)
    pre, post = "I" * p, "I" * (n_qubits - q - 1)
    first = PauliString.from_label(f"+{pre}X{mid}Y{post}")
    second = PauliString.from_label(f"+{pre}Y{mid}X{post}")
    return PauliRotationPair(first, second, rotation_angle(theta))


def jw_encode(circuit: RotationCircuit) -> list[PauliRotationPair]:
    """Qubit-level Pauli rotation pairs in time order."""
    return [jw_pair(r.p, r.q, r.theta, circuit.n_modes) for r in circuit.rotations]


def coefficient_action(circuit: RotationCircuit, v=None) -> np.ndarray:
    """Classical image of the coefficient vector ``v`` (default ``e_0``)."""
    n = circuit.n_modes
    out = np.zeros(n) if v is None else np.array(v, dtype=float)
    if v is None:
        out[0] = 1.0
    for r in circuit.rotations:
        a = out[r.p]
        out[r.p] = a * math.sin(r.theta)
        out[r.q] += a * math.cos(r.theta)
    return out


def induced_rotation(circuit: RotationCircuit) -> np.ndarray:
    """Matrix ``O`` with ``V gamma_j V^dag = sum_k O[k, j] gamma_k``."""
    n = circuit.n_modes
    o = np.eye(n)
    for r in circuit.rotations:
        s, c = math.sin(r.theta), math.cos(r.theta)
        g = np.eye(n)
        g[r.p, r.p], g[r.q, r.p] = s, c
        g[r.p, r.q], g[r.q, r.q] = -c, s
        o = g @ o
    return o


def majorana_x(j: int, n: int) -> sp.csr_matrix:
    """Sparse ``Z_0 .. Z_{j-1} X_j`` on ``n`` qubits."""
    return pauli_sparse(PauliString(n, x=1 << j, z=(1 << j) - 1))


def unitary(circuit: RotationCircuit) -> sp.csr_matrix:
    """Sparse ``V = V_last .. V_first`` from the Jordan-Wigner pairs."""
    n = circuit.n_modes
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} modes exceeds the oracle limit of {MAX_QUBITS}")
    eye = sp.identity(1 << n, dtype=complex, format="csr")
    v = eye
    for pair in jw_encode(circuit):
        c, s = math.cos(pair.angle), math.sin(pair.angle)
        u1 = c * eye + 1j * s * pauli_sparse(pair.first)
        u2 = c * eye - 1j * s * pauli_sparse(pair.second)
        v = (u1 @ u2 @ v).tocsr()
    return v


def conjugated_gamma(circuit: RotationCircuit, j: int = 0) -> sp.csr_matrix:
    v = unitary(circuit)
    return (v @ majorana_x(j, circuit.n_modes) @ v.conj().T).tocsr()


@dataclass(frozen=True)
class VerifyResult:
    passed: bool
    residual: float


def verify_basis_change(circuit: RotationCircuit, u, tol: float = RESIDUAL_TOL) -> VerifyResult:
    """Frobenius residual ``||V gamma_0 V^dag - sum_j u_j gamma_j||`` on the dense oracle."""
    n = circuit.n_modes
    u = np.asarray(u, dtype=float)
    if u.size > n:
        raise GizensError(f"vector has {u.size} entries but circuit acts on {n} modes")
    u = np.concatenate([u, np.zeros(n - u.size)])
    target = sum(u[j] * majorana_x(j, n) for j in range(n) if u[j] != 0.0)
    diff = conjugated_gamma(circuit, 0) - target
    residual = float(sp.linalg.norm(diff))
    return VerifyResult(residual <= tol, residual)


def gamma_coefficients(op: sp.spmatrix, n: int) -> np.ndarray:
    """Projection of an operator onto ``gamma_0 .. gamma_{n-1}`` (trace inner product)."""
    dim = 1 << n
    return np.array([(majorana_x(j, n).conj().T @ op).diagonal().sum().real / dim for j in range(n)])


def random_unit_vector(n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.normal(size=n)
    return u / np.linalg.norm(u)

"""Dense statevector reference for Pauli algebra on at most 12 qubits.

Qubit 0 is the most significant tensor factor, matching
:meth:`PauliString.matrix`.
"""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

from .pauli import PauliString

MAX_QUBITS = 12
NORM_TOL = 1e-10


class CapacityError(ValueError):
    """Register larger than the oracle supports."""


def _check_qubits(n: int) -> None:
    if n > MAX_QUBITS:
        raise CapacityError(f"{n} qubits exceeds the oracle limit of {MAX_QUBITS}")


def n_qubits(state: np.ndarray) -> int:
    n = int(state.size).bit_length() - 1
    if state.ndim != 1 or (1 << n) != state.size:
        raise ValueError("state length must be a power of two")
    return n


def check_state(state: np.ndarray, tol: float = NORM_TOL) -> np.ndarray:
    """Validate shape, register size and unit norm."""
    _check_qubits(n_qubits(state))
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state norm {norm:.12g} differs from 1")
    return state


def basis_state(n: int, index: int = 0) -> np.ndarray:
    _check_qubits(n)
    psi = np.zeros(1 << n, dtype=complex)
    psi[index] = 1.0
    return psi


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    _check_qubits(n)
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    return float(abs(np.vdot(a, b)) ** 2)


def _index_masks(p: PauliString) -> tuple[int, int]:
    n = p.n
    xm = sum(1 << (n - 1 - j) for j in range(n) if (p.x >> j) & 1)
    zm = sum(1 << (n - 1 - j) for j in range(n) if (p.z >> j) & 1)
    return xm, zm


def apply_pauli(state: np.ndarray, p: PauliString) -> np.ndarray:
    """``P |psi>`` without forming the matrix."""
    n = n_qubits(state)
    if p.n != n:
        raise ValueError(f"Pauli on {p.n} qubits applied to {n}-qubit state")
    xm, zm = _index_masks(p)
    idx = np.arange(1 << n)
    parity = (np.bitwise_count(idx & zm) & 1).astype(np.int8)
    out = np.empty_like(state)
    out[idx ^ xm] = state * (1 - 2 * parity)
    return (1j ** p.s) * out


def pauli_sparse(p: PauliString) -> sp.csr_matrix:
    """Sparse matrix of a Pauli string, built from the index permutation."""
    _check_qubits(p.n)
    xm, zm = _index_masks(p)
    idx = np.arange(1 << p.n)
    parity = (np.bitwise_count(idx & zm) & 1).astype(float)
    data = (1j ** p.s) * (1 - 2 * parity)
    return sp.csr_matrix((data, (idx ^ xm, idx)), shape=(1 << p.n, 1 << p.n))


def pauli_matrix(p: PauliString) -> np.ndarray:
    _check_qubits(p.n)
    return p.matrix()


def apply_ppr(state: np.ndarray, p: PauliString, theta: float) -> np.ndarray:
    """``exp(i theta P) |psi>`` for Hermitian ``P``."""
    if not p.is_hermitian():
        raise ValueError(f"rotation generator {p} is not Hermitian")
    return np.cos(theta) * state + 1j * np.sin(theta) * apply_pauli(state, p)


def project(state: np.ndarray, p: PauliString, outcome: int) -> tuple[float, np.ndarray]:
    """Probability of ``outcome`` and the normalized post-measurement state."""
    if outcome not in (1, -1):
        raise ValueError("outcome must be +1 or -1")
    if not p.is_hermitian():
        raise ValueError(f"measured operator {p} is not Hermitian")
    proj = 0.5 * (state + outcome * apply_pauli(state, p))
    prob = float(np.vdot(proj, proj).real)
    if prob <= 1e-300:
        return 0.0, proj
    return prob, proj / np.sqrt(prob)


def measure_pauli(state: np.ndarray, p: PauliString, rng: np.random.Generator) -> tuple[int, np.ndarray]:
    """Projective measurement of ``P``; returns ``(+1 or -1, post-state)``."""
    prob_plus, post_plus = project(state, p, 1)
    if rng.random() < prob_plus:
        return 1, post_plus
    _, post_minus = project(state, p, -1)
    return -1, post_minus


def expectation(state: np.ndarray, p: PauliString) -> float:
    return float(np.vdot(state, apply_pauli(state, p)).real)


def conjugate(c: np.ndarray, p) -> np.ndarray:
    """``C^dag P C`` for a dense unitary ``C``."""
    pm = p.matrix() if isinstance(p, PauliString) else np.asarray(p)
    return c.conj().T @ pm @ c


def ppr_matrix(p: PauliString, theta: float) -> np.ndarray:
    pm = pauli_matrix(p)
    return np.cos(theta) * np.eye(pm.shape[0]) + 1j * np.sin(theta) * pm


def majorana_pauli(j: int, n_modes: int) -> PauliString:
    """``gamma_{2k} = Z..Z X_k`` and ``gamma_{2k+1} = Z..Z Y_k`` on ``ceil(n_modes/2)`` qubits."""
    if not 0 <= j < n_modes:
        raise ValueError(f"Majorana index {j} outside [0, {n_modes})")
    nq = -(-n_modes // 2)
    k = j // 2
    letters = ["Z"] * k + ["X" if j % 2 == 0 else "Y"] + ["I"] * (nq - k - 1)
    return PauliString.from_label("+" + "".join(letters))


def majorana(j: int, n_modes: int) -> np.ndarray:
    p = majorana_pauli(j, n_modes)
    _check_qubits(p.n)
    return p.matrix()


# --- single- and two-qubit gates for circuit-level checks ----------------

_GATES_1Q = {
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    "s": np.diag([1, 1j]),
    "sdg": np.diag([1, -1j]),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "z": np.diag([1.0 + 0j, -1.0]),
}


def apply_1q(state: np.ndarray, gate, q: int) -> np.ndarray:
    n = n_qubits(state)
    u = _GATES_1Q[gate] if isinstance(gate, str) else np.asarray(gate)
    psi = state.reshape((2,) * n)
    psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [q])), 0, q)
    return psi.reshape(-1)


def apply_controlled(state: np.ndarray, gate: str, control: int, target: int) -> np.ndarray:
    """Controlled ``x``, ``y`` or ``z`` on ``target``."""
    n = n_qubits(state)
    u = {"x": _GATES_1Q["x"], "z": _GATES_1Q["z"], "y": np.array([[0, -1j], [1j, 0]])}[gate]
    psi = state.reshape((2,) * n).copy()
    sl = [slice(None)] * n
    sl[control] = 1
    sub = psi[tuple(sl)]
    t = target - (1 if target > control else 0)
    sub = np.moveaxis(np.tensordot(u, sub, axes=([1], [t])), 0, t)
    psi[tuple(sl)] = sub
    return psi.reshape(-1)


def tensor_states(*states: np.ndarray) -> np.ndarray:
    out = np.ones(1, dtype=complex)
    for s in states:
        out = np.kron(out, s)
    _check_qubits(n_qubits(out))
    return out


def split_product(state: np.ndarray, keep: int) -> tuple[np.ndarray, np.ndarray]:
    """Factor ``state = a (x) b`` with ``a`` on the first ``keep`` qubits.

    Raises:
        ValueError: The state is entangled across the cut.
    """
    n = n_qubits(state)
    mat = state.reshape(1 << keep, 1 << (n - keep))
    u, s, vh = np.linalg.svd(mat, full_matrices=False)
    if s.size > 1 and s[1] > 1e-8:
        raise ValueError(f"state is entangled across the cut (second singular value {s[1]:.3g})")
    return u[:, 0] * s[0], vh[0]

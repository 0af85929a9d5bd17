"""Double factorization of two-electron tensors.

The tensor ``h[i, j, k, l]`` is reshaped to an ``N^2 x N^2`` matrix with row
index ``ij`` and column index ``kl``.  Its eigendecomposition gives the
first-level factors ``L^(r)`` with ``h = sum_r L^(r) (x) L^(r)``; each factor
is then diagonalized, ``L^(r) = sum_m lambda_m^(r) R_m^(r) R_m^(r)^T``.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

SYMMETRY_ATOL = 1e-10
PSD_RELATIVE_TOL = 1e-6


class FactorizationError(ValueError):
    """Input tensor or matrix violates a structural requirement."""


class IndefiniteTensorError(FactorizationError):
    """Reshaped tensor has a significantly negative eigenvalue."""


@dataclass(frozen=True)
class EigenBlock:
    """Retained eigenpairs of one ``L^(r)``; ``eigenvectors[:, m]`` pairs with ``eigenvalues[m]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def size(self) -> int:
        return int(self.eigenvalues.shape[0])

    @property
    def one_norm(self) -> float:
        return float(np.abs(self.eigenvalues).sum())

    def matrix(self) -> np.ndarray:
        vecs = self.eigenvectors
        return (vecs * self.eigenvalues) @ vecs.T


@dataclass(frozen=True)
class FactorizedHamiltonian:
    """Two-level factorization with its one-body part and norm.

    ``truncation_error_bound`` bounds, in both max-abs and Frobenius norm, the
    deviation of the reassembled tensor from the untruncated factorization.
    """

    n_orbitals: int
    blocks: tuple[EigenBlock, ...]
    one_body: np.ndarray = field(repr=False)
    alpha: float = 0.0
    truncation_error_bound: float = 0.0

    @property
    def l_matrices(self) -> tuple[np.ndarray, ...]:
        return tuple(block.matrix() for block in self.blocks)

    @property
    def rank_R(self) -> int:
        return len(self.blocks)

    @property
    def per_rank_M(self) -> tuple[int, ...]:
        return tuple(block.size for block in self.blocks)

    @property
    def rank_M(self) -> int:
        return sum(self.per_rank_M)

    @property
    def max_rank_M(self) -> int:
        return max(self.per_rank_M, default=0)

    def eigenpairs(self, r: int) -> list[tuple[float, np.ndarray]]:
        block = self.blocks[r]
        return [(float(block.eigenvalues[m]), block.eigenvectors[:, m]) for m in range(block.size)]


def _as_tensor(h) -> np.ndarray:
    arr = np.asarray(h, dtype=float)
    if arr.ndim != 4 or len(set(arr.shape)) != 1:
        raise FactorizationError(f"two-electron tensor must be N x N x N x N, got shape {arr.shape}")
    return arr


def _as_matrix(t, n: int | None = None) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise FactorizationError(f"one-body matrix must be square, got shape {arr.shape}")
    if n is not None and arr.shape[0] != n:
        raise FactorizationError(f"one-body matrix is {arr.shape[0]} x {arr.shape[0]}, expected {n} x {n}")
    return arr


def check_tensor_symmetry(h) -> None:
    """Raise if ``h`` lacks the pair-exchange and in-pair index symmetries."""
    h = _as_tensor(h)
    atol = SYMMETRY_ATOL * max(1.0, float(np.abs(h).max(initial=0.0)))
    checks = (
        ("(ij)<->(kl) pair exchange", h.transpose(2, 3, 0, 1)),
        ("i<->j within the first pair", h.transpose(1, 0, 2, 3)),
        ("k<->l within the second pair", h.transpose(0, 1, 3, 2)),
    )
    for name, permuted in checks:
        if not np.allclose(h, permuted, rtol=0.0, atol=atol):
            worst = float(np.abs(h - permuted).max())
            raise FactorizationError(f"tensor violates {name} symmetry (max deviation {worst:.3e})")


def first_factorize(h) -> list[np.ndarray]:
    """Rank-R factorization ``h_ijkl = sum_r L^(r)_ij L^(r)_kl``.

    Args:
        h: Symmetric tensor of shape ``(N, N, N, N)`` whose ``(ij, kl)``
            reshaping is positive semidefinite.

    Returns:
        Symmetric ``N x N`` factors ordered by descending eigenvalue, with
        the square roots of the eigenvalues absorbed.  Eigenvalues at the
        level of floating-point noise produce no factor.

    Raises:
        FactorizationError: On a symmetry violation.
        IndefiniteTensorError: If an eigenvalue lies below ``-1e-6`` times
            the largest one.
    """
    h = _as_tensor(h)
    check_tensor_symmetry(h)
    n = h.shape[0]
    mat = h.reshape(n * n, n * n)
    mat = 0.5 * (mat + mat.T)
    evals, evecs = np.linalg.eigh(mat)
    top = float(np.abs(evals).max(initial=0.0))
    if top == 0.0:
        return []
    if evals.min() < -PSD_RELATIVE_TOL * top:
        raise IndefiniteTensorError(
            f"reshaped tensor has eigenvalue {evals.min():.3e} below -{PSD_RELATIVE_TOL:g} x {top:.3e}"
        )
    noise = top * mat.shape[0] * np.finfo(float).eps
    order = np.argsort(-evals, kind="stable")
    factors = []
    for idx in order:
        if evals[idx] <= noise:
            break
        L = np.sqrt(evals[idx]) * evecs[:, idx].reshape(n, n)
        factors.append(0.5 * (L + L.T))
    return factors


def second_factorize(L) -> list[tuple[float, np.ndarray]]:
    """Eigenpairs of a symmetric matrix sorted by descending ``|lambda|``.

    Raises:
        FactorizationError: If ``L`` is not symmetric within 1e-10.
    """
    L = _as_matrix(L)
    atol = SYMMETRY_ATOL * max(1.0, float(np.abs(L).max(initial=0.0)))
    if not np.allclose(L, L.T, rtol=0.0, atol=atol):
        raise FactorizationError("matrix is not symmetric")
    evals, evecs = np.linalg.eigh(0.5 * (L + L.T))
    order = np.lexsort((np.arange(len(evals)), -np.abs(evals)))
    return [(float(evals[m]), evecs[:, m].copy()) for m in order]


def _block(pairs: list[tuple[float, np.ndarray]], n: int) -> EigenBlock:
    if not pairs:
        return EigenBlock(np.zeros(0), np.zeros((n, 0)))
    return EigenBlock(np.array([p[0] for p in pairs]), np.column_stack([p[1] for p in pairs]))


def double_factorize(h, one_body=None) -> FactorizedHamiltonian:
    """Full two-level factorization with no truncation.

    Args:
        h: Two-electron tensor.
        one_body: One-body matrix ``t``; zeros when omitted.

    Returns:
        The factorization with ``alpha`` evaluated.
    """
    h = _as_tensor(h)
    n = h.shape[0]
    t = np.zeros((n, n)) if one_body is None else _as_matrix(one_body, n)
    blocks = tuple(_block(second_factorize(L), n) for L in first_factorize(h))
    f = FactorizedHamiltonian(n, blocks, t)
    return replace(f, alpha=compute_alpha(f, t))


def compute_alpha(f: FactorizedHamiltonian, t=None) -> float:
    """Norm ``||eig(t)||_1 + 1/4 sum_r (sum_m |lambda_m^(r)|)^2``."""
    t = f.one_body if t is None else _as_matrix(t, f.n_orbitals)
    if not np.allclose(t, t.T, rtol=0.0, atol=SYMMETRY_ATOL * max(1.0, float(np.abs(t).max(initial=0.0)))):
        raise FactorizationError("one-body matrix is not symmetric")
    one_body = float(np.abs(np.linalg.eigvalsh(0.5 * (t + t.T))).sum()) if t.size else 0.0
    two_body = 0.25 * sum(block.one_norm ** 2 for block in f.blocks)
    return one_body + two_body


def truncation_scores(f: FactorizedHamiltonian) -> list[tuple[float, int, int]]:
    """``(|lambda_m^(r)| * sum_m' |lambda_m'^(r)|, r, m)`` in removal order."""
    scores = []
    for r, block in enumerate(f.blocks):
        norm = block.one_norm
        for m, lam in enumerate(block.eigenvalues):
            scores.append((abs(float(lam)) * norm, r, m))
    scores.sort()
    return scores


def truncate(f: FactorizedHamiltonian, eps_trunc: float) -> FactorizedHamiltonian:
    """Drop low-score eigenpairs while the error bound stays within ``eps_trunc``.

    Removing eigenvalues of total magnitude ``D_r`` from a block with
    one-norm ``S_r`` changes every tensor entry by at most
    ``S_r^2 - (S_r - D_r)^2``; the bound sums that over blocks.  Eigenpairs
    are visited in ascending score and the sweep stops at the first one that
    no longer fits.  Blocks left without eigenpairs are removed.
    """
    if eps_trunc < 0:
        raise FactorizationError("eps_trunc must be nonnegative")
    if eps_trunc == 0:
        return f
    norms = [block.one_norm for block in f.blocks]
    removed = [0.0] * len(f.blocks)
    dropped: set[tuple[int, int]] = set()
    bound = f.truncation_error_bound
    for _, r, m in truncation_scores(f):
        mag = abs(float(f.blocks[r].eigenvalues[m]))
        kept_before = norms[r] - removed[r]
        step = kept_before ** 2 - (kept_before - mag) ** 2
        if bound + step > eps_trunc:
            break
        bound += step
        removed[r] += mag
        dropped.add((r, m))
    if not dropped:
        return f
    blocks = []
    for r, block in enumerate(f.blocks):
        keep = [m for m in range(block.size) if (r, m) not in dropped]
        if keep:
            blocks.append(EigenBlock(block.eigenvalues[keep], block.eigenvectors[:, keep]))
    out = replace(f, blocks=tuple(blocks), truncation_error_bound=bound)
    return replace(out, alpha=compute_alpha(out))


def reassemble(f: FactorizedHamiltonian) -> np.ndarray:
    """Tensor ``sum_r L^(r) (x) L^(r)`` built from the retained eigenpairs."""
    n = f.n_orbitals
    out = np.zeros((n, n, n, n))
    for L in f.l_matrices:
        out += np.einsum("ij,kl->ijkl", L, L)
    return out


def reconstruction_error(f: FactorizedHamiltonian, h) -> tuple[float, float]:
    """Max-abs and Frobenius deviation between ``h`` and the factorization."""
    h = _as_tensor(h)
    if h.shape[0] != f.n_orbitals:
        raise FactorizationError(f"tensor has N={h.shape[0]} but factorization has N={f.n_orbitals}")
    diff = h - reassemble(f)
    return float(np.abs(diff).max(initial=0.0)), float(np.linalg.norm(diff.ravel()))


# --- file formats -----------------------------------------------------------

def _write_text(path: Path, arr: np.ndarray) -> None:
    with open(path, "w") as fh:
        fh.write(f"{arr.shape[0]}\n")
        flat = arr.ravel()
        for start in range(0, flat.size, 8):
            fh.write(" ".join(repr(float(v)) for v in flat[start:start + 8]) + "\n")


def _read_text(path: Path, rank: int) -> np.ndarray:
    tokens = Path(path).read_text().split()
    if not tokens:
        raise FactorizationError(f"{path}: empty file")
    try:
        n = int(tokens[0])
        values = np.array([float(tok) for tok in tokens[1:]])
    except ValueError as exc:
        raise FactorizationError(f"{path}: {exc}") from None
    if n < 1 or values.size != n ** rank:
        raise FactorizationError(f"{path}: expected {n ** rank} values for N={n}, found {values.size}")
    return values.reshape((n,) * rank)


def _write_binary(path: Path, arr: np.ndarray) -> None:
    with open(path, "wb") as fh:
        fh.write(struct.pack("<Q", arr.shape[0]))
        fh.write(np.ascontiguousarray(arr, dtype="<f8").tobytes())


def _read_binary(path: Path, rank: int) -> np.ndarray:
    raw = Path(path).read_bytes()
    if len(raw) < 8:
        raise FactorizationError(f"{path}: truncated header")
    (n,) = struct.unpack("<Q", raw[:8])
    if n < 1 or len(raw) != 8 + 8 * n ** rank:
        raise FactorizationError(f"{path}: size {len(raw)} does not match N={n}")
    return np.frombuffer(raw[8:], dtype="<f8").astype(float).reshape((n,) * rank)


def _is_binary(path: Path, rank: int) -> bool:
    raw = Path(path).read_bytes()
    if len(raw) < 8:
        return False
    (n,) = struct.unpack("<Q", raw[:8])
    return 0 < n < 10_000 and len(raw) == 8 + 8 * n ** rank


def write_tensor(path, h, binary: bool = False) -> None:
    h = _as_tensor(h)
    (_write_binary if binary else _write_text)(Path(path), h)


def read_tensor(path, binary: bool | None = None) -> np.ndarray:
    """Load a two-electron tensor; the format is detected when ``binary`` is None."""
    path = Path(path)
    if binary is None:
        binary = _is_binary(path, 4)
    return _read_binary(path, 4) if binary else _read_text(path, 4)


def write_one_body(path, t, binary: bool = False) -> None:
    t = _as_matrix(t)
    (_write_binary if binary else _write_text)(Path(path), t)


def read_one_body(path, binary: bool | None = None) -> np.ndarray:
    path = Path(path)
    if binary is None:
        binary = _is_binary(path, 2)
    return _read_binary(path, 2) if binary else _read_text(path, 2)


def random_psd_tensor(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """``sum_r G_r (x) G_r`` for random symmetric ``G_r``; a test-data helper."""
    h = np.zeros((n, n, n, n))
    for _ in range(rank):
        g = rng.standard_normal((n, n))
        g = 0.5 * (g + g.T)
        h += np.einsum("ij,kl->ijkl", g, g)
    return h

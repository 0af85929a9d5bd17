"""Symplectic Pauli strings and Clifford frames.

A Pauli string on ``n`` qubits is ``i^s X^x Z^z`` where ``x`` and ``z`` are
bit masks (bit ``j`` is qubit ``j``) and every X factor stands to the left of
every Z factor.  Products track the phase exactly modulo 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_SIGNS = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_SIGN_CODES = {"+": 0, "+i": 1, "i": 1, "-": 2, "-i": 3, "": 0}


class PauliError(ValueError):
    """Malformed or incompatible Pauli input."""


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    n: int
    x: int = 0
    z: int = 0
    s: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise PauliError("qubit count must be nonnegative")
        limit = 1 << self.n
        if not (0 <= self.x < limit and 0 <= self.z < limit):
            raise PauliError(f"bit masks exceed {self.n} qubits")
        object.__setattr__(self, "s", self.s % 4)

    # --- construction -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliString":
        letters = ["I"] * n
        letters[qubit] = letter
        return cls.from_label("+" + "".join(letters))

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse ``'+XIZY'``-style text; the sign prefix may be ``+ - +i -i``."""
        label = label.strip()
        body_start = len(label) - len(label.lstrip("+-i"))
        sign, body = label[:body_start], label[body_start:]
        if sign not in _SIGN_CODES:
            raise PauliError(f"bad sign prefix {sign!r} in {label!r}")
        s, x, z = _SIGN_CODES[sign], 0, 0
        for j, ch in enumerate(body):
            if ch == "X":
                x |= 1 << j
            elif ch == "Z":
                z |= 1 << j
            elif ch == "Y":
                x |= 1 << j
                z |= 1 << j
                s += 1
            elif ch != "I":
                raise PauliError(f"bad Pauli letter {ch!r} in {label!r}")
        return cls(len(body), x, z, s)

    @classmethod
    def from_bits(cls, x_bits, z_bits, s: int = 0) -> "PauliString":
        x_bits, z_bits = list(x_bits), list(z_bits)
        if len(x_bits) != len(z_bits):
            raise PauliError("x and z bit vectors differ in length")
        x = sum(int(b) << j for j, b in enumerate(x_bits))
        z = sum(int(b) << j for j, b in enumerate(z_bits))
        return cls(len(x_bits), x, z, s)

    # --- views ------------------------------------------------------------
    @property
    def x_bits(self) -> tuple[int, ...]:
        return tuple((self.x >> j) & 1 for j in range(self.n))

    @property
    def z_bits(self) -> tuple[int, ...]:
        return tuple((self.z >> j) & 1 for j in range(self.n))

    @property
    def n_y(self) -> int:
        return _popcount(self.x & self.z)

    @property
    def support(self) -> tuple[int, ...]:
        mask = self.x | self.z
        return tuple(j for j in range(self.n) if (mask >> j) & 1)

    @property
    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def is_hermitian(self) -> bool:
        return self.s % 2 == self.n_y % 2

    def letter(self, j: int) -> str:
        return "IXZY"[((self.x >> j) & 1) | (((self.z >> j) & 1) << 1)]

    def label(self) -> str:
        """Inverse of :meth:`from_label`."""
        body = "".join(self.letter(j) for j in range(self.n))
        return _SIGNS[(self.s - self.n_y) % 4] + body

    def __str__(self) -> str:
        return self.label()

    # --- algebra ----------------------------------------------------------
    def _check(self, other: "PauliString") -> None:
        if self.n != other.n:
            raise PauliError(f"qubit counts differ ({self.n} vs {other.n})")

    def __mul__(self, other: "PauliString") -> "PauliString":
        self._check(other)
        s = self.s + other.s + 2 * _popcount(self.z & other.x)
        return PauliString(self.n, self.x ^ other.x, self.z ^ other.z, s)

    def times_i(self, power: int = 1) -> "PauliString":
        return PauliString(self.n, self.x, self.z, self.s + power)

    def __neg__(self) -> "PauliString":
        return self.times_i(2)

    def commutes(self, other: "PauliString") -> bool:
        self._check(other)
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def tensor(self, other: "PauliString") -> "PauliString":
        """``self (x) other`` with ``other`` on the higher qubit indices."""
        return PauliString(
            self.n + other.n,
            self.x | (other.x << self.n),
            self.z | (other.z << self.n),
            self.s + other.s,
        )

    def embed(self, n: int, qubits=None) -> "PauliString":
        """Place this string on ``qubits`` (default ``0..self.n-1``) of an ``n``-qubit register."""
        qubits = list(range(self.n)) if qubits is None else list(qubits)
        if len(qubits) != self.n or max(qubits, default=-1) >= n:
            raise PauliError("embedding does not fit")
        x = z = 0
        for j, q in enumerate(qubits):
            x |= ((self.x >> j) & 1) << q
            z |= ((self.z >> j) & 1) << q
        return PauliString(n, x, z, self.s)

    def matrix(self) -> np.ndarray:
        """Dense ``2^n x 2^n`` matrix; qubit 0 is the most significant tensor factor."""
        eye = np.eye(2, dtype=complex)
        xm = np.array([[0, 1], [1, 0]], dtype=complex)
        zm = np.diag([1.0, -1.0]).astype(complex)
        out = np.ones((1, 1), dtype=complex)
        for j in range(self.n):
            f = eye
            if (self.x >> j) & 1:
                f = xm
            if (self.z >> j) & 1:
                f = f @ zm
            out = np.kron(out, f)
        return (1j ** self.s) * out


def pauli(label: str) -> PauliString:
    return PauliString.from_label(label)


class OpCounter:
    """Tally of word-level operations spent in frame updates."""

    def __init__(self):
        self.ops = 0

    def add(self, k: int = 1) -> None:
        self.ops += k


class CliffordFrame:
    """Images ``C^dag X_j C`` and ``C^dag Z_j C`` of a Clifford ``C``.

    Rows are indexed ``0..n-1`` for the X images and ``n..2n-1`` for the Z
    images.
    """

    def __init__(self, xs, zs, counter: OpCounter | None = None):
        xs, zs = list(xs), list(zs)
        if len(xs) != len(zs):
            raise PauliError("frame needs as many X rows as Z rows")
        n = len(xs)
        for row in xs + zs:
            if row.n != n:
                raise PauliError("frame rows must act on n qubits")
        self.n = n
        self.xs = xs
        self.zs = zs
        self.counter = counter or OpCounter()

    @classmethod
    def identity(cls, n: int, counter: OpCounter | None = None) -> "CliffordFrame":
        return cls(
            [PauliString(n, x=1 << j) for j in range(n)],
            [PauliString(n, z=1 << j) for j in range(n)],
            counter,
        )

    @property
    def rows(self) -> list[PauliString]:
        return self.xs + self.zs

    def copy(self) -> "CliffordFrame":
        return CliffordFrame(list(self.xs), list(self.zs), self.counter)

    def __eq__(self, other) -> bool:
        return isinstance(other, CliffordFrame) and self.rows == other.rows

    def is_valid(self) -> bool:
        """Symplectic check: ``X~_i`` anticommutes with ``Z~_i`` only, all rows Hermitian."""
        for i in range(self.n):
            for j in range(self.n):
                if self.xs[i].commutes(self.zs[j]) == (i == j):
                    return False
                if j > i and not (self.xs[i].commutes(self.xs[j]) and self.zs[i].commutes(self.zs[j])):
                    return False
        return all(row.is_hermitian() for row in self.rows)

    def commutation_matrix(self) -> np.ndarray:
        rows = self.rows
        return np.array([[0 if a.commutes(b) else 1 for b in rows] for a in rows], dtype=np.uint8)

    def to_table(self) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
        return [(row.x_bits, row.z_bits, row.s) for row in self.rows]


def frame_lookup(frame: CliffordFrame, p: PauliString) -> PauliString:
    """Image ``C^dag P C`` of an instruction-level Pauli under the frame."""
    if p.n != frame.n:
        raise PauliError(f"Pauli acts on {p.n} qubits, frame on {frame.n}")
    out = PauliString(frame.n, s=p.s)
    for j in range(frame.n):
        if (p.x >> j) & 1:
            out = out * frame.xs[j]
    for j in range(frame.n):
        if (p.z >> j) & 1:
            out = out * frame.zs[j]
    return out


def frame_update(frame: CliffordFrame, k: int, p: PauliString) -> CliffordFrame:
    """Compose the frame with ``exp(i k pi/4 P)`` acting first.

    Rows commuting with ``P`` are kept; an anticommuting row ``Q`` becomes
    ``Q (cos(k pi/2) + i sin(k pi/2) P)``.
    """
    if p.n != frame.n:
        raise PauliError(f"Pauli acts on {p.n} qubits, frame on {frame.n}")
    k %= 4
    out = frame.copy()
    if k == 0:
        return out
    counter = frame.counter
    new_rows = []
    for row in frame.rows:
        # two ANDs, one popcount parity; the product adds two XORs and one AND
        counter.add(3)
        if row.commutes(p):
            new_rows.append(row)
            continue
        counter.add(3)
        if k == 2:
            new_rows.append(-row)
        else:
            new_rows.append((row * p).times_i(1 if k == 1 else 3))
    out.xs, out.zs = new_rows[: frame.n], new_rows[frame.n:]
    return out

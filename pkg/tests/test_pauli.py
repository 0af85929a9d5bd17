import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftchem.pauli import CliffordFrame, OpCounter, PauliError, PauliString, frame_lookup, frame_update, pauli
from ftchem.oracle import ppr_matrix

labels = st.integers(1, 4).flatmap(
    lambda n: st.tuples(st.sampled_from(["+", "-", "+i", "-i"]), st.text("IXYZ", min_size=n, max_size=n))
).map(lambda t: t[0] + t[1])


def test_label_round_trip_and_views():
    p = pauli("-XIZY")
    assert p.label() == "-XIZY"
    assert p.support == (0, 2, 3) and p.weight == 3 and p.n_y == 1
    assert p.is_hermitian() and not pauli("+iX").is_hermitian()
    assert PauliString.from_bits([1, 0, 0, 1], [0, 0, 1, 1], 3) == p
    with pytest.raises(PauliError):
        pauli("XQ")


def test_single_qubit_products():
    x, y, z = pauli("X"), pauli("Y"), pauli("Z")
    assert x * y == z.times_i(1)
    assert y * x == z.times_i(3)
    assert z * x == y.times_i(1)
    assert x * x == PauliString.identity(1)


@settings(max_examples=200)
@given(labels, st.data())
def test_product_matches_matrices(a, data):
    b = data.draw(st.sampled_from(["+", "-"])) + data.draw(st.text("IXYZ", min_size=len(a.lstrip("+-i")),
                                                                     max_size=len(a.lstrip("+-i"))))
    p, q = pauli(a), pauli(b)
    np.testing.assert_allclose((p * q).matrix(), p.matrix() @ q.matrix(), atol=1e-12)
    comm = np.allclose(p.matrix() @ q.matrix(), q.matrix() @ p.matrix())
    assert p.commutes(q) == comm
    assert pauli(p.label()) == p


def test_tensor_and_embed():
    assert pauli("X").tensor(pauli("-Z")) == pauli("-XZ")
    assert pauli("XY").embed(4, [3, 1]) == pauli("IYIX")
    with pytest.raises(PauliError):
        pauli("XY").embed(2, [0, 2])
    with pytest.raises(PauliError):
        pauli("X") * pauli("XX")


TABLE_ROWS = [
    ((1, 0, 0), (0, 0, 0), 2),
    ((1, 1, 0), (1, 0, 0), 1),
    ((0, 0, 1), (0, 0, 0), 0),
    ((1, 0, 0), (1, 0, 0), 3),
    ((0, 1, 0), (0, 0, 0), 0),
    ((0, 0, 0), (0, 0, 1), 2),
]


def test_reference_frame_table_lookup():
    rows = [PauliString.from_bits(x, z, s) for x, z, s in TABLE_ROWS]
    frame = CliffordFrame(rows[:3], rows[3:])
    assert frame.to_table() == TABLE_ROWS
    out = frame_lookup(frame, pauli("XII"))
    assert (out.x_bits, out.z_bits, out.s) == ((1, 0, 0), (0, 0, 0), 2)
    assert out == -pauli("XII")
    assert frame.xs[1] == pauli("YXI") and frame.zs[0] == -pauli("YII")
    # this reference table is not symplectic: rows X1 and X2 anticommute
    assert not frame.is_valid()


def test_frame_update_small_example():
    frame = frame_update(CliffordFrame.identity(3), 1, pauli("ZZI"))
    assert frame.is_valid()
    assert frame.xs[0] == pauli("YZI") and frame.xs[1] == pauli("ZYI")
    assert frame.xs[2] == pauli("IIX") and frame.zs == CliffordFrame.identity(3).zs


def _clifford_matrix(gates, n):
    c = np.eye(1 << n, dtype=complex)
    for k, p in gates:
        c = c @ ppr_matrix(p, k * np.pi / 4)
    return c


def test_frame_update_matches_dense_conjugation():
    rng = np.random.default_rng(0)
    n = 3
    letters = "IXYZ"
    gates, frame = [], CliffordFrame.identity(n)
    for _ in range(12):
        body = "".join(letters[i] for i in rng.integers(0, 4, n))
        if set(body) == {"I"}:
            continue
        p = pauli(("-" if rng.random() < 0.5 else "+") + body)
        k = int(rng.integers(1, 4))
        gates.append((k, p))
        frame = frame_update(frame, k, p)
        c = _clifford_matrix(gates, n)
        for j in range(n):
            np.testing.assert_allclose(frame.xs[j].matrix(), c.conj().T @ PauliString(n, x=1 << j).matrix() @ c,
                                       atol=1e-12)
            np.testing.assert_allclose(frame.zs[j].matrix(), c.conj().T @ PauliString(n, z=1 << j).matrix() @ c,
                                       atol=1e-12)
        assert frame.is_valid()
        q = pauli("+XZY")
        np.testing.assert_allclose(frame_lookup(frame, q).matrix(), c.conj().T @ q.matrix() @ c, atol=1e-12)


def test_single_qubit_phase_gate():
    frame = frame_update(CliffordFrame.identity(1), 1, pauli("Z"))
    s = ppr_matrix(pauli("Z"), np.pi / 4)
    np.testing.assert_allclose(frame.xs[0].matrix(), s.conj().T @ pauli("X").matrix() @ s, atol=1e-12)
    assert frame.xs[0] == pauli("Y")


def test_k_zero_and_four_are_identity():
    base = CliffordFrame.identity(2)
    assert frame_update(base, 0, pauli("XY")) == base
    assert frame_update(base, 4, pauli("XY")) == base
    twice = frame_update(frame_update(base, 2, pauli("XY")), 2, pauli("XY"))
    assert twice == base


def test_op_counter_linear_in_n():
    totals = []
    for n in (4, 8, 16, 32):
        counter = OpCounter()
        frame = CliffordFrame.identity(n, counter)
        frame_update(frame, 1, PauliString(n, z=(1 << n) - 1))
        totals.append(counter.ops)
    assert [t / n for t, n in zip(totals, (4, 8, 16, 32))] == [totals[0] / 4] * 4


def test_invalid_frame_detected():
    ident = CliffordFrame.identity(2)
    broken = CliffordFrame([ident.xs[0], ident.xs[0]], ident.zs)
    assert not broken.is_valid()
    with pytest.raises(PauliError):
        CliffordFrame([pauli("X")], [pauli("ZZ")])

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftchem import gizens as gz
from ftchem.oracle import CapacityError, pauli_sparse
from ftchem.pauli import pauli


def test_first_unit_vector_is_identity():
    c = gz.gizens_tree([1.0, 0.0])
    assert c.count == 1
    assert c.rotations[0].theta == pytest.approx(math.pi / 2)
    assert gz.rotation_angle(c.rotations[0].theta) == pytest.approx(0.0)
    v = gz.unitary(c).toarray()
    np.testing.assert_allclose(v, np.eye(4), atol=1e-14)


def test_swap_vector():
    c = gz.gizens_tree([0.0, 1.0])
    assert c.rotations[0].theta == pytest.approx(0.0)
    coeffs = gz.gamma_coefficients(gz.conjugated_gamma(c), 2)
    np.testing.assert_allclose(coeffs, [0.0, 1.0], atol=1e-14)


def test_uniform_four_modes():
    c = gz.gizens_tree([0.5] * 4)
    assert c.depth == 2 and c.count == 3
    assert all(r.theta == pytest.approx(math.pi / 4) for r in c.rotations)
    assert gz.verify_basis_change(c, [0.5] * 4).passed


def test_jw_pair_strings():
    pair = gz.jw_pair(0, 1, 0.3, 2)
    assert pair.first == pauli("XY") and pair.second == pauli("YX")
    pair = gz.jw_pair(0, 2, 0.3, 3)
    assert pair.first == pauli("XZY") and pair.second == pauli("YZX")
    assert pair.angle == pytest.approx((0.3 - math.pi / 2) / 2)
    with pytest.raises(gz.GizensError):
        gz.jw_pair(2, 1, 0.0, 3)


def test_pair_strings_commute():
    for p in range(5):
        for q in range(p + 1, 6):
            pair = gz.jw_pair(p, q, 0.1, 6)
            assert pair.first.commutes(pair.second)
            a, b = pauli_sparse(pair.first), pauli_sparse(pair.second)
            assert abs(a @ b - b @ a).max() == 0


def test_tree_shape_and_text_round_trip():
    rng = np.random.default_rng(0)
    u = gz.random_unit_vector(8, rng)
    c = gz.gizens_tree(u)
    assert c.depth == 3 and c.count == 7 and c.layers_disjoint()
    back = gz.RotationCircuit.from_text(c.to_text())
    assert back.n_modes == 8
    assert [(r.p, r.q, r.theta, r.layer) for r in back.rotations] == [
        (r.p, r.q, r.theta, r.layer) for r in c.rotations
    ]


def test_ladder_shape():
    u = gz.random_unit_vector(6, np.random.default_rng(1))
    c = gz.givens_ladder(u)
    assert c.count == 5 and c.depth == 5
    assert [(r.p, r.q) for r in c.rotations] == [(k, k + 1) for k in range(5)]
    assert gz.verify_basis_change(c, u).passed
    back = gz.RotationCircuit.from_text(c.to_text())
    assert [r.kind for r in back.rotations] == ["givens"] * 5


@pytest.mark.parametrize("n", [3, 5, 6])
def test_non_power_of_two_padding(n):
    u = gz.random_unit_vector(n, np.random.default_rng(n))
    c = gz.gizens_tree(u)
    padded = 1 << math.ceil(math.log2(n))
    assert c.n_modes == padded and c.depth == math.ceil(math.log2(n))
    assert gz.verify_basis_change(c, u).passed


def test_zero_padding_marks_elidable():
    c = gz.gizens_tree([0.6, 0.8, 0.0])
    elided = [r for r in c.rotations if r.elidable]
    assert [(r.p, r.q) for r in elided] == [(2, 3)]
    assert gz.verify_basis_change(c, [0.6, 0.8, 0.0]).passed


def test_invalid_vectors():
    with pytest.raises(gz.GizensError, match="zero"):
        gz.gizens_tree([0.0, 0.0])
    with pytest.raises(gz.GizensError, match="norm"):
        gz.gizens_tree([1.0, 1.0])
    with pytest.raises(gz.GizensError):
        gz.gizens_tree([1.0])
    with pytest.raises(gz.GizensError):
        gz.RotationCircuit.from_text("GIZENS 0 x 1.0\n")


def test_capacity_limit():
    u = np.zeros(16)
    u[0] = 1.0
    c = gz.gizens_tree(u)
    with pytest.raises(CapacityError):
        gz.unitary(c)


def test_induced_rotation_is_orthogonal():
    u = gz.random_unit_vector(8, np.random.default_rng(2))
    c = gz.gizens_tree(u)
    o = gz.induced_rotation(c)
    np.testing.assert_allclose(o @ o.T, np.eye(8), atol=1e-12)
    np.testing.assert_allclose(o[:, 0], u, atol=1e-12)
    np.testing.assert_allclose(gz.coefficient_action(c), u, atol=1e-12)


def test_induced_rotation_matches_operator_columns():
    u = gz.random_unit_vector(4, np.random.default_rng(3))
    c = gz.gizens_tree(u)
    o = gz.induced_rotation(c)
    for j in range(4):
        np.testing.assert_allclose(gz.gamma_coefficients(gz.conjugated_gamma(c, j), 4), o[:, j], atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 8), st.integers(0, 2**32 - 1), st.booleans())
def test_basis_change_property(n, seed, ladder):
    u = gz.random_unit_vector(n, np.random.default_rng(seed))
    c = gz.givens_ladder(u) if ladder else gz.gizens_tree(u)
    result = gz.verify_basis_change(c, u)
    assert result.passed and result.residual <= 1e-9

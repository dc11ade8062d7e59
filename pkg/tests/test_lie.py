import math

import numpy as np
import pytest
from conftest import seeds
from hypothesis import given, settings

from flagsympl import lie


def test_pair_hand_example():
    xi = np.array([[0, 1j], [-1j, 0]])
    a = np.array([[0, 1], [-1, 0]], dtype=complex)
    assert lie.pair(xi, a) == pytest.approx(2.0, abs=1e-15)


def test_pair_zero_direction(rng):
    xi = lie.random_herm_zero_diag(4, rng)
    assert lie.pair(xi, np.zeros((4, 4))) == 0.0


def test_pair_shape_mismatch():
    with pytest.raises(ValueError, match="dimension mismatch"):
        lie.pair(np.zeros((2, 2)), np.zeros((3, 3)))


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_pair_adjoint_invariant(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    xi = lie.random_herm_zero_diag(n, rng)
    a = lie.random_skew_traceless(n, rng)
    g = lie.random_su(n, rng)
    assert lie.pair(lie.ad(g, xi), lie.ad(g, a)) == pytest.approx(lie.pair(xi, a), abs=1e-12)


def test_exp_zero_is_identity():
    assert np.array_equal(lie.exp_skew(np.zeros((3, 3))), np.eye(3))


def test_exp_half_turn():
    a = np.zeros((4, 4), dtype=complex)
    a[0, 1], a[1, 0] = math.pi, -math.pi
    assert np.abs(lie.exp_skew(a) - np.diag([-1, -1, 1, 1])).max() < 1e-14


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_exp_matches_series(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 6))
    a = lie.random_skew_traceless(n, rng)
    a /= max(1.0, np.linalg.norm(a, 2))
    series, term = np.eye(n, dtype=complex), np.eye(n, dtype=complex)
    for k in range(1, 21):
        term = term @ a / k
        series = series + term
    u = lie.exp_skew(a)
    assert np.abs(u - series).max() < 1e-10
    assert lie.has_role(u, lie.Role.SPECIAL_UNITARY)
    assert np.abs(u @ lie.exp_skew(-a) - np.eye(n)).max() < 1e-12


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_log_inverts_exp(seed):
    rng = np.random.default_rng(seed)
    a = lie.random_skew_traceless(3, rng, scale=0.5)
    assert np.abs(lie.log_unitary(lie.exp_skew(a)) - a).max() < 1e-12


def test_root_component_vertex_matrix():
    xi = 2.5 * np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
    xa, m = lie.root_component(xi, 1)
    assert np.array_equal(xa, xi) and m == 2.5


def test_root_component_keeps_only_block(rng):
    xi = lie.random_herm_zero_diag(4, rng)
    xa, m = lie.root_component(xi, 2)
    mask = np.zeros((4, 4), bool)
    mask[1, 2] = mask[2, 1] = True
    assert np.array_equal(xa[mask], xi[mask]) and not xa[~mask].any()
    assert m == abs(xi[1, 2])


@pytest.mark.parametrize("i", [0, 3])
def test_root_index_range(i):
    with pytest.raises(ValueError, match="out of range"):
        lie.root_component(np.zeros((3, 3)), i)


def test_weyl_rep_squares_to_minus_one_on_block():
    w = lie.weyl_rep(3, 2)
    assert np.array_equal(w @ w, np.diag([1, -1, -1]).astype(complex))
    assert lie.has_role(w, lie.Role.SPECIAL_UNITARY)


def test_role_checks(rng):
    assert lie.has_role(lie.random_su(4, rng), lie.Role.SPECIAL_UNITARY)
    assert lie.has_role(lie.random_herm_zero_diag(4, rng), lie.Role.HERM_ZERO_DIAG)
    assert lie.has_role(lie.strict_upper(lie.random_herm_zero_diag(4, rng)), lie.Role.STRICT_UPPER)
    with pytest.raises(ValueError, match="not HermZeroDiag"):
        lie.check_role(np.eye(3), lie.Role.HERM_ZERO_DIAG)
    with pytest.raises(ValueError, match="square"):
        lie.check_role(np.zeros((2, 3)), lie.Role.HERM_TRACELESS)


def test_strict_upper_recovers_xi(rng):
    xi = lie.random_herm_zero_diag(5, rng)
    u = lie.strict_upper(xi)
    assert np.array_equal(u + lie.dagger(u), xi)

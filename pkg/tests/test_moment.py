import numpy as np
import pytest
from conftest import seeds
from hypothesis import given, settings

from flagsympl import lie, moment
from flagsympl.phase_space import (
    CotangentPoint,
    chart_coordinates,
    left_action,
    random_point,
    tangent_basis,
)


def test_mu_at_identity(rng):
    xi = lie.random_herm_zero_diag(3, rng)
    p = CotangentPoint(np.eye(3, dtype=complex), xi)
    assert np.array_equal(moment.mu(p), xi)
    assert np.array_equal(moment.mu_c(p), np.triu(xi, 1))


def test_mu_equivariant(rng):
    p = random_point(4, rng)
    g = lie.random_su(4, rng)
    assert np.abs(moment.mu(left_action(g, p)) - lie.ad(g, moment.mu(p))).max() < 1e-14


@pytest.mark.parametrize("n", [3, 4])
def test_mu_c_nilpotent_and_real_part(n, rng):
    for _ in range(100):
        p = random_point(n, rng)
        u = moment.mu_c(p)
        assert np.abs(u + lie.dagger(u) - moment.mu(p)).max() < 1e-12
        scale = np.linalg.norm(u, 2) ** n
        assert np.abs(np.linalg.matrix_power(u, n)).max() <= 1e-8 * max(scale, 1.0)


def test_generator_field_diagonal_y(rng):
    xi = lie.random_herm_zero_diag(3, rng)
    p = CotangentPoint(np.eye(3, dtype=complex), xi)
    y = np.diag([1j, -0.5j, -0.5j])
    v = moment.generator_field(p, y)
    assert not v.a.any()
    assert np.abs(v.eta - lie.bracket(y, xi)).max() < 1e-15


def test_generator_field_matches_flow(rng):
    p = random_point(3, rng)
    y = lie.random_skew_traceless(3, rng)
    h = 1e-6
    fwd = CotangentPoint(lie.exp_skew(h * y) @ p.x, p.xi)
    bwd = CotangentPoint(lie.exp_skew(-h * y) @ p.x, p.xi)
    cf, cb = chart_coordinates(p, fwd), chart_coordinates(p, bwd)
    v = moment.generator_field(p, y)
    assert np.abs((cf.a - cb.a) / (2 * h) - v.a).max() < 1e-6
    assert np.abs((cf.eta - cb.eta) / (2 * h) - v.eta).max() < 1e-6
    dmu = (moment.mu(fwd) - moment.mu(bwd)) / (2 * h)
    assert np.abs(dmu - lie.bracket(y, moment.mu(p))).max() < 1e-6


def test_hamiltonian_consistency_random(rng):
    worst = 0.0
    for _ in range(200):
        p = random_point(3, rng)
        y = lie.random_skew_traceless(3, rng)
        v = tangent_basis(3)[int(rng.integers(12))] * rng.normal() + tangent_basis(3)[int(rng.integers(12))]
        worst = max(worst, moment.hamiltonian_consistency(p, y, v))
    assert worst <= 1e-6


def test_hamiltonian_consistency_trivial_cases(rng):
    p = random_point(3, rng)
    v = tangent_basis(3)[2]
    assert moment.hamiltonian_consistency(p, np.zeros((3, 3)), v) == 0.0
    y = lie.random_skew_traceless(3, rng)
    assert moment.hamiltonian_consistency(p, y, moment.generator_field(p, y)) <= 1e-6


def test_chamber_validation():
    with pytest.raises(ValueError, match="sum to zero"):
        moment.check_chamber([1, 1, 0])
    with pytest.raises(ValueError, match="wall"):
        moment.check_chamber([2, -1, -1], strict=True)
    with pytest.raises(ValueError, match="wall"):
        moment.is_singular_value([2, -1, -1])


def test_sample_zero_fiber(rng):
    q = moment.sample_fiber([0, 0, 0], rng)
    assert not q.xi.any()


@settings(max_examples=30, deadline=None)
@given(seed=seeds)
def test_sampler_spectrum_and_diagonal(seed):
    rng = np.random.default_rng(seed)
    q = moment.sample_fiber([1.0, 0.0, -1.0], rng)
    assert np.abs(np.linalg.eigvalsh(q.xi) - [-1, 0, 1]).max() < 1e-9
    assert np.abs(np.diag(q.xi)).max() < 1e-9
    assert np.abs(moment.mu(q) - np.diag([1.0, 0, -1])).max() < 1e-9
    q.validate()


@pytest.mark.parametrize("structured", [True, False])
def test_sampler_modes(structured, rng):
    p = np.array([3.0, 1.0, -1.0, -3.0])
    for _ in range(20):
        q = moment.sample_fiber(p, rng, structured=structured)
        assert np.abs(moment.mu(q) - np.diag(p)).max() < 1e-9


def test_interlacing_leading_block(rng):
    for _ in range(100):
        q = moment.sample_fiber(moment.p_n(4), rng)
        w = np.linalg.eigvalsh(q.xi[:3, :3])
        eps = w[-1]
        assert -1e-9 <= eps <= 1 + 1e-9
        assert np.abs(w - [-eps, 0, eps]).max() < 1e-8


def test_fiber_point_inverts_mu(rng):
    q = moment.sample_fiber([2.0, 0.5, -2.5], rng)
    r = moment.fiber_point(q.xi, [2.0, 0.5, -2.5])
    assert np.abs(moment.mu(r) - np.diag([2.0, 0.5, -2.5])).max() < 1e-12
    with pytest.raises(ValueError, match="spectrum"):
        moment.fiber_point(q.xi, [1.0, 0.0, -1.0])


def test_singular_value_examples(rng):
    assert moment.is_singular_value([1, 0, -1])
    assert not moment.is_singular_value([3, -1, -2])
    full = moment.full_mu_rank(3)
    assert all(moment.mu_rank(moment.sample_fiber([3, -1, -2], rng)) == full for _ in range(100))


def test_vertex_points_drop_rank():
    xi = np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]], dtype=complex)
    q = moment.fiber_point(xi, [1.0, 0.0, -1.0])
    assert moment.mu_rank(q) < moment.full_mu_rank(3)


def test_full_rank_value():
    # image of d mu is all of i su(n) at a regular point
    assert [moment.full_mu_rank(n) for n in (2, 3, 4)] == [3, 8, 15]


def test_integer_chamber_points(rng):
    pts = moment.integer_chamber_points(4, rng, True, 5)
    assert len({tuple(p) for p in pts}) == 5
    assert all(moment.is_singular_value(p) for p in pts)

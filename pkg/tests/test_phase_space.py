import numpy as np
import pytest
from conftest import seeds
from hypothesis import given, settings

from flagsympl import lie
from flagsympl.phase_space import (
    CotangentPoint,
    TangentVector,
    along,
    chart_coordinates,
    dumps_points,
    gram_matrix,
    loads_points,
    points_distance,
    points_equal,
    pullback_error,
    random_point,
    symplectic_form,
    tangent_basis,
)


def test_basis_dimension():
    for n in (2, 3, 4):
        assert len(tangent_basis(n)) == 2 * (n * n - n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_form_nondegenerate_and_skew(n, rng):
    p = random_point(n, rng)
    g = gram_matrix(p, tangent_basis(n))
    assert np.abs(g + g.T).max() == 0
    assert np.linalg.matrix_rank(g) == g.shape[0]


def test_gram_matches_pairwise_form(rng):
    p = random_point(3, rng)
    basis = tangent_basis(3)
    ref = np.array([[symplectic_form(p, u, v) for v in basis] for u in basis])
    assert np.abs(gram_matrix(p, basis) - ref).max() < 1e-13


def test_zero_section_pairing():
    # at xi = 0 the form is the canonical pairing between a and eta
    n = 2
    p = CotangentPoint(np.eye(n, dtype=complex), np.zeros((n, n), dtype=complex))
    a = np.array([[0, 1], [-1, 0]], dtype=complex)
    eta = np.array([[0, 1j], [-1j, 0]])
    v1, v2 = TangentVector(a, 0 * a), TangentVector(0 * a, eta)
    assert symplectic_form(p, v1, v2) == pytest.approx(lie.pair(eta, a))


def test_json_round_trip(rng):
    pts = [random_point(3, rng) for _ in range(3)]
    back = loads_points(dumps_points(pts))
    assert all(np.array_equal(p.x, q.x) and np.array_equal(p.xi, q.xi) for p, q in zip(pts, back))


def test_json_rejects_bad_point():
    bad = {"n": 2, "x": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]], "xi": [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]}
    with pytest.raises(ValueError):
        loads_points(__import__("json").dumps(bad))


@settings(max_examples=25, deadline=None)
@given(seed=seeds)
def test_torus_equivalence(seed):
    rng = np.random.default_rng(seed)
    p = random_point(4, rng)
    t = lie.random_torus(4, rng)
    q = CotangentPoint(p.x @ t, lie.dagger(t) @ p.xi @ t)
    assert points_equal(p, q, 1e-12)
    assert not points_equal(p, random_point(4, rng))


def test_distance_dimension_mismatch(rng):
    with pytest.raises(ValueError):
        points_distance(random_point(2, rng), random_point(3, rng))


def test_chart_coordinates_first_order(rng):
    p = random_point(3, rng)
    v = tangent_basis(3)[3] + 0.5 * tangent_basis(3)[8]
    c = chart_coordinates(p, along(p, v, 1e-6))
    assert np.abs(c.a / 1e-6 - v.a).max() < 1e-5
    assert np.abs(c.eta / 1e-6 - v.eta).max() < 1e-5


def test_identity_map_pullback_is_exact(rng):
    p = random_point(3, rng)
    assert pullback_error(lambda q: q, p) < 1e-8


def test_left_translation_is_symplectic(rng):
    p = random_point(3, rng)
    g = lie.random_su(3, rng)
    assert pullback_error(lambda q: CotangentPoint(g @ q.x, q.xi), p) < 1e-7

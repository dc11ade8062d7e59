import numpy as np
import pytest
from conftest import seeds
from hypothesis import given, settings
from hypothesis import strategies as st

from flagsympl import lie, moment, springer


def _jordan(parts):
    n = sum(parts)
    u = np.zeros((n, n))
    pos = 0
    for k in parts:
        u[pos:pos + k, pos:pos + k] = np.eye(k, k=1)
        pos += k
    return u


@pytest.mark.parametrize("n", [2, 3, 5])
def test_single_block_is_regular(n):
    assert springer.jordan_partition(_jordan([n])) == (n,)
    assert springer.classify_partition((n,)).kind == "regular"


def test_vertex_is_subregular():
    u = lie.strict_upper(3.0 * np.array([[0, 1, 0], [1, 0, 0], [0, 0, 0]]))
    assert springer.jordan_partition(u) == (2, 1)
    assert springer.classify_partition((2, 1)).kind == "subregular"


def test_zero_is_trivial_orbit():
    assert springer.jordan_partition(np.zeros((4, 4))) == (1, 1, 1, 1)
    assert str(springer.classify_partition((2, 2))) == "other(2, 2)"


def test_not_nilpotent_rejected():
    with pytest.raises(ValueError, match="nilpotent"):
        springer.jordan_partition(np.eye(3))


partitions = st.lists(st.integers(1, 4), min_size=1, max_size=4).map(lambda p: tuple(sorted(p, reverse=True)))


@settings(max_examples=40, deadline=None)
@given(parts=partitions, seed=seeds)
def test_partition_conjugation_invariant(parts, seed):
    rng = np.random.default_rng(seed)
    n = sum(parts)
    g = lie.random_su(n, rng) if n > 1 else np.eye(1)
    u = g @ _jordan(parts) @ lie.dagger(g)
    assert springer.jordan_partition(u) == parts
    assert springer.conjugate_partition(springer.conjugate_partition(parts)) == parts


def _point(xi):
    xi = np.asarray(xi, dtype=complex)
    w = np.linalg.eigvalsh(xi)[::-1]
    return moment.fiber_point(xi, w)


def test_su3_strata():
    interior = np.array([[0, 0.6, 0.5j], [0.6, 0, 0.4], [-0.5j, 0.4, 0]])
    assert springer.springer_class(_point(interior)).kind == "regular"
    edge12 = np.array([[0, 0.6, 0.8], [0.6, 0, 0], [0.8, 0, 0]])
    assert springer.springer_class(_point(edge12)).kind == "subregular"
    edge31 = np.array([[0, 0.6, 0], [0.6, 0, 0.8], [0, 0.8, 0]])
    assert springer.springer_class(_point(edge31)).kind == "regular"


def test_boundary_labels_single_for_clean_points(rng):
    q = moment.sample_fiber([2.0, 1.0, -3.0], rng)
    assert springer.boundary_labels(q) == {"regular"}


def test_zn_half_epsilon():
    eps = 0.5
    z = springer.zn_matrix(eps, 0.7, 3)
    # rotate the leading block diag(eps, -eps) to zero diagonal
    y = np.eye(3, dtype=complex)
    y[:2, :2] = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    q = moment.fiber_point(y @ z @ lie.dagger(y), moment.p_n(3))
    form = springer.zn_normal_form(q)
    assert form.epsilon == pytest.approx(eps, abs=1e-12)
    assert abs(form.a[0]) ** 2 == pytest.approx(0.375, abs=1e-8)
    assert abs(form.a[1]) ** 2 == pytest.approx(0.375, abs=1e-8)
    assert form.max_residual() < 1e-8


def test_zn_epsilon_one():
    xi = np.zeros((4, 4), dtype=complex)
    xi[0, 1] = xi[1, 0] = 1.0
    q = moment.fiber_point(xi, moment.p_n(4))
    form = springer.zn_normal_form(q)
    assert form.epsilon == pytest.approx(1.0)
    assert np.abs(form.a).max() < 1e-12


def test_zn_requires_fiber(rng):
    q = moment.sample_fiber([1.0, 0.0, -1.0], rng)
    with pytest.raises(ValueError, match="fiber"):
        springer.zn_normal_form(q)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_zn_residuals_sampled(n, rng):
    for _ in range(200):
        form = springer.zn_normal_form(moment.sample_fiber(moment.p_n(n), rng))
        assert 0.0 <= form.epsilon <= 1.0
        assert form.max_residual() <= 1e-8


def test_census_p3(rng):
    counts = springer.hook_census([1.0, 0.0, -1.0], 3, 200, rng)
    assert set(counts) <= {(3,), (2, 1)}
    assert counts[(3,)] > 0 and counts[(2, 1)] > 0


def test_census_p4_hooks(rng):
    counts = springer.hook_census(moment.p_n(4), 4, 200, rng)
    assert all(springer.is_hook(k) for k in counts)


def test_census_zero(rng):
    assert springer.hook_census([0.0, 0.0, 0.0], 3, 10, rng) == {(1, 1, 1): 10}


def test_census_limits(rng):
    with pytest.raises(ValueError):
        springer.hook_census(np.zeros(7), 7, 1, rng)
    with pytest.raises(ValueError):
        springer.hook_census([1.0, -1.0], 3, 1, rng)

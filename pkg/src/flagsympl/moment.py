"""Moment maps of the left SU(n)-action on T*(SU(n)/T) and fiber sampling."""
from __future__ import annotations

import itertools

import numpy as np

from . import lie
from .phase_space import (
    CotangentPoint,
    TangentVector,
    along,
    symplectic_form,
    tangent_basis,
)

RANK_RTOL = 1e-8


def check_chamber(p, strict: bool = False, tol: float = 1e-12):
    """Validate a diagonal moment value: real, summing to zero.

    With ``strict`` the entries must also be strictly decreasing (open
    Weyl chamber); otherwise only the trace condition is enforced.
    """
    p = np.asarray(p, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise ValueError("moment value must be a vector of length >= 2")
    if abs(p.sum()) > tol * max(1.0, np.abs(p).max()):
        raise ValueError(f"entries must sum to zero, got {p.sum():.3g}")
    if strict and np.any(np.diff(p) >= 0):
        raise ValueError(f"{p} is not strictly decreasing (on a chamber wall)")
    return p


def p_n(n: int):
    """``diag(1, -1, 0, ..., 0)`` as a vector."""
    p = np.zeros(n)
    p[0], p[1] = 1.0, -1.0
    return p


def mu(p: CotangentPoint):
    return lie.ad(p.x, p.xi)


def mu_c(p: CotangentPoint):
    """Complex moment map (Springer map): ``Ad_x`` of the strictly upper part of xi."""
    return lie.ad(p.x, lie.strict_upper(p.xi))


def generator_field(p: CotangentPoint, y) -> TangentVector:
    """Chart expression of the fundamental vector field of ``y`` in su(n)."""
    z = lie.dagger(p.x) @ y @ p.x
    return TangentVector(lie.proj_offdiag(z), lie.bracket(lie.proj_t(z), p.xi))


def hamiltonian_consistency(p: CotangentPoint, y, v: TangentVector, step: float = 1e-5) -> float:
    """``|dH_Y(v) - omega(X_Y, v)|`` for ``H_Y = pair(mu, Y)``.

    ``dH_Y(v)`` is a central difference along the representative curve of ``v``.
    """
    hp = lie.pair(mu(along(p, v, step)), y)
    hm = lie.pair(mu(along(p, v, -step)), y)
    dh = (hp - hm) / (2 * step)
    return abs(dh - symplectic_form(p, generator_field(p, y), v))


def fiber_point(xi, p) -> CotangentPoint:
    """Complete ``xi`` to a point ``(x, xi)`` with ``mu = diag(p)``.

    ``xi`` must have the spectrum of ``p``; eigenvectors are matched to
    the entries of ``p`` in order of size.
    """
    xi = np.asarray(xi, dtype=complex)
    p = np.asarray(p, dtype=float)
    w, v = lie.eigh_desc(xi)
    order = np.argsort(-p, kind="stable")
    if np.abs(w - p[order]).max() > 1e-8 * max(1.0, np.abs(p).max()):
        raise ValueError("spectrum of xi does not match p")
    # xi = v diag(w) v*, want x xi x* = diag(p)
    vv = np.empty_like(v)
    vv[:, order] = v
    x = lie.dagger(vv)
    x = x * np.linalg.det(x) ** (-1.0 / len(p))
    return CotangentPoint(x, xi)


def _pair_vector(lmax, vmax, lmin, vmin, psi):
    return (np.sqrt(-lmin) * vmax + np.exp(1j * psi) * np.sqrt(lmax) * vmin) / np.sqrt(lmax - lmin)


def _null_vector(a, rng):
    """Random unit vector with ``v* a v = 0`` for an indefinite traceless ``a``.

    A random direction ``f`` is joined with the extreme eigenvector of the
    opposite sign; the compression of ``a`` to that plane is indefinite, and
    its eigenvectors are combined with the usual square-root weights.
    """
    n = a.shape[0]
    w, v = np.linalg.eigh(a)
    f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    f /= np.linalg.norm(f)
    q = np.vdot(f, a @ f).real
    if q == 0:
        return f
    partner = v[:, 0] if q > 0 else v[:, -1]
    g = partner - np.vdot(f, partner) * f
    if np.linalg.norm(g) < 1e-12:
        # f is (numerically) an eigenvector itself; fall back to the extremes
        return _pair_vector(w[-1], v[:, -1], w[0], v[:, 0], rng.uniform(0, 2 * np.pi))
    g /= np.linalg.norm(g)
    basis = np.column_stack([f, g])
    bw, bv = np.linalg.eigh(lie.dagger(basis) @ a @ basis)
    hi, lo = basis @ bv[:, 1], basis @ bv[:, 0]
    return _pair_vector(bw[1], hi, bw[0], lo, rng.uniform(0, 2 * np.pi))


def _complete_unitary(v, rng, mix: bool):
    """Unitary with first column ``v`` (Householder).  With ``mix`` the
    remaining columns are randomly rotated inside the complement."""
    n = v.size
    ph = v[0] / abs(v[0]) if abs(v[0]) > 1e-300 else 1.0
    w = v.astype(complex)
    w[0] -= ph
    nw = np.linalg.norm(w)
    h = np.eye(n, dtype=complex)
    if nw > 1e-14:
        w = w / nw
        h -= 2 * np.outer(w, np.conj(w))
    # h is a Hermitian reflection with h (ph e1) = v
    u = h.copy()
    u[:, 0] *= ph
    if n > 1 and mix:
        rot = np.exp(2j * np.pi * rng.uniform()) * (
            lie.random_su(n - 1, rng) if n > 2 else np.eye(1))
        u[:, 1:] = u[:, 1:] @ rot
    return u


def _schur_horn_generic(a, rng):
    """Unitary ``W`` with ``W* a W`` zero-diagonal, complement randomly mixed."""
    n = a.shape[0]
    scale = max(1.0, np.abs(a).max())
    if n == 1 or np.abs(a).max() <= 1e-14 * scale:
        return lie.random_su(n, rng) if n > 1 else np.eye(1, dtype=complex)
    vec = _null_vector(a, rng)
    u = _complete_unitary(vec, rng, mix=True)
    rest = lie.dagger(u) @ a @ u
    sub = _schur_horn_generic(rest[1:, 1:], rng)
    big = np.eye(n, dtype=complex)
    big[1:, 1:] = sub
    return u @ big


def _schur_horn_structured(p, rng):
    """Eigenbasis-aligned variant: repeatedly pair a random positive with a
    random negative diagonal value.  Sub-multisets whose values sum to zero
    split off as blocks, so this draws from the lower-dimensional strata of
    the fiber as well as its generic part."""
    n = len(p)
    vals = list(map(float, p))
    # columns: current orthonormal frame in which a is diagonal with vals
    frame = np.eye(n, dtype=complex)
    out_cols = []
    while True:
        pos = [j for j, x in enumerate(vals) if x > 0]
        neg = [j for j, x in enumerate(vals) if x < 0]
        if not pos or not neg:
            break
        j = pos[rng.integers(len(pos))]
        k = neg[rng.integers(len(neg))]
        lmax, lmin = vals[j], vals[k]
        psi = rng.uniform(0, 2 * np.pi)
        c1, c2 = np.sqrt(-lmin / (lmax - lmin)), np.sqrt(lmax / (lmax - lmin))
        vcol = c1 * frame[:, j] + np.exp(1j * psi) * c2 * frame[:, k]
        wcol = c2 * frame[:, j] - np.exp(1j * psi) * c1 * frame[:, k]
        out_cols.append(vcol)
        frame[:, j] = wcol
        vals[j] = lmax + lmin
        frame = np.delete(frame, k, axis=1)
        del vals[k]
    # leftover values are all zero (trace condition)
    cols = out_cols + [frame[:, j] for j in range(frame.shape[1])]
    perm = rng.permutation(n)
    return np.column_stack([cols[j] for j in perm])


def sample_fiber(p, rng, structured: bool | None = None) -> CotangentPoint:
    """Random point of ``mu^{-1}(diag(p))``.

    The draw is constructive, not uniform on the fiber.  ``structured``
    selects the eigenbasis-aligned construction (see
    ``_schur_horn_structured``); by default each draw picks one of the two
    constructions with equal probability.
    """
    p = check_chamber(p)
    n = p.size
    if np.all(p == 0):
        return CotangentPoint(lie.random_su(n, rng), np.zeros((n, n), dtype=complex))
    if structured is None:
        structured = bool(rng.integers(2))
    a = np.diag(p).astype(complex)
    if structured:
        w = _schur_horn_structured(p, rng)
    else:
        w = _schur_horn_generic(a, rng)
    # x = W, xi = W* a W;  fix det with a scalar phase
    x = w * np.linalg.det(w) ** (-1.0 / n)
    t = lie.random_torus(n, rng)
    s = lie.random_torus(n, rng)   # stabilizer of a generic diag(p)
    x = s @ x @ t
    xi = lie.dagger(x) @ a @ x
    xi = (xi + lie.dagger(xi)) / 2
    np.fill_diagonal(xi, 0.0)
    return CotangentPoint(x, xi)


def _herm_coords(h):
    iu = np.triu_indices(h.shape[0])
    return np.concatenate([h[iu].real, h[np.triu_indices(h.shape[0], 1)].imag])


def dmu_matrix(p: CotangentPoint) -> np.ndarray:
    """Real matrix of ``(a, eta) -> Ad_x([a, xi] + eta)`` on the tangent basis."""
    cols = [_herm_coords(lie.ad(p.x, lie.bracket(v.a, p.xi) + v.eta))
            for v in tangent_basis(p.n)]
    return np.column_stack(cols)


def mu_rank(p: CotangentPoint, rtol: float = RANK_RTOL) -> int:
    s = np.linalg.svd(dmu_matrix(p), compute_uv=False)
    return int(np.sum(s > rtol * s.max())) if s.max() > 0 else 0


def full_mu_rank(n: int) -> int:
    """Rank of ``d mu`` at a regular point: ``dim su(n)``."""
    return n * n - 1


def is_singular_value(p, tol: float = 1e-12) -> bool:
    """True iff some proper nonempty subset of the entries of ``p`` sums to zero.

    ``p`` must lie in the open chamber.
    """
    p = check_chamber(p, strict=True)
    n = p.size
    scale = max(1.0, np.abs(p).max())
    for k in range(1, n):
        for sub in itertools.combinations(p, k):
            if abs(sum(sub)) <= tol * scale:
                return True
    return False


def integer_chamber_points(n: int, rng, singular: bool, count: int, bound: int = 12) -> list:
    """Distinct strictly decreasing integer vectors summing to zero, with
    ``is_singular_value`` equal to ``singular``."""
    out = set()
    for _ in range(10000 * count):
        head = rng.integers(-bound, bound + 1, n - 1)
        p = np.append(head, -head.sum())
        p = np.sort(p)[::-1]
        if np.any(np.diff(p) >= 0):
            continue
        if is_singular_value(p) == singular:
            out.add(tuple(int(v) for v in p))
        if len(out) == count:
            return [np.array(v, dtype=float) for v in sorted(out)]
    raise RuntimeError("could not find enough chamber points")

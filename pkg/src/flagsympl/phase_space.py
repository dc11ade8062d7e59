"""Points and tangent vectors of T*(SU(n)/T) in the chart G x_T t^perp.

A point is a representative ``(x, xi)`` with ``x`` in SU(n) and ``xi``
Hermitian with zero diagonal, modulo ``(x, xi) ~ (x t, Ad_{t^-1} xi)``
for diagonal ``t``.  A tangent vector ``(a, eta)`` stands for the curve
``s -> (x exp(s a), xi + s eta)`` with ``a`` skew-Hermitian off-diagonal.
"""
from __future__ import annotations

import json
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from . import lie

# Overall sign of the symplectic form.  +1 is the choice for which the
# left-action generators are Hamiltonian with H_Y = pair(mu, Y); see
# moment.hamiltonian_consistency.
OMEGA_SIGN = 1.0


@dataclass(frozen=True)
class CotangentPoint:
    x: np.ndarray
    xi: np.ndarray

    @property
    def n(self) -> int:
        return self.x.shape[0]

    def validate(self, tol: float = 1e-10) -> CotangentPoint:
        lie.check_role(self.x, lie.Role.SPECIAL_UNITARY, tol)
        lie.check_role(self.xi, lie.Role.HERM_ZERO_DIAG, tol)
        return self

    def to_dict(self) -> dict:
        return {"n": self.n, "x": _encode(self.x), "xi": _encode(self.xi)}

    @classmethod
    def from_dict(cls, d: dict) -> CotangentPoint:
        p = cls(_decode(d["x"]), _decode(d["xi"]))
        if "n" in d and d["n"] != p.n:
            raise ValueError(f"n={d['n']} does not match matrix size {p.n}")
        return p.validate()


@dataclass(frozen=True)
class TangentVector:
    a: np.ndarray
    eta: np.ndarray

    def __add__(self, other):
        return TangentVector(self.a + other.a, self.eta + other.eta)

    def __mul__(self, c):
        return TangentVector(c * self.a, c * self.eta)

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        return {"n": self.a.shape[0], "a": _encode(self.a), "eta": _encode(self.eta)}

    @classmethod
    def from_dict(cls, d: dict) -> TangentVector:
        return cls(_decode(d["a"]), _decode(d["eta"]))


def _encode(m):
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _decode(rows):
    arr = np.asarray(rows, dtype=float)
    return arr[..., 0] + 1j * arr[..., 1]


def dumps_points(points) -> str:
    return json.dumps([p.to_dict() for p in points])


def loads_points(text: str) -> list[CotangentPoint]:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [CotangentPoint.from_dict(d) for d in data]


def random_point(n: int, rng, scale: float = 1.0) -> CotangentPoint:
    return CotangentPoint(lie.random_su(n, rng), lie.random_herm_zero_diag(n, rng, scale))


def left_action(g, p: CotangentPoint) -> CotangentPoint:
    return CotangentPoint(g @ p.x, p.xi)


def _offdiag_units(n):
    for j in range(n):
        for k in range(j + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[j, k] = 1.0
            yield e


def tangent_basis(n: int) -> list[TangentVector]:
    """Real basis of the chart m + t^perp, dimension ``2(n^2 - n)``."""
    zero = np.zeros((n, n), dtype=complex)
    basis = []
    for e in _offdiag_units(n):
        basis.append(TangentVector(e - e.T, zero))
        basis.append(TangentVector(1j * (e + e.T), zero))
    for e in _offdiag_units(n):
        basis.append(TangentVector(zero, e + e.T))
        basis.append(TangentVector(zero, 1j * (e - e.T)))
    return basis


def symplectic_form(p: CotangentPoint, v1: TangentVector, v2: TangentVector) -> float:
    """``omega(v1, v2) = <eta2, a1> - <eta1, a2> + <xi, [a1, a2]>``."""
    val = (lie.pair(v2.eta, v1.a) - lie.pair(v1.eta, v2.a)
           + lie.pair(p.xi, lie.bracket(v1.a, v2.a)))
    return OMEGA_SIGN * val


def gram_matrix(p: CotangentPoint, vectors) -> np.ndarray:
    """Matrix ``omega(v_i, v_j)``, vectorized over the pairs."""
    k = len(vectors)
    a_t = np.array([v.a.T for v in vectors]).reshape(k, -1)
    eta = np.array([v.eta for v in vectors]).reshape(k, -1)
    xa = np.array([p.xi @ v.a for v in vectors]).reshape(k, -1)
    # tr(X Y) = sum(X * Y.T); pair(X, A) = Re(i tr(X A))
    cross = (1j * (a_t @ eta.T)).real          # [i, j] = pair(eta_j, a_i)
    m = xa @ a_t.T                             # [i, j] = tr(xi a_i a_j)
    g = cross - cross.T + (1j * (m - m.T)).real
    return OMEGA_SIGN * g


def along(p: CotangentPoint, v: TangentVector, s: float) -> CotangentPoint:
    """Point at parameter ``s`` on the representative curve of ``v``."""
    return CotangentPoint(p.x @ lie.exp_skew(s * v.a), p.xi + s * v.eta)


def chart_coordinates(base: CotangentPoint, q: CotangentPoint) -> TangentVector:
    """Coordinates of a nearby point ``q`` in the chart centred at ``base``.

    ``q`` is first moved within its equivalence class so that
    ``base.x^{-1} q.x`` has no torus component; the result ``(A, zeta - xi)``
    has ``q ~ (base.x exp(A), base.xi + (zeta - xi))`` up to second order.
    """
    rel = lie.dagger(base.x) @ q.x
    log_rel = lie.log_unitary(rel)
    t = np.diag(np.exp(-np.diag(log_rel)))
    aligned = rel @ t
    a = lie.proj_offdiag(lie.log_unitary(aligned))
    zeta = lie.dagger(t) @ q.xi @ t
    return TangentVector(a, zeta - base.xi)


def points_distance(p: CotangentPoint, q: CotangentPoint) -> float:
    """Distance between equivalence classes, zero iff ``p ~ q``.

    The maximum of the off-diagonal part of ``x_p^{-1} x_q`` and of the
    mismatch in ``xi`` after transporting by its diagonal.
    """
    if p.n != q.n:
        raise ValueError(f"dimension mismatch: {p.n} vs {q.n}")
    t = lie.dagger(p.x) @ q.x
    off = float(np.abs(lie.proj_offdiag(t)).max()) if p.n > 1 else 0.0
    d = np.diag(t)
    d = d / np.abs(d)
    xi_t = np.conj(d)[:, None] * p.xi * d[None, :]
    return max(off, float(np.abs(xi_t - q.xi).max()))


def points_equal(p: CotangentPoint, q: CotangentPoint, tol: float = 1e-9) -> bool:
    return points_distance(p, q) <= tol


def pushforward(fmap: Callable[[CotangentPoint], CotangentPoint], p: CotangentPoint,
                step: float = 1e-5, basis=None):
    """Central-difference images of a tangent basis under ``fmap``.

    Returns ``(fmap(p), pushed_vectors)``.
    """
    if basis is None:
        basis = tangent_basis(p.n)
    image = fmap(p)
    pushed = []
    for v in basis:
        cp = chart_coordinates(image, fmap(along(p, v, step)))
        cm = chart_coordinates(image, fmap(along(p, v, -step)))
        pushed.append(TangentVector((cp.a - cm.a) / (2 * step),
                                    (cp.eta - cm.eta) / (2 * step)))
    return image, pushed


def pullback_error(fmap, p: CotangentPoint, step: float = 1e-5) -> float:
    """Max entrywise gap between ``omega`` and ``fmap^* omega`` on a basis at ``p``."""
    basis = tangent_basis(p.n)
    image, pushed = pushforward(fmap, p, step, basis)
    return float(np.abs(gram_matrix(image, pushed) - gram_matrix(p, basis)).max())

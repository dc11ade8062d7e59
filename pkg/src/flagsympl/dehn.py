"""G-equivariant fiberwise Dehn twists along a simple root plane.

For a point ``(x, xi)`` let ``xi_a`` be the root-plane part of ``xi`` and
``m = |xi[i, i+1]|``.  With ``u = xi_a / m`` the twist is

    tau(x, xi) = (x exp(h(m) iu), Ad_{exp(-h(m) iu)} xi)

and on ``{m = 0}`` it is ``(x w, Ad_{w^-1} xi)`` with the Weyl
representative ``w`` of :func:`lie.weyl_rep`, the limit of the first branch.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lie
from .moment import mu, mu_c
from .phase_space import (
    CotangentPoint,
    TangentVector,
    along,
    left_action,
    points_distance,
    pullback_error,
    symplectic_form,
    tangent_basis,
)

GUARD = 0.05
# X = (h iu, -h [iu, xi]) satisfies omega(X, .) = dH with H = -2 htilde(m):
# the pairing of xi with iu equals -2m in the convention of lie.pair.
HAMILTONIAN_SCALE = -2.0


def _g(s):
    s = np.clip(s, -1.0, 1.0)
    return 0.5 * (3 * s - s ** 3)


def _G(s):
    """Antiderivative of the clamped ``g`` with ``G(0) = 0``."""
    s = np.asarray(s, dtype=float)
    a = np.abs(s)
    inner = 0.75 * a ** 2 - a ** 4 / 8
    return np.where(a <= 1, inner, 0.625 + a - 1)


@dataclass(frozen=True)
class TwistProfile:
    """``h(t) = scale * (pi/2) (1 + g(t / cutoff))`` with ``g`` the clamped cubic."""

    cutoff: float = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if not self.cutoff > 0:
            raise ValueError("cutoff must be positive")

    def h(self, t):
        val = 0.5 * np.pi * (1 + _g(np.asarray(t, dtype=float) / self.cutoff))
        return self.scale * val

    def dh(self, t):
        s = np.asarray(t, dtype=float) / self.cutoff
        d = np.where(np.abs(s) < 1, 0.75 * np.pi * (1 - s ** 2) / self.cutoff, 0.0)
        return self.scale * d

    def htilde(self, t):
        t = np.asarray(t, dtype=float)
        return self.scale * 0.5 * np.pi * (t + self.cutoff * _G(t / self.cutoff))

    def rescaled(self, factor: float) -> TwistProfile:
        return TwistProfile(self.cutoff * factor, self.scale)


def h_default(t, t0: float = 1.0):
    return TwistProfile(t0).h(t)


def _block_exp(n: int, i: int, u_block, theta: float):
    """``exp(theta iu)`` for ``u`` Hermitian, zero-diagonal, unit on the block."""
    if theta == np.pi or theta == -np.pi:
        c, s = -1.0, 0.0
    else:
        c, s = np.cos(theta), np.sin(theta)
    e = np.eye(n, dtype=complex)
    e[i - 1:i + 1, i - 1:i + 1] = c * np.eye(2) + s * 1j * u_block
    return e


def twist_unitary(xi, i: int, profile: TwistProfile, t: float = 1.0, inverse: bool = False):
    """The right factor ``g`` with ``tau(x, xi) = (x g, Ad_{g^-1} xi)``.

    ``t`` scales the flow time; ``t = 1`` is the twist itself.
    """
    xi = np.asarray(xi, dtype=complex)
    n = xi.shape[0]
    xa, m = lie.root_component(xi, i)
    sign = -1.0 if inverse else 1.0
    if m > 0:
        u = xa[i - 1:i + 1, i - 1:i + 1] / m
        return _block_exp(n, i, u, sign * t * float(profile.h(m)))
    # zero root component: the pi/2 rotation about the real unit direction
    u = np.array([[0, 1], [1, 0]], dtype=complex)
    if t == 1.0:
        w = lie.weyl_rep(n, i)
        return lie.dagger(w) if inverse else w
    return _block_exp(n, i, u, sign * t * float(profile.h(0.0)))


def tau(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile()) -> CotangentPoint:
    g = twist_unitary(p.xi, i, profile)
    return CotangentPoint(p.x @ g, lie.dagger(g) @ p.xi @ g)


def tau_inverse(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile()) -> CotangentPoint:
    g = twist_unitary(p.xi, i, profile, inverse=True)
    return CotangentPoint(p.x @ g, lie.dagger(g) @ p.xi @ g)


def twist_family(p: CotangentPoint, i: int, profile: TwistProfile, ts) -> list[CotangentPoint]:
    """Points of the Hamiltonian flow at times ``ts``; time 1 is ``tau``."""
    out = []
    for t in ts:
        g = twist_unitary(p.xi, i, profile, t=float(t))
        out.append(CotangentPoint(p.x @ g, lie.dagger(g) @ p.xi @ g))
    return out


def hamiltonian_field(p: CotangentPoint, i: int, profile: TwistProfile) -> TangentVector:
    """Generator ``(h(m) iu, -h(m) [iu, xi])`` of the twist family (``m > 0``)."""
    xa, m = lie.root_component(p.xi, i)
    if m == 0:
        raise ValueError("Hamiltonian field is defined only where the root component is nonzero")
    iu = 1j * xa / m
    h = float(profile.h(m))
    return TangentVector(h * iu, -h * lie.bracket(iu, p.xi))


def hamiltonian(p: CotangentPoint, i: int, profile: TwistProfile) -> float:
    _, m = lie.root_component(p.xi, i)
    return HAMILTONIAN_SCALE * float(profile.htilde(m))


def hamiltonian_field_check(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile(),
                            step: float = 1e-5, basis=None) -> float:
    """Max over a tangent basis of ``|dH(v) - omega(X, v)|``."""
    _, m = lie.root_component(p.xi, i)
    if m < GUARD:
        raise ValueError(f"root component {m:.3g} inside the guard band {GUARD}")
    x_field = hamiltonian_field(p, i, profile)
    if basis is None:
        basis = tangent_basis(p.n)
    worst = 0.0
    for v in basis:
        dh = (hamiltonian(along(p, v, step), i, profile)
              - hamiltonian(along(p, v, -step), i, profile)) / (2 * step)
        worst = max(worst, abs(dh - symplectic_form(p, x_field, v)))
    return worst


def twist_pullback_error(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile(),
                         step: float = 1e-5) -> float:
    _, m = lie.root_component(p.xi, i)
    if m < GUARD:
        raise ValueError(f"root component {m:.3g} inside the guard band {GUARD}")
    return pullback_error(lambda q: tau(q, i, profile), p, step)


def steinberg_ratio(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile()) -> float:
    """``||mu_c(tau(p)) - mu_c(p)|| / ||xi||`` (Frobenius norms)."""
    nx = np.linalg.norm(p.xi)
    if nx == 0:
        raise ValueError("ratio undefined at the zero section")
    return float(np.linalg.norm(mu_c(tau(p, i, profile)) - mu_c(p)) / nx)


LADDER = tuple(2.0 ** k for k in range(11))


def steinberg_ladder(x, direction, offset, i: int, profile: TwistProfile = TwistProfile(),
                     scales=LADDER):
    """Ratios along ``xi_s = s * direction + offset``.

    Returns ``(scales, ratios, slope)`` with ``slope`` the least-squares
    log-log slope (``nan`` when some ratio is zero).
    """
    ratios = np.array([steinberg_ratio(CotangentPoint(x, s * np.asarray(direction) + offset),
                                       i, profile) for s in scales])
    if np.any(ratios <= 0):
        return np.asarray(scales), ratios, float("nan")
    slope = np.polyfit(np.log(scales), np.log(ratios), 1)[0]
    return np.asarray(scales), ratios, float(slope)


def without_root(xi, i: int):
    xa, _ = lie.root_component(xi, i)
    return np.asarray(xi, dtype=complex) - xa


def verify_twist(p: CotangentPoint, i: int, profile: TwistProfile = TwistProfile(),
                 rng=None, step: float = 1e-5) -> dict:
    """Equivariance, moment preservation, symplecticity and the Steinberg ladder at ``p``."""
    rng = np.random.default_rng(0) if rng is None else rng
    g = lie.random_su(p.n, rng)
    q = tau(p, i, profile)
    _, m = lie.root_component(p.xi, i)
    report = {
        "equivariance": points_distance(tau(left_action(g, p), i, profile), left_action(g, q)),
        "mu_preservation": float(np.abs(mu(q) - mu(p)).max()),
        "symplectic": twist_pullback_error(p, i, profile, step) if m >= GUARD else None,
    }
    _, ratios, _ = steinberg_ladder(p.x, p.xi, 0.0, i, profile)
    report["steinberg_ratio"] = ratios.tolist()
    return report

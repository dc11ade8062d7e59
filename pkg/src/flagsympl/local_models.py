"""Linear S^1-equivariant symplectic maps of C^2 and the real blow-up chart.

The circle acts on ``C^2`` by ``(z0, z1) -> (e^{-i theta} z0, e^{i theta} z1)``
with moment map ``-|z0|^2 + |z1|^2``.  Equivariant linear symplectic maps
have the form

    (z0, z1) -> (l1 e^{i t1} z0 + l2 e^{-i t2} conj(z1),
                 l2 e^{-i t3} conj(z0) + l1 e^{i t4} z1)

with ``l1^2 - l2^2 = 1`` and ``t1 + t2 = t3 + t4``.  Real coordinates are
ordered ``(x0, y0, x1, y1)`` with ``omega = dx0 ^ dy0 + dx1 ^ dy1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

J4 = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
CHECK_ANGLE = 1.0
TWO_PI = 2 * np.pi


def _wrap(a):
    """Angle in ``(-pi, pi]``."""
    return float(np.pi - np.mod(np.pi - a, TWO_PI))


class MembershipRejected(ValueError):
    def __init__(self, residual: float, what: str):
        super().__init__(f"not in Sp(4)^S1: {what} residual {residual:.3g}")
        self.residual = residual


@dataclass(frozen=True)
class Sp4Equivariant:
    lambda1: float
    lambda2: float
    theta1: float = 0.0
    theta2: float = 0.0
    theta3: float = 0.0
    theta4: float = 0.0

    def residuals(self) -> dict:
        res = {"hyperbola": abs(self.lambda1 ** 2 - self.lambda2 ** 2 - 1)}
        if self.lambda2 != 0:
            res["phase"] = abs(_wrap(self.theta1 + self.theta2 - self.theta3 - self.theta4))
        return res

    def validate(self, tol: float = 1e-10) -> Sp4Equivariant:
        if self.lambda1 < 1 - tol or self.lambda2 < -tol:
            raise ValueError("need lambda1 >= 1 and lambda2 >= 0")
        bad = {k: v for k, v in self.residuals().items() if v > tol}
        if bad:
            raise ValueError(f"constraint violated: {bad}")
        return self

    @property
    def thetas(self):
        return np.array([self.theta1, self.theta2, self.theta3, self.theta4])

    def is_central(self, tol: float = 1e-8) -> bool:
        """True for elements of the circle itself: ``l2 = 0`` and ``t1 + t4 = 0``."""
        return self.lambda2 <= tol and abs(_wrap(self.theta1 + self.theta4)) <= tol


def random_element(rng, max_lambda2: float = 3.0) -> Sp4Equivariant:
    l2 = rng.uniform(0, max_lambda2)
    t1, t2, t4 = rng.uniform(-np.pi, np.pi, 3)
    return Sp4Equivariant(float(np.sqrt(1 + l2 ** 2)), float(l2), float(t1), float(t2),
                          _wrap(t1 + t2 - t4), float(t4))


def _lin(c):
    return np.array([[c.real, -c.imag], [c.imag, c.real]])


def _anti(d):
    return np.array([[d.real, d.imag], [d.imag, -d.real]])


def apply(e: Sp4Equivariant, z0, z1):
    z0n = e.lambda1 * np.exp(1j * e.theta1) * z0 + e.lambda2 * np.exp(-1j * e.theta2) * np.conj(z1)
    z1n = e.lambda2 * np.exp(-1j * e.theta3) * np.conj(z0) + e.lambda1 * np.exp(1j * e.theta4) * z1
    return z0n, z1n


def sp4_matrix(e: Sp4Equivariant) -> np.ndarray:
    m = np.zeros((4, 4))
    m[:2, :2] = _lin(e.lambda1 * np.exp(1j * e.theta1))
    m[:2, 2:] = _anti(e.lambda2 * np.exp(-1j * e.theta2))
    m[2:, :2] = _anti(e.lambda2 * np.exp(-1j * e.theta3))
    m[2:, 2:] = _lin(e.lambda1 * np.exp(1j * e.theta4))
    return m


def rotation(theta: float) -> np.ndarray:
    """Real matrix of the circle action at angle ``theta``."""
    m = np.zeros((4, 4))
    m[:2, :2] = _lin(np.exp(-1j * theta))
    m[2:, 2:] = _lin(np.exp(1j * theta))
    return m


def _split(block):
    """Linear and antilinear coefficients of a real 2x2 block."""
    c = 0.5 * (block[0, 0] + block[1, 1]) + 0.5j * (block[1, 0] - block[0, 1])
    d = 0.5 * (block[0, 0] - block[1, 1]) + 0.5j * (block[1, 0] + block[0, 1])
    return c, d


def sp4_membership(m, tol: float = 1e-9) -> Sp4Equivariant:
    """Parameters of ``m`` if it is symplectic and commutes with the circle action."""
    m = np.asarray(m, dtype=float)
    if m.shape != (4, 4):
        raise ValueError("expected a 4x4 real matrix")
    scale = max(1.0, np.abs(m).max()) ** 2
    symp = float(np.abs(m.T @ J4 @ m - J4).max()) / scale
    if symp > tol:
        raise MembershipRejected(symp, "symplectic")
    r = rotation(CHECK_ANGLE)
    comm = float(np.abs(m @ r - r @ m).max()) / np.sqrt(scale)
    if comm > tol:
        raise MembershipRejected(comm, "equivariance")
    c0, _ = _split(m[:2, :2])
    _, d01 = _split(m[:2, 2:])
    _, d10 = _split(m[2:, :2])
    c1, _ = _split(m[2:, 2:])
    l1, l2 = abs(c0), abs(d01)
    t1, t4 = float(np.angle(c0)), float(np.angle(c1))
    if l2 > tol:
        t2, t3 = -float(np.angle(d01)), -float(np.angle(d10))
    else:
        l2, t2 = 0.0, 0.0
        t3 = _wrap(t1 - t4)
    return Sp4Equivariant(float(l1), float(l2), t1, t2, t3, t4)


def compose(e: Sp4Equivariant, f: Sp4Equivariant) -> Sp4Equivariant:
    """``e o f``."""
    return sp4_membership(sp4_matrix(e) @ sp4_matrix(f))


def inverse(e: Sp4Equivariant) -> Sp4Equivariant:
    m = sp4_matrix(e)
    return sp4_membership(-J4 @ m.T @ J4)


def normalize(e: Sp4Equivariant) -> Sp4Equivariant:
    """Representative modulo the circle with ``theta1 = 0``."""
    t1 = e.theta1
    return Sp4Equivariant(e.lambda1, e.lambda2, 0.0, _wrap(e.theta2 + t1),
                          _wrap(e.theta3 - t1), _wrap(e.theta4 + t1))


def reduce_at_zero(z0, z1, tol: float = 1e-10):
    """Reduced-plane value ``z0 z1 / sqrt|z0 z1|`` on the zero level."""
    if abs(abs(z0) - abs(z1)) > tol * max(1.0, abs(z0)):
        raise ValueError("point is off the zero level |z0| = |z1|")
    prod = z0 * z1
    return 0j if prod == 0 else prod / np.sqrt(abs(prod))


def induced_rays(e: Sp4Equivariant):
    """Images ``(w+, w-)`` of the unit ray vectors ``+1`` and ``-1`` of the reduced plane."""
    e = normalize(e)
    q = e.lambda2 * np.exp(-1j * e.theta2)
    a, b = e.lambda1 + q, e.lambda1 - q
    wp = abs(a) * np.exp(1j * (e.theta4 + 2 * np.angle(a)))
    wm = abs(b) * np.exp(1j * (e.theta4 + 2 * np.angle(b) + np.pi))
    return complex(wp), complex(wm)


def induced_rays_numeric(e: Sp4Equivariant, t: float = 1e-3):
    """Transport of ``(t, t)`` and ``(t, -t)`` through the real matrix, divided by ``t``."""
    m = sp4_matrix(e)
    out = []
    for sgn in (1.0, -1.0):
        v = m @ np.array([t, 0.0, sgn * t, 0.0])
        out.append(complex(reduce_at_zero(v[0] + 1j * v[1], v[2] + 1j * v[3], 1e-9)) / t)
    return out[0], out[1]


def from_rays(wp: complex, wm: complex) -> Sp4Equivariant:
    """The element with ``theta1 = 0`` inducing ``(wp, wm)``."""
    if wp == 0 or wm == 0:
        raise ValueError("ray images must be nonzero")
    delta = 0.5 * _wrap(np.angle(wp) - np.angle(wm) - np.pi)
    if abs(abs(delta) - np.pi / 2) < 1e-6:
        raise ValueError("ray images with equal arguments are not induced by any element")
    ratio = abs(wp) / abs(wm) * np.exp(1j * delta)
    kappa = (ratio - 1) / (ratio + 1)
    l1 = 1 / np.sqrt(1 - abs(kappa) ** 2)
    q = l1 * kappa
    l2 = abs(q)
    t2 = -float(np.angle(q)) if l2 > 0 else 0.0
    t4 = _wrap(np.angle(wp) - 2 * np.angle(l1 + q))
    return Sp4Equivariant(float(l1), float(l2), 0.0, t2, _wrap(t2 - t4), t4)


def solve_for_rays(arg_plus: float, arg_minus: float, modulus_ratio: float = 1.0) -> Sp4Equivariant:
    """An element whose ray images have the prescribed arguments."""
    if abs(_wrap(arg_plus - arg_minus)) <= 1e-6:
        raise ValueError("prescribed arguments coincide; no element realizes them")
    return from_rays(modulus_ratio * np.exp(1j * arg_plus), np.exp(1j * arg_minus))


def winding_number(lambda2: float = 1.0, theta2: float = 0.3, samples: int = 360) -> int:
    """Winding of ``arg w+`` over the circle ``theta4 in [0, 2 pi)``."""
    l1 = np.sqrt(1 + lambda2 ** 2)
    ts = np.linspace(0, TWO_PI, samples + 1)
    args = [np.angle(induced_rays(Sp4Equivariant(l1, lambda2, 0.0, theta2, theta2 - t, t))[0])
            for t in ts]
    steps = np.diff(np.unwrap(args))
    return round(steps.sum() / TWO_PI)


# ---- real blow-up chart -------------------------------------------------------------


@dataclass(frozen=True)
class BlowupPoint:
    """Either a disk point ``(z0, z)`` or a cylinder point ``(t, s, z)``."""

    side: str
    z: np.ndarray
    z0: complex = 0j
    t: float = 0.0
    s: float = 0.0

    def moment(self) -> float:
        zz = float(np.sum(np.abs(self.z) ** 2))
        if self.side == "disk":
            return -abs(self.z0) ** 2 + zz
        return -self.s + zz


@dataclass(frozen=True)
class BlowupChart:
    epsilon: float = 1.0
    delta: float = 1.0

    def in_annulus(self, q: BlowupPoint) -> bool:
        s = abs(q.z0) ** 2 if q.side == "disk" else q.s
        return self.epsilon / 2 <= s < self.epsilon

    def transition(self, q: BlowupPoint) -> BlowupPoint:
        """Disk <-> cylinder on the gluing annulus: ``t = arg z0``, ``s = |z0|^2``."""
        if not self.in_annulus(q):
            raise ValueError("point is outside the gluing annulus")
        if q.side == "disk":
            return BlowupPoint("cylinder", q.z, t=float(np.angle(q.z0)), s=abs(q.z0) ** 2)
        return BlowupPoint("disk", q.z, z0=np.sqrt(q.s) * np.exp(1j * q.t))


def act(theta: float, q: BlowupPoint) -> BlowupPoint:
    """Circle action: ``z0 -> e^{-i theta} z0`` (``t -> t - theta``), ``z -> e^{i theta} z``."""
    z = np.exp(1j * theta) * q.z
    if q.side == "disk":
        return BlowupPoint("disk", z, z0=np.exp(-1j * theta) * q.z0)
    return BlowupPoint("cylinder", z, t=_wrap(q.t - theta), s=q.s)


def transition_symplectic_residual(chart: BlowupChart, z0: complex, step: float = 1e-5) -> float:
    """``|(1/2) det d(s, t)/d(x0, y0) - 1|`` by central differences.

    The cylinder carries ``(1/2) ds ^ dt``, which pulls back to ``dx0 ^ dy0``.
    """
    def st(x, y):
        c = chart.transition(BlowupPoint("disk", np.zeros(0), z0=complex(x, y)))
        return np.array([c.s, c.t])

    x, y = z0.real, z0.imag
    dx = (st(x + step, y) - st(x - step, y)) / (2 * step)
    dy = (st(x, y + step) - st(x, y - step)) / (2 * step)
    return abs(0.5 * (dx[0] * dy[1] - dx[1] * dy[0]) - 1.0)


def _sample_annulus(chart, rng, k):
    s = rng.uniform(chart.epsilon / 2, chart.epsilon)
    z0 = np.sqrt(s) * np.exp(1j * rng.uniform(-np.pi, np.pi))
    z = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) * 0.5
    return BlowupPoint("disk", z, z0=complex(z0))


def moment_gradient_norm(q: BlowupPoint, step: float = 1e-6) -> float:
    """Norm of the gradient of the moment map in the chart of ``q``."""
    if q.side == "disk":
        coords = np.concatenate([[q.z0.real, q.z0.imag], q.z.real, q.z.imag])

        def f(v):
            k = q.z.size
            return BlowupPoint("disk", v[2:2 + k] + 1j * v[2 + k:], z0=complex(v[0], v[1])).moment()
    else:
        coords = np.concatenate([[q.t, q.s], q.z.real, q.z.imag])

        def f(v):
            k = q.z.size
            return BlowupPoint("cylinder", v[2:2 + k] + 1j * v[2 + k:], t=v[0], s=v[1]).moment()
    grad = np.empty(coords.size)
    for j in range(coords.size):
        e = np.zeros(coords.size)
        e[j] = step
        grad[j] = (f(coords + e) - f(coords - e)) / (2 * step)
    return float(np.linalg.norm(grad))


def _sample_surgered(chart, rng, k):
    """A point of the surgered space with moment value below ``delta``."""
    while True:
        z = (rng.standard_normal(k) + 1j * rng.standard_normal(k)) * 0.5
        if rng.uniform() < 0.5:
            s = rng.uniform(chart.epsilon / 2, chart.epsilon + 4 * chart.delta)
            q = BlowupPoint("disk", z, z0=complex(np.sqrt(s) * np.exp(1j * rng.uniform(-np.pi, np.pi))))
        else:
            q = BlowupPoint("cylinder", z, t=rng.uniform(-np.pi, np.pi),
                            s=rng.uniform(-4 * chart.delta, chart.epsilon))
        if q.moment() < chart.delta:
            return q


def s1_weights(k: int = 1, step: float = 1e-4) -> np.ndarray:
    """Weights of the linearized circle action at the origin of ``C x C^k``."""
    dim = 2 + 2 * k

    def flow(theta, v):
        q = BlowupPoint("disk", v[2:2 + k] + 1j * v[2 + k:], z0=complex(v[0], v[1]))
        r = act(theta, q)
        return np.concatenate([[r.z0.real, r.z0.imag], r.z.real, r.z.imag])

    gen = np.column_stack([(flow(step, e) - flow(-step, e)) / (2 * step) for e in np.eye(dim)])
    # multiplication by i w on a complex coordinate (x, y) sends x to w y
    weights = [gen[1, 0]] + [gen[2 + k + j, 2 + j] for j in range(k)]
    return np.array(weights)


def blowup_checks(epsilon: float, delta: float, k: int, samples: int, rng) -> dict:
    chart = BlowupChart(epsilon, delta)
    symp, moment_gap, roundtrip, equiv = 0.0, 0.0, 0.0, 0.0
    n_ann = min(samples, 2000)
    for _ in range(n_ann):
        q = _sample_annulus(chart, rng, k)
        c = chart.transition(q)
        symp = max(symp, transition_symplectic_residual(chart, q.z0))
        moment_gap = max(moment_gap, abs(q.moment() - c.moment()))
        roundtrip = max(roundtrip, abs(chart.transition(c).z0 - q.z0))
        theta = rng.uniform(-np.pi, np.pi)
        moved = act(theta, q)
        if chart.in_annulus(moved):
            equiv = max(equiv, abs(_wrap(chart.transition(moved).t - (c.t - theta))))
    grad_min = min(moment_gradient_norm(_sample_surgered(chart, rng, k)) for _ in range(samples))
    weights = s1_weights(k)
    expected = np.array([-1.0] + [1.0] * k)
    return {
        "symplectic": symp,
        "moment_agreement": moment_gap,
        "roundtrip": roundtrip,
        "equivariance": equiv,
        "min_gradient": grad_min,
        "gradient_bound": min(1.0, 2 * np.sqrt(epsilon / 2)),
        "weights": weights.tolist(),
        "weights_error": float(np.abs(weights - expected).max()),
    }

"""The SU(3) reduced space over ``p = N diag(1, 0, -1)`` in invariant coordinates.

A reduced point is ``xi`` modulo torus conjugation, recorded as
``(m12, m13, m23, nu)`` with ``m_jk = |xi_jk|^2`` and
``nu = Im(xi12 xi23 xi31)``.  The constraints ``m12 + m13 + m23 = N^2`` and
``nu^2 = m12 m13 m23`` cut out two triangles (sign of ``nu``) glued along
their boundary.  Vertex ``Q1`` is ``m12 = N^2``, ``Q2`` is ``m13 = N^2`` and
``Q3`` is ``m23 = N^2``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lie
from .dehn import TwistProfile, tau, tau_inverse
from .moment import fiber_point
from .phase_space import CotangentPoint

CHART_TOL = 1e-9
EDGE_RTOL = 1e-6
H_TOL = 1e-3

# matrix position of the coordinate attached to each vertex
VERTEX_POS = {1: (0, 1), 2: (0, 2), 3: (1, 2)}
# the coordinate that vanishes on each edge
EDGE_ZERO = {"12": 3, "23": 1, "31": 2}


@dataclass(frozen=True)
class ReducedChart3:
    m12: float
    m13: float
    m23: float
    nu: float
    N: float

    @property
    def m(self):
        return np.array([self.m12, self.m13, self.m23])

    def coord(self, vertex: int) -> float:
        """The coordinate equal to ``N^2`` at ``Q_vertex``."""
        return float(self.m[vertex - 1])

    def as_array(self):
        return np.array([self.m12, self.m13, self.m23, self.nu])

    def residuals(self) -> dict:
        return {"sum": abs(self.m.sum() - self.N ** 2),
                "triple": abs(self.nu ** 2 - self.m12 * self.m13 * self.m23),
                "sign": float(max(0.0, -self.m.min()))}

    def max_residual(self) -> float:
        return max(self.residuals().values())

    def distance(self, other: ReducedChart3) -> float:
        return float(np.abs(self.as_array() - other.as_array()).max())


def spectrum_scale(xi) -> float:
    """``N`` with spectrum ``{N, 0, -N}``; raises if the spectrum has another shape."""
    xi = lie.check_role(xi, lie.Role.HERM_ZERO_DIAG, 1e-10)
    if xi.shape != (3, 3):
        raise ValueError("reduced chart is defined for 3x3 matrices only")
    w = np.linalg.eigvalsh(xi)
    big = w[-1]
    if np.abs(w - np.array([-big, 0.0, big])).max() > 1e-8 * max(1.0, big):
        raise ValueError(f"spectrum {w} is not of the form (-N, 0, N)")
    return float(big)


def project(xi) -> ReducedChart3:
    n_scale = spectrum_scale(xi)
    xi = np.asarray(xi, dtype=complex)
    triple = xi[0, 1] * xi[1, 2] * xi[2, 0]
    return ReducedChart3(float(abs(xi[0, 1]) ** 2), float(abs(xi[0, 2]) ** 2),
                         float(abs(xi[1, 2]) ** 2), float(triple.imag), n_scale)


def lift(c: ReducedChart3, tol: float = CHART_TOL):
    """A representative ``xi`` with ``project(xi) = c``."""
    scale = max(1.0, c.N ** 2) ** 1.5
    if c.max_residual() > tol * scale:
        raise ValueError(f"infeasible chart values, residuals {c.residuals()}")
    m12, m13, m23 = np.clip(c.m, 0.0, None)
    delta = -np.pi / 2 if c.nu >= 0 else np.pi / 2
    xi = np.zeros((3, 3), dtype=complex)
    xi[0, 1] = np.sqrt(m12)
    xi[1, 2] = np.sqrt(m23)
    xi[0, 2] = np.sqrt(m13) * np.exp(1j * delta)
    return xi + lie.dagger(xi)


def lift_point(c: ReducedChart3) -> CotangentPoint:
    xi = lift(c)
    return fiber_point(xi, c.N * np.array([1.0, 0.0, -1.0]))


def random_chart(N: float, rng) -> ReducedChart3:
    m = N ** 2 * rng.dirichlet(np.ones(3))
    nu = np.sqrt(np.prod(m)) * (1 if rng.uniform() < 0.5 else -1)
    return ReducedChart3(*m, nu, N)


def tau_reduced(c: ReducedChart3, i: int, profile: TwistProfile = TwistProfile(),
                inverse: bool = False) -> ReducedChart3:
    if i not in (1, 2):
        raise ValueError("root index must be 1 or 2")
    fn = tau_inverse if inverse else tau
    return project(fn(lift_point(c), i, profile).xi)


def vertex(k: int, N: float) -> ReducedChart3:
    m = np.zeros(3)
    m[k - 1] = N ** 2
    return ReducedChart3(*m, 0.0, N)


def vertex_matrix(k: int, N: float):
    xi = np.zeros((3, 3), dtype=complex)
    r, s = VERTEX_POS[k]
    xi[r, s] = xi[s, r] = N
    return xi


def nearest_vertex(c: ReducedChart3, tol: float = EDGE_RTOL):
    """Index of the vertex within ``tol * N^2`` of ``c``, else ``None``."""
    for k in (1, 2, 3):
        if abs(c.coord(k) - c.N ** 2) <= tol * c.N ** 2:
            return k
    return None


def vertex_permutation(i: int, N: float, profile: TwistProfile = TwistProfile()) -> tuple:
    """Images ``(s(1), s(2), s(3))`` of the vertex labels under ``tau_reduced(., i)``."""
    if N < profile.cutoff:
        raise ValueError("vertices are permuted cleanly only for N >= cutoff")
    images = []
    for k in (1, 2, 3):
        j = nearest_vertex(tau_reduced(vertex(k, N), i, profile))
        if j is None:
            raise ValueError(f"vertex Q{k} is not mapped to a vertex")
        images.append(j)
    return tuple(images)


def cycle_notation(perm: tuple) -> str:
    seen, cycles = set(), []
    for start in range(1, len(perm) + 1):
        if start in seen:
            continue
        cyc, k = [], start
        while k not in seen:
            seen.add(k)
            cyc.append(k)
            k = perm[k - 1]
        if len(cyc) > 1:
            cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


def edge_point(edge: str, a: float, N: float):
    """Point of the edge ``Q_P Q_R`` named ``"PR"``: ``m_P = N^2 a^2``, ``m_R = N^2 (1 - a^2)``.

    The ``Q_P`` entry carries the phase ``i``; for ``"12"`` this is
    ``N [[0, ia, b], [-ia, 0, 0], [b, 0, 0]]``.
    """
    pv, rv = int(edge[0]), int(edge[1])
    if {pv, rv} not in ({1, 2}, {2, 3}, {1, 3}):
        raise ValueError(f"unknown edge {edge!r}")
    b = np.sqrt(max(0.0, 1.0 - a * a))
    xi = np.zeros((3, 3), dtype=complex)
    r, s = VERTEX_POS[pv]
    xi[r, s] = 1j * N * a
    r, s = VERTEX_POS[rv]
    xi[r, s] = N * b
    return xi + lie.dagger(xi)


def _edge_key(edge: str) -> str:
    return {"21": "12", "32": "23", "13": "31"}.get(edge, edge)


def on_edge(c: ReducedChart3, edge: str, tol: float = EDGE_RTOL) -> bool:
    return c.coord(EDGE_ZERO[_edge_key(edge)]) <= tol * c.N ** 2


def in_edge_interior(c: ReducedChart3, edge: str, tol: float = EDGE_RTOL) -> bool:
    key = _edge_key(edge)
    ends = [int(key[0]), int(key[1])]
    return on_edge(c, key, tol) and all(c.coord(k) > tol * c.N ** 2 for k in ends)


def runs(params, mask) -> list:
    """Maximal runs of ``True`` in ``mask`` as ``[start, end]`` parameter pairs."""
    out, start = [], None
    for t, flag in zip(params, mask):
        if flag and start is None:
            start = t
        if flag:
            last = t
        if not flag and start is not None:
            out.append([float(start), float(last)])
            start = None
    if start is not None:
        out.append([float(start), float(last)])
    return out


def trace_edge_image(i: int, edge: str, samples: int, N: float,
                     profile: TwistProfile = TwistProfile()) -> dict:
    """Image of an edge under ``tau_reduced(., i)`` with its crossing pattern.

    ``polyline`` rows are ``(a, m12, m13, m23, nu)``; ``on_edge`` and
    ``interior_hits`` map each edge to parameter runs.
    """
    if samples < 16:
        raise ValueError("need at least 16 samples")
    if N < profile.cutoff:
        raise ValueError("N must be at least the profile cutoff")
    params = np.linspace(0.0, 1.0, samples)
    images = [tau_reduced(project(edge_point(edge, a, N)), i, profile) for a in params]
    poly = np.array([[a, *c.as_array()] for a, c in zip(params, images)])
    report = {"polyline": poly, "params": params, "images": images, "on_edge": {}, "interior_hits": {}}
    for e in ("12", "23", "31"):
        report["on_edge"][e] = runs(params, [on_edge(c, e) for c in images])
        report["interior_hits"][e] = runs(params, [in_edge_interior(c, e) for c in images])
    # orientation along the same edge: position of the image measured by m_P
    pv = int(edge[0])
    pos = np.array([c.coord(pv) for c in images]) / N ** 2
    same_edge = all(on_edge(c, edge) for c in images)
    report["reversed"] = bool(same_edge and abs(pos[0] - 1) <= EDGE_RTOL
                              and abs(pos[-1]) <= EDGE_RTOL and np.all(np.diff(pos) <= EDGE_RTOL))
    return report


def saturated_runs(params, images, i: int, profile: TwistProfile, tol_h: float = H_TOL) -> list:
    """Parameter runs where ``h(|xi_alpha|) >= pi - tol_h`` on the input edge."""
    k = 1 if i == 1 else 3
    return runs(params, [profile.h(np.sqrt(c.coord(k))) >= np.pi - tol_h for c in images])


# For alpha_2 the labels are conjugated by (1 3): Q1 <-> Q3.
_RELABEL = {1: {"12": "12", "23": "23", "31": "31"},
            2: {"12": "32", "23": "21", "31": "13"}}


def figure1_report(N: float, samples: int = 256, profile: TwistProfile = TwistProfile(),
                   alpha: int = 1) -> dict:
    """Crossing pattern of the generator ``tau_alpha`` on the reduced triangle.

    Keys are named for ``alpha = 1``; for ``alpha = 2`` the same pattern is
    measured on the edges obtained by exchanging ``Q1`` and ``Q3``.
    """
    lab = _RELABEL[alpha]
    rev = trace_edge_image(alpha, lab["23"], samples, N, profile)
    tr = trace_edge_image(alpha, lab["12"], samples, N, profile)
    in_edge = _edge_key(lab["12"])
    sub = _edge_key(lab["23"])
    other = _edge_key(lab["31"])
    # input edge samples, to evaluate the saturation predicate on the source point
    sources = [project(edge_point(lab["12"], a, N)) for a in tr["params"]]
    perm = vertex_permutation(alpha, N, profile)
    return {
        "alpha": alpha,
        "N": N,
        "samples": samples,
        "reversed_23": rev["reversed"],
        "interior_hits_23": tr["interior_hits"][sub],
        "interior_hits_31": tr["interior_hits"][other],
        "on_edge_12_interval": tr["on_edge"][in_edge],
        "saturated_interval": saturated_runs(tr["params"], sources, alpha, profile),
        "vertex_permutation": cycle_notation(perm),
    }


def figure1_pass(report: dict) -> tuple[bool, float]:
    """Pattern check; returns ``(ok, parameter gap of the on-edge interval)``."""
    on, sat = report["on_edge_12_interval"], report["saturated_interval"]
    gap = float("inf")
    if len(on) == 1 and len(sat) == 1:
        gap = max(abs(on[0][0] - sat[0][0]), abs(on[0][1] - sat[0][1]))
    expected = "(2 3)" if report["alpha"] == 1 else "(1 2)"
    ok = (report["reversed_23"] and not report["interior_hits_23"]
          and not report["interior_hits_31"] and gap <= 1.0 / report["samples"]
          and report["vertex_permutation"] == expected)
    return ok, gap

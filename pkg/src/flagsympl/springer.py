"""Jordan types of Springer images and the normal form over diag(1,-1,0,...,0)."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import lie
from .moment import mu, mu_c, p_n, sample_fiber
from .phase_space import CotangentPoint

Partition = tuple  # weakly decreasing tuple of positive ints


def conjugate_partition(parts) -> Partition:
    parts = [k for k in parts if k > 0]
    if not parts:
        return ()
    return tuple(sum(1 for k in parts if k > j) for j in range(max(parts)))


def _rank(m, thresh):
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > thresh))


def rank_sequence(u, tol: float = 1e-8) -> list[int]:
    """Ranks ``r_0 = n, r_1, ..., r_n`` of the powers of ``u``.

    The threshold for ``u^k`` is ``tol * ||u||^k`` (spectral norm).
    """
    u = np.asarray(u, dtype=complex)
    n = u.shape[0]
    norm = np.linalg.norm(u, 2)
    ranks = [n]
    if norm == 0:
        return ranks + [0] * n
    power = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        power = power @ u
        ranks.append(_rank(power, tol * norm ** k))
    return ranks


def jordan_partition(u, tol: float = 1e-8) -> Partition:
    """Jordan block sizes of a nilpotent matrix, largest first."""
    r = rank_sequence(u, tol)
    if r[-1] > 0:
        raise ValueError("matrix is not nilpotent to the given tolerance")
    # r_{k-1} - r_k = number of blocks of size >= k
    at_least = [r[k - 1] - r[k] for k in range(1, len(r))]
    return conjugate_partition(at_least)


@dataclass(frozen=True)
class SpringerClass:
    kind: str          # "regular", "subregular" or "other"
    partition: Partition

    def __str__(self):
        return self.kind if self.kind != "other" else "other" + str(self.partition)


def classify_partition(part: Partition) -> SpringerClass:
    n = sum(part)
    if part == (n,):
        return SpringerClass("regular", part)
    if part == (n - 1, 1):
        return SpringerClass("subregular", part)
    return SpringerClass("other", part)


def springer_class(p: CotangentPoint, tol: float = 1e-8) -> SpringerClass:
    return classify_partition(jordan_partition(mu_c(p), tol))


def boundary_labels(p: CotangentPoint, tol: float = 1e-8, margin: float = 1e-6) -> set:
    """Labels at tolerances ``tol`` and ``margin``.  Two labels mean the point
    sits within ``margin`` of a stratum boundary."""
    u = mu_c(p)
    return {str(classify_partition(jordan_partition(u, tol))),
            str(classify_partition(jordan_partition(u, margin)))}


@dataclass(frozen=True)
class ZnForm:
    epsilon: float
    a: np.ndarray      # length n-1
    theta: float

    def residuals(self) -> dict:
        """Violations of the constraints on ``a`` for this ``epsilon``.

        For ``epsilon`` in (0, 1]: ``|a1|^2 = |a2|^2 = (1 - eps^2)/2`` and
        ``a_j = 0`` for ``j >= 3``.  For ``epsilon = 0``: ``||a|| = 1``.
        """
        a2 = np.abs(self.a) ** 2
        if self.epsilon <= ZERO_EPS:
            return {"norm": abs(a2.sum() - 1.0)}
        target = 0.5 * (1 - self.epsilon ** 2)
        tail = float(np.sqrt(a2[2:].max())) if a2.size > 2 else 0.0
        return {"balance": abs(a2[0] - a2[1]),
                "level": abs(a2[0] - target),
                "tail": tail}

    def max_residual(self) -> float:
        return max(self.residuals().values())


ZERO_EPS = 1e-7


def zn_normal_form(p: CotangentPoint, tol: float = 1e-8) -> ZnForm:
    """Normal form of a point over ``p_n = diag(1, -1, 0, ..., 0)``.

    The leading ``(n-1)``-block of xi is diagonalised as
    ``diag(eps, -eps, 0, ..., 0)`` by ``y`` and ``a = y* c`` with ``c`` the
    top of the last column.  ``theta`` is ``arg(a2) - arg(a1)``, the phase
    left after using the torus to make ``a1`` real.
    """
    n = p.n
    if np.abs(mu(p) - np.diag(p_n(n))).max() > tol:
        raise ValueError("point is not in the fiber over diag(1, -1, 0, ..., 0)")
    block = p.xi[: n - 1, : n - 1]
    w, v = lie.eigh_desc(block)
    eps_raw = w[0]
    if not -1e-9 <= eps_raw <= 1 + 1e-9:
        raise ValueError(f"top eigenvalue {eps_raw} of the leading block outside [0, 1]")
    eps = float(np.clip(eps_raw, 0.0, 1.0))
    # order: +eps, -eps, then the null space
    if n == 2:
        y = v
    else:
        y = np.column_stack([v[:, 0], v[:, -1]] + [v[:, j] for j in range(1, n - 2)])
    a = lie.dagger(y) @ p.xi[: n - 1, n - 1]
    theta = float(np.angle(a[1]) - np.angle(a[0])) if a.size > 1 and min(abs(a[0]), abs(a[1])) > 0 else 0.0
    return ZnForm(eps, a, theta)


def zn_matrix(eps: float, theta: float, n: int):
    """The matrix ``z_n`` for ``0 < eps < 1``."""
    z = np.zeros((n, n), dtype=complex)
    z[0, 0], z[1, 1] = eps, -eps
    c = np.sqrt(0.5 * (1 - eps ** 2))
    z[0, -1] = c
    z[1, -1] = c * np.exp(1j * theta)
    z[-1, :] = np.conj(z[:, -1])
    return z


def hook_census(p, n: int, samples: int, rng, tol: float = 1e-8) -> Counter:
    """Frequency table of Jordan types over sampled fiber points (exploratory)."""
    if n > 6:
        raise ValueError("census limited to n <= 6")
    p = np.asarray(p, dtype=float)
    if p.size != n:
        raise ValueError("p has the wrong length")
    counts = Counter()
    for _ in range(samples):
        q = sample_fiber(p, rng)
        counts[springer_class(q, tol).partition] += 1
    return counts


def is_hook(part: Partition) -> bool:
    return len(part) >= 1 and all(k == 1 for k in part[1:])

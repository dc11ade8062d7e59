"""Small dense-matrix kernel for su(n) and i su(n).

Everything here works on plain ``numpy`` complex arrays.  Matrices are
tagged with a :class:`Role` only when validated; the arrays themselves
carry no type information.
"""
from __future__ import annotations

import enum

import numpy as np
import scipy.linalg


class Role(enum.Enum):
    SPECIAL_UNITARY = "SpecialUnitary"
    SKEW_HERM_TRACELESS = "SkewHermTraceless"
    HERM_TRACELESS = "HermTraceless"
    HERM_ZERO_DIAG = "HermZeroDiag"
    SKEW_HERM_ZERO_DIAG = "SkewHermZeroDiag"
    STRICT_UPPER = "StrictUpper"


def dagger(a):
    return np.conj(np.swapaxes(a, -1, -2))


def bracket(a, b):
    return a @ b - b @ a


def ad(g, a):
    """Adjoint action ``g a g^{-1}`` for unitary ``g``."""
    return g @ a @ dagger(g)


def role_residual(m, role: Role) -> float:
    """Largest violation of the defining identities of ``role``."""
    m = np.asarray(m)
    n = m.shape[0]
    diag = np.abs(np.diag(m))
    if role is Role.SPECIAL_UNITARY:
        return max(np.abs(dagger(m) @ m - np.eye(n)).max(),
                   abs(np.linalg.det(m) - 1.0))
    if role is Role.SKEW_HERM_TRACELESS:
        return max(np.abs(m + dagger(m)).max(), abs(np.trace(m)))
    if role is Role.HERM_TRACELESS:
        return max(np.abs(m - dagger(m)).max(), abs(np.trace(m)))
    if role is Role.HERM_ZERO_DIAG:
        return max(np.abs(m - dagger(m)).max(), diag.max())
    if role is Role.SKEW_HERM_ZERO_DIAG:
        return max(np.abs(m + dagger(m)).max(), diag.max())
    if role is Role.STRICT_UPPER:
        return float(np.abs(np.tril(m)).max())
    raise ValueError(role)


_ROLE_TOL = {
    Role.SPECIAL_UNITARY: 1e-10,
    Role.SKEW_HERM_TRACELESS: 1e-12,
    Role.HERM_TRACELESS: 1e-12,
    Role.HERM_ZERO_DIAG: 1e-12,
    Role.SKEW_HERM_ZERO_DIAG: 1e-12,
    Role.STRICT_UPPER: 0.0,
}


def has_role(m, role: Role, tol: float | None = None) -> bool:
    if tol is None:
        tol = _ROLE_TOL[role]
    return role_residual(m, role) <= tol


def check_role(m, role: Role, tol: float | None = None):
    """Return ``m`` as a complex array, raising ``ValueError`` if it is not a ``role``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not has_role(m, role, tol):
        raise ValueError(
            f"matrix is not {role.value} (residual {role_residual(m, role):.3g})")
    return m


def pair(xi, a) -> float:
    """Real pairing ``Re tr(xi . i a)`` between a Hermitian covector and a skew direction."""
    xi = np.asarray(xi)
    a = np.asarray(a)
    if xi.shape != a.shape:
        raise ValueError(f"dimension mismatch: {xi.shape} vs {a.shape}")
    # tr(XY) = sum_ij X_ij Y_ji
    return float(np.real(1j * np.sum(xi * a.T)))


def _fix_phases(vecs):
    # make the first largest-modulus entry of each column real positive
    idx = np.argmax(np.abs(vecs) > np.abs(vecs).max(axis=0) * (1 - 1e-12), axis=0)
    ph = vecs[idx, np.arange(vecs.shape[1])]
    return vecs * (np.abs(ph) / ph)


def eigh_desc(h):
    """Eigen-decomposition of a Hermitian matrix, eigenvalues descending.

    Eigenvector phases are fixed deterministically so that normal forms
    built from them are reproducible.
    """
    w, v = np.linalg.eigh(h)
    w = w[::-1]
    v = _fix_phases(v[:, ::-1])
    return w, v


def exp_skew(a):
    """Group exponential of a skew-Hermitian matrix via ``eigh(i a)``."""
    a = np.asarray(a, dtype=complex)
    w, v = np.linalg.eigh(1j * a)
    # a = -i (i a)
    return (v * np.exp(-1j * w)) @ dagger(v)


def log_unitary(u):
    """Principal logarithm of a unitary matrix (skew-Hermitian result).

    Uses the complex Schur form, which is diagonal for normal input and
    keeps the eigenbasis unitary even for clustered eigenvalues.
    """
    t, z = scipy.linalg.schur(np.asarray(u, dtype=complex), output="complex")
    return (z * np.log(np.diag(t))) @ dagger(z)


def root_component(xi, i: int):
    """Part of ``xi`` in the root plane of the simple root ``i`` (1-based).

    Returns ``(xi_alpha, m)`` with ``m = |xi[i, i+1]|``.
    """
    xi = np.asarray(xi, dtype=complex)
    n = xi.shape[0]
    if not 1 <= i <= n - 1:
        raise ValueError(f"root index {i} out of range 1..{n - 1}")
    out = np.zeros_like(xi)
    out[i - 1, i] = xi[i - 1, i]
    out[i, i - 1] = xi[i, i - 1]
    return out, float(abs(xi[i - 1, i]))


def weyl_rep(n: int, i: int):
    """Representative of the simple reflection ``s_i`` in SU(n).

    Identity except for the block ``[[0, i], [i, 0]]`` at rows/columns
    ``i, i+1`` (1-based); its square is ``-1`` on that block.
    """
    if not 1 <= i <= n - 1:
        raise ValueError(f"root index {i} out of range 1..{n - 1}")
    w = np.eye(n, dtype=complex)
    w[i - 1, i - 1] = w[i, i] = 0.0
    w[i - 1, i] = w[i, i - 1] = 1j
    return w


def random_su(n: int, rng):
    """Haar-random element of SU(n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    det = np.linalg.det(q)
    return q * (det ** (-1.0 / n))


def random_torus(n: int, rng):
    phases = rng.uniform(0, 2 * np.pi, n)
    phases -= phases.mean()
    return np.diag(np.exp(1j * phases))


def strict_upper(xi):
    """Strictly upper triangular ``u`` with ``u + u* = xi`` (zero-diagonal ``xi``)."""
    return np.triu(np.asarray(xi, dtype=complex), 1)


def random_herm_zero_diag(n: int, rng, scale: float = 1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    u = np.triu(z, 1) * scale / np.sqrt(2)
    return u + dagger(u)


def random_skew_traceless(n: int, rng, scale: float = 1.0):
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    a = (z - dagger(z)) / 2
    a -= np.trace(a) / n * np.eye(n)
    return a * scale


def proj_t(a):
    return np.diag(np.diag(a))


def proj_offdiag(a):
    return a - np.diag(np.diag(a))

"""Dense complex linear algebra with an explicit tolerance.

All category data handled by the package consists of roots of unity and small
square roots, so every identity is checked as ``max |lhs - rhs| <= tol``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .exceptions import EmptyInput

DEFAULT_TOL = 1e-9
# rank decisions never go below this relative cutoff, whatever the verification tolerance
RANK_FLOOR = 1e3 * np.finfo(float).eps


def default_tol() -> float:
    """Default tolerance, overridable through ``TETRASYM_TOL``."""
    env = os.environ.get("TETRASYM_TOL")
    if env:
        return Tolerance(float(env)).eps
    return DEFAULT_TOL


@dataclass(frozen=True)
class Tolerance:
    eps: float = DEFAULT_TOL

    def __post_init__(self):
        if not 0.0 < self.eps < 1.0:
            raise ValueError(f"tolerance must lie in (0, 1), got {self.eps}")


def as_tol(tol) -> float:
    if tol is None:
        return default_tol()
    if isinstance(tol, Tolerance):
        return tol.eps
    return Tolerance(float(tol)).eps


def cmat(data) -> np.ndarray:
    """Coerce to a 2d complex array."""
    a = np.asarray(data, dtype=complex)
    if a.ndim == 0:
        a = a.reshape(1, 1)
    elif a.ndim == 1:
        a = a.reshape(-1, 1)
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product, ``(a⊗b)[i*rb + k, j*cb + l] = a[i, j] * b[k, l]``."""
    return np.kron(cmat(a), cmat(b))


def dagger(a) -> np.ndarray:
    return cmat(a).conj().T


def max_abs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def hs_inner(a, b, scaled: bool = False) -> complex:
    """Hilbert-Schmidt inner product ``tr(a* b)``, antilinear in ``a``.

    With ``scaled=True`` the value is divided by the number of columns, so that
    for intertwiners out of an irreducible object ``a* b = <a, b> 1``.
    """
    val = np.vdot(a, b)
    if scaled:
        val = val / np.shape(a)[1]
    return complex(val)


def orthonormalize(vectors, inner: str = "hilbert-schmidt", tol=None) -> list[np.ndarray]:
    """Gram-Schmidt in input order, dropping dependent vectors.

    Dependence is decided against ``tol`` times the largest singular value of
    the stacked input, so the result does not depend on the overall scale.
    """
    if len(vectors) == 0:
        raise EmptyInput("orthonormalize needs at least one vector")
    eps = as_tol(tol)
    mats = [cmat(v) for v in vectors]
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ValueError("vectors must share one shape")
    if inner not in ("hilbert-schmidt", "scaled"):
        raise ValueError(f"unknown inner product {inner!r}")
    scale = shape[1] if inner == "scaled" else 1
    stacked = np.array([m.ravel() for m in mats])
    smax = np.linalg.svd(stacked, compute_uv=False)[0]
    if smax == 0.0:
        return []
    cutoff = max(eps, RANK_FLOOR) * smax
    out: list[np.ndarray] = []
    for m in mats:
        w = m.ravel().copy()
        # two passes keep the Gram matrix at 1e-15 even for nearly dependent input
        for _ in range(2):
            for q in out:
                w = w - np.vdot(q, w) * q
        nrm = np.linalg.norm(w)
        if nrm <= cutoff:
            continue
        out.append(w / nrm)
    return [(w * np.sqrt(scale)).reshape(shape) for w in out]


@dataclass(frozen=True)
class MatrixClass:
    isometry: bool
    unitary: bool
    partial_isometry: bool
    zero: bool


def classify(m, tol=None) -> MatrixClass:
    eps = as_tol(tol)
    m = cmat(m)
    mh = m.conj().T
    iso = max_abs(mh @ m - np.eye(m.shape[1])) <= eps
    partial = max_abs(m @ mh @ m - m) <= eps
    return MatrixClass(
        isometry=iso,
        unitary=iso and m.shape[0] == m.shape[1],
        partial_isometry=partial,
        zero=max_abs(m) <= eps,
    )


def nullspace(m, tol=None) -> np.ndarray:
    """Orthonormal rows spanning the kernel of ``m``."""
    eps = as_tol(tol)
    m = np.asarray(m, dtype=complex)
    n = m.shape[1]
    if m.shape[0] == 0:
        return np.eye(n, dtype=complex)
    _, s, vh = np.linalg.svd(m)
    cutoff = max(eps, RANK_FLOOR) * max(s[0] if s.size else 0.0, 1.0)
    rank = int(np.sum(s > cutoff))
    return vh[rank:].conj()


def rref(rows, tol=None) -> np.ndarray:
    """Reduced row echelon form with leftmost pivot columns.

    The result depends only on the row space, which makes it a canonical
    starting point for basis construction.
    """
    eps = as_tol(tol)
    a = np.array(rows, dtype=complex)
    nrows, ncols = a.shape
    if nrows == 0:
        return a
    thresh = max(eps, RANK_FLOOR) * max(max_abs(a), 1.0) * 10
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = r + int(np.argmax(np.abs(a[r:, col])))
        if abs(a[piv, col]) <= thresh:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = a[r] / a[r, col]
        for i in range(nrows):
            if i != r:
                a[i] = a[i] - a[i, col] * a[r]
        r += 1
    return a[:r]


def fix_phase(m, tol=None) -> np.ndarray:
    """Rotate ``m`` so that its first significant entry is real positive."""
    eps = as_tol(tol)
    flat = np.ravel(m)
    thresh = max(max_abs(flat) * 1e-6, eps)
    for z in flat:
        if abs(z) > thresh:
            return m * (abs(z) / z)
    return m


def nearest_phase(z: complex) -> complex:
    return z / abs(z)

"""Frobenius-Schur indicators from the group-algebra element and from rigidity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .category import Category, GroupRepCategory
from .exceptions import NotIndicatorValued, NotSelfConjugate, WrongBackend
from .numeric import as_tol, max_abs
from .rigidity import RigidityData, conjugate_arrow, kappa


@dataclass(frozen=True)
class FSElement:
    """``sigma = (1/|G|) sum_g g^2`` in group-element coordinates."""

    coeffs: np.ndarray
    central_residual: float
    selfadjoint_residual: float


def fs_element_group(cat: Category, tol=None) -> FSElement:
    if not isinstance(cat, GroupRepCategory):
        raise WrongBackend("the Frobenius-Schur element needs a group backend")
    eps = as_tol(tol)
    n = cat.order
    sigma = np.zeros(n)
    for g in range(n):
        sigma[cat.mult[g, g]] += 1.0 / n
    # central: constant on conjugacy classes
    central = max(
        abs(sigma[cat.mult[cat.mult[x, h], cat.inverse(x)]] - sigma[h]) for x in range(n) for h in range(n)
    )
    # selfadjoint: sigma(h^-1) = conj sigma(h)
    selfadj = max(abs(sigma[cat.inverse(h)] - np.conj(sigma[h])) for h in range(n))
    if central > eps or selfadj > eps:
        raise WrongBackend("Frobenius-Schur element failed centrality or selfadjointness")
    return FSElement(sigma, float(central), float(selfadj))


def fs_decompose(cat: GroupRepCategory, sigma: FSElement, tol=None) -> dict[int, int]:
    """``nu_r = d_r * (scalar of D_r(sigma)) = sum_h sigma_h chi_r(h)``."""
    eps = as_tol(tol)
    out = {}
    for r in cat.labels:
        block = sum(s * m for s, m in zip(sigma.coeffs, cat.elements_mats[r]))
        d = cat.dims[r]
        scalar = np.trace(block) / d
        if max_abs(block - scalar * np.eye(d)) > eps:
            raise NotIndicatorValued(f"sigma is not scalar on {cat.names[r]}")
        val = d * scalar
        nearest = int(round(val.real))
        if nearest not in (-1, 0, 1) or abs(val - nearest) > eps:
            raise NotIndicatorValued(f"{cat.names[r]}: {val} is not in {{-1, 0, 1}}")
        out[r] = nearest
    return out


def categorical_indicator(rig: RigidityData, p: int, J_phase: complex = 1.0, tol=None) -> int:
    """``nu_p = J^{-1} Ĵ kappa_p^{-1}`` for self-conjugate ``p``, else 0."""
    eps = rig.tol if tol is None else as_tol(tol)
    cat = rig.cat
    ph = cat.conj[p]
    if ph != p:
        return 0
    hb = cat.hom_basis(p, ph, eps)
    if len(hb) != 1:
        raise NotSelfConjugate(f"hom({cat.names[p]}, {cat.names[ph]}) has dimension {len(hb)}")
    J = hb[0] * J_phase
    J_hat = conjugate_arrow(rig, J)
    k = kappa(rig, p).kappa
    nu = np.linalg.inv(J.mat) @ J_hat.mat @ np.linalg.inv(k.mat)
    sign = int(round(np.trace(nu).real / nu.shape[0]))
    if sign not in (-1, 1) or max_abs(nu - sign * np.eye(nu.shape[0])) > eps:
        raise NotIndicatorValued(f"{cat.names[p]}: indicator map is not a sign")
    return sign


def indicator_table(rig: RigidityData) -> dict[int, int]:
    return {p: categorical_indicator(rig, p) for p in rig.cat.labels}

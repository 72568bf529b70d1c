"""Scalar braidings on the pointed Z3 categories.

A braiding is a table ``R[p][q]`` of phases for ``p⊗q -> q⊗p``.  With the
associator ``phi: a⊗(b⊗c) -> (a⊗b)⊗c`` acting by ``omega_{abc}`` the two
hexagon identities read, for all labels a, b, c (sums mod 3),

    R(a, b+c) omega_bac        = R(a, b) R(a, c) omega_bca omega_abc
    omega_cab R(a+b, c) omega_abc = R(a, c) omega_acb R(b, c)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .category import PointedZ3Category
from .exceptions import WrongBackend
from .numeric import as_tol


def _omega(cat, a, b, c) -> complex:
    return complex(cat.omega_table[a % 3, b % 3, c % 3])


def hexagon_residual(cat: PointedZ3Category, R) -> float:
    if not isinstance(cat, PointedZ3Category):
        raise WrongBackend("hexagon search needs the pointed Z3 backend")
    R = np.asarray(R, dtype=complex)
    w = lambda a, b, c: _omega(cat, a, b, c)  # noqa: E731
    worst = 0.0
    for a, b, c in itertools.product(range(3), repeat=3):
        h1 = R[a, (b + c) % 3] * w(b, a, c) - R[a, b] * R[a, c] * w(b, c, a) * w(a, b, c)
        h2 = w(c, a, b) * R[(a + b) % 3, c] * w(a, b, c) - R[a, c] * w(a, c, b) * R[b, c]
        worst = max(worst, abs(h1), abs(h2))
    return float(worst)


def table_from_theta(cat: PointedZ3Category, theta: complex) -> np.ndarray:
    """Unit-strand table with ``R[1][1] = theta``, the rest forced by the hexagons."""
    w = lambda a, b, c: _omega(cat, a, b, c)  # noqa: E731
    R = np.ones((3, 3), dtype=complex)
    R[1, 1] = theta
    # first hexagon at (1,1,1), second at (1,1,1), first at (2,1,1)
    R[1, 2] = theta**2 * w(1, 1, 1) * w(1, 1, 1) / w(1, 1, 1)
    R[2, 1] = theta**2 * w(1, 1, 1) / (w(1, 1, 1) * w(1, 1, 1))
    R[2, 2] = R[2, 1] ** 2 * w(1, 1, 2) * w(2, 1, 1) / w(1, 2, 1)
    return R


@dataclass
class HexagonResult:
    omega_index: int
    lattice_order: int
    solutions: list
    min_residual: float


def hexagon_solve(cat: PointedZ3Category, lattice_order: int = 36, tol=None) -> HexagonResult:
    if not isinstance(cat, PointedZ3Category):
        raise WrongBackend("hexagon search needs the pointed Z3 backend")
    if lattice_order < 1:
        raise ValueError("lattice_order must be positive")
    eps = as_tol(tol)
    sols = []
    best = np.inf
    for k in range(lattice_order):
        R = table_from_theta(cat, np.exp(2j * np.pi * k / lattice_order))
        res = hexagon_residual(cat, R)
        best = min(best, res)
        if res <= eps:
            sols.append(R)
    return HexagonResult(cat.omega_index, lattice_order, sols, float(best))

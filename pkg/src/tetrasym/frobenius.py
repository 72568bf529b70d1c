"""Frobenius maps on basic intertwiner spaces ``hom(p, q⊗r)``.

``x`` sends ``hom(p, q⊗r)`` to ``hom(r, q̂⊗p)`` and ``y`` sends it to
``hom(q, p⊗r̂)``.  Both are antilinear; an antilinear map is stored as a
matrix ``M`` acting on coordinates by ``v -> M conj(v)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .category import Arrow
from .exceptions import NotCase2, SelectionViolation
from .numeric import as_tol, classify, max_abs
from .rigidity import RigidityData, chain

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class BasicSpace:
    labels: Triple
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coords(self, t: Arrow) -> np.ndarray:
        """Coordinates in the orthonormal basis for the scaled inner product."""
        n = t.mat.shape[1]
        return np.array([np.vdot(b.mat, t.mat) / n for b in self.basis], dtype=complex)

    def element(self, v) -> Arrow:
        return sum((z * b for z, b in zip(v, self.basis)), self.basis[0] * 0)


def basic_space(rig: RigidityData, p: int, q: int, r: int) -> BasicSpace:
    return BasicSpace((p, q, r), rig.cat.hom_basis(p, (q, r), rig.tol).basis)


@dataclass(frozen=True)
class AntilinearMap:
    src: Triple
    dst: Triple
    mat: np.ndarray

    def apply(self, v) -> np.ndarray:
        return self.mat @ np.conj(np.asarray(v, dtype=complex))

    def then(self, other: "AntilinearMap") -> np.ndarray:
        """Linear matrix of ``other ∘ self``."""
        return other.mat @ np.conj(self.mat)


def x_arrow(rig: RigidityData, p: int, q: int, r: int, t: Arrow) -> Arrow:
    """``x(t) = (1_q̂⊗t*) phi*_{q̂,q,r} (e_q*⊗1_r) rho_r sqrt(d_r/d_p)``."""
    cat = rig.cat
    qh = cat.conj[q]
    one = cat.identity
    out = chain(
        one(qh).tensor(t.adj),
        cat.assoc(qh, q, r).adj,
        rig.e_irr[q].adj.tensor(one(r)),
        cat.runit(r),
    )
    return out * np.sqrt(rig.d[r] / rig.d[p])


def y_arrow(rig: RigidityData, p: int, q: int, r: int, t: Arrow) -> Arrow:
    """``y(t) = (t*⊗1_r̂) phi_{q,r,r̂} (1_q⊗c_r) lambda_q sqrt(d_q/d_p)``."""
    cat = rig.cat
    rh = cat.conj[r]
    one = cat.identity
    out = chain(
        t.adj.tensor(one(rh)),
        cat.assoc(q, r, rh),
        one(q).tensor(rig.c_irr[r]),
        cat.lunit(q),
    )
    return out * np.sqrt(rig.d[q] / rig.d[p])


def x_target(rig: RigidityData, p: int, q: int, r: int) -> Triple:
    return (r, rig.cat.conj[q], p)


def y_target(rig: RigidityData, p: int, q: int, r: int) -> Triple:
    return (q, p, rig.cat.conj[r])


def _matrix(rig, which, triple) -> AntilinearMap:
    src = basic_space(rig, *triple)
    dst_labels = (x_target if which == "x" else y_target)(rig, *triple)
    dst = basic_space(rig, *dst_labels)
    arrow = x_arrow if which == "x" else y_arrow
    mat = np.zeros((dst.dim, src.dim), dtype=complex)
    for i, t in enumerate(src.basis):
        mat[:, i] = dst.coords(arrow(rig, *triple, t))
    return AntilinearMap(triple, dst_labels, mat)


def frobenius_x(rig: RigidityData, p: int, q: int, r: int) -> AntilinearMap:
    return _cached(rig, "x", (p, q, r))


def frobenius_y(rig: RigidityData, p: int, q: int, r: int) -> AntilinearMap:
    return _cached(rig, "y", (p, q, r))


def _cached(rig, which, triple):
    cache = rig.__dict__.setdefault("_frob", {})
    key = (which, triple)
    if key not in cache:
        cache[key] = _matrix(rig, which, triple)
    return cache[key]


def frob(rig: RigidityData, which: str, triple: Triple) -> AntilinearMap:
    return _cached(rig, which, tuple(triple))


@dataclass
class S3Report:
    triple: Triple
    isometry_x: float
    isometry_y: float
    x_squared: float
    y_squared: float
    braid: float

    @property
    def max_residual(self) -> float:
        return max(self.isometry_x, self.isometry_y, self.x_squared, self.y_squared, self.braid)


def s3_relations_check(rig: RigidityData, p: int, q: int, r: int) -> S3Report:
    """``x^2 = chi_q``, ``y^2 = chi_r``, ``xyx = yxy`` plus isometry of x and y."""
    chi = rig.chi
    x1 = frob(rig, "x", (p, q, r))
    y1 = frob(rig, "y", (p, q, r))
    n = x1.mat.shape[1]
    eye = np.eye(n)
    xx = x1.then(frob(rig, "x", x1.dst))
    yy = y1.then(frob(rig, "y", y1.dst))
    # x∘y∘x and y∘x∘y, both antilinear: M3 conj(M2) M1
    a1 = frob(rig, "y", x1.dst)
    a2 = frob(rig, "x", a1.dst)
    b1 = frob(rig, "x", y1.dst)
    b2 = frob(rig, "y", b1.dst)
    if a2.dst != b2.dst:
        raise AssertionError("xyx and yxy land in different spaces")
    xyx = a2.mat @ np.conj(a1.mat) @ x1.mat
    yxy = b2.mat @ np.conj(b1.mat) @ y1.mat
    return S3Report(
        (p, q, r),
        max_abs(x1.mat.conj().T @ x1.mat - eye),
        max_abs(y1.mat.conj().T @ y1.mat - eye),
        max_abs(xx - chi[q] * eye),
        max_abs(yy - chi[r] * eye),
        max_abs(xyx - yxy),
    )


def canonical_action_residuals(rig: RigidityData, p: int) -> dict[str, float]:
    """``x(rho)=rho``, ``y(rho)=c/sqrt d``, ``x(lambda)=e*/sqrt d``, ``y(lambda)=lambda``."""
    cat = rig.cat
    sd = np.sqrt(rig.d[p])
    rho, lam = cat.runit(p), cat.lunit(p)
    return {
        "x-rho": x_arrow(rig, p, 0, p, rho).dist(rho),
        "y-rho": y_arrow(rig, p, 0, p, rho).dist(rig.c_irr[p] * (1 / sd)),
        "x-lambda": x_arrow(rig, p, p, 0, lam).dist(rig.e_irr[p].adj * (1 / sd)),
        "y-lambda": y_arrow(rig, p, p, 0, lam).dist(lam),
    }


# -- orbits of triples -------------------------------------------------------------


def triple_images(conj, p: int, q: int, r: int) -> list[Triple]:
    ph, qh, rh = conj[p], conj[q], conj[r]
    return [(p, q, r), (r, qh, p), (q, p, rh), (rh, ph, q), (qh, r, ph), (ph, rh, qh)]


def _case(conj, t: Triple) -> str:
    p, q, r = t
    if p == q == r == conj[p]:
        return "case3"
    if q == r == conj[p] != p:
        return "case2"
    if q == conj[q] and r == p != q:
        return "case1"
    return "generic"


def triple_orbit(conj, p: int, q: int, r: int) -> tuple[list[Triple], str]:
    """The distinct images of ``(p,q,r)`` and the degeneracy class of the orbit."""
    orbit = list(dict.fromkeys(triple_images(conj, p, q, r)))
    cases = {_case(conj, t) for t in orbit}
    for c in ("case3", "case2", "case1"):
        if c in cases:
            return orbit, c
    return orbit, "generic"


def selection_rules(rig: RigidityData, strict: bool = True) -> list[tuple]:
    """Zeros forced by ``chi = -1``: ``N^p_{pq} = 0`` and ``N^p_{pp} = 0``."""
    cat = rig.cat
    checked = []
    for q in cat.labels:
        if cat.conj[q] == q and rig.chi[q] == -1:
            for p in cat.labels:
                n = cat.fusion(p, p, q)
                checked.append(("N^p_pq", (p, q), n))
                if strict and n:
                    raise SelectionViolation("N^p_pq", (p, q), n)
            n = cat.fusion(q, q, q)
            checked.append(("N^p_pp", (q,), n))
            if strict and n:
                raise SelectionViolation("N^p_pp", (q,), n)
    return checked


@dataclass
class Z3Spectrum:
    eigenvalues: np.ndarray
    eigenbasis: list
    order3_residual: float


def z3_spectrum(rig: RigidityData, p: int, tol=None) -> Z3Spectrum:
    """Eigenvalues of the linear map ``x∘y`` on ``hom(p, p̂⊗p̂)``."""
    eps = rig.tol if tol is None else as_tol(tol)
    cat = rig.cat
    ph = cat.conj[p]
    if ph == p:
        raise NotCase2(f"{cat.names[p]} is self-conjugate")
    triple = (p, ph, ph)
    y1 = frob(rig, "y", triple)
    x1 = frob(rig, "x", y1.dst)
    if x1.dst != triple:
        raise NotCase2("x∘y does not return to the starting space")
    xy = y1.then(x1)
    if xy.size == 0:
        raise NotCase2(f"hom({cat.names[p]}, {cat.names[ph]}⊗{cat.names[ph]}) is zero")
    vals, vecs = np.linalg.eig(xy)
    roots = np.exp(2j * np.pi * np.arange(3) / 3)
    for v in vals:
        if np.min(np.abs(roots - v)) > np.sqrt(eps):
            raise NotCase2(f"eigenvalue {v} is not a cube root of unity")
    space = basic_space(rig, *triple)
    basis = [space.element(vecs[:, i]) for i in range(vecs.shape[1])]
    res = max_abs(np.linalg.matrix_power(xy, 3) - np.eye(xy.shape[0]))
    return Z3Spectrum(vals, basis, res)


def frobenius_isometric(rig: RigidityData, triple: Triple, tol=None) -> bool:
    eps = rig.tol if tol is None else as_tol(tol)
    return classify(frob(rig, "x", triple).mat, eps).unitary and classify(frob(rig, "y", triple).mat, eps).unitary

"""Tetrahedral 6j data: the spaces ``H_s``, their S4 action and the functional Phi.

A tetrahedron is ``s = (p, q, r, t, u, v)``; its four basic spaces are

    A = hom(u, p⊗q),  B = hom(t, u⊗r),  C = hom(v, q⊗r),  D = hom(t, p⊗v)

and ``H_s`` is spanned by ``alpha*⊗beta*⊗gamma⊗delta`` with the four factors
drawn from A, B, C, D.  Elements are stored as coefficient arrays
``T[i, j, k, l]`` over the fixed bases.  The generators ``"12"``, ``"23"``,
``"34"`` are transpositions and act antilinearly; a word of generators is a
sequence applied right to left.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .category import Arrow, Category, PointedZ3Category
from .exceptions import OmegaTrivial, ShapeMismatch, WrongBackend
from .frobenius import basic_space, frob, x_arrow, y_arrow
from .numeric import max_abs
from .rigidity import RigidityData, chain

Tetra = tuple[int, int, int, int, int, int]
GENERATORS = ("12", "23", "34")


def tetra_transform(conj, tau, s: Tetra) -> Tetra:
    """Label action of a generator, or of a word of generators (applied right to left)."""
    if isinstance(tau, str) and tau in GENERATORS:
        p, q, r, t, u, v = s
        if tau == "12":
            return (conj[p], u, r, v, q, t)
        if tau == "23":
            return (u, conj[q], v, t, p, r)
        return (p, v, conj[r], u, t, q)
    for g in reversed(tuple(tau)):
        s = tetra_transform(conj, g, s)
    return s


def spaces(s: Tetra) -> tuple:
    p, q, r, t, u, v = s
    return (u, p, q), (t, u, r), (v, q, r), (t, p, v)


def is_admissible(cat: Category, s: Tetra) -> bool:
    n = cat.fusion_table()
    return all(n[a, b, c] for a, b, c in spaces(s))


def admissible_tetrahedra(cat: Category) -> list[Tetra]:
    n = cat.fusion_table()
    out = []
    for p, q, r, t in itertools.product(cat.labels, repeat=4):
        for u in cat.labels:
            if not (n[u, p, q] and n[t, u, r]):
                continue
            for v in cat.labels:
                if n[v, q, r] and n[t, p, v]:
                    out.append((p, q, r, t, u, v))
    return out


def shape(rig: RigidityData, s: Tetra) -> tuple[int, int, int, int]:
    return tuple(rig.cat.fusion(*sp) for sp in spaces(s))


def s4_act(rig: RigidityData, tau: str, s: Tetra, T: np.ndarray) -> tuple[Tetra, np.ndarray]:
    """Apply one generator to the element with coefficients ``T`` in ``H_s``."""
    A, B, C, D = spaces(s)
    T = np.asarray(T, dtype=complex)
    if T.shape != shape(rig, s):
        raise ShapeMismatch(f"coefficient array {T.shape} does not match H_s {shape(rig, s)}")
    s2 = tetra_transform(rig.cat.conj, tau, s)
    Tc = np.conj(T)
    if tau == "12":
        XA, XD = frob(rig, "x", A).mat, frob(rig, "x", D).mat
        out = np.einsum("ijkl,mi,nl->mkjn", Tc, np.conj(XA), XD)
    elif tau == "23":
        YA, XC = frob(rig, "y", A).mat, frob(rig, "x", C).mat
        out = np.einsum("ijkl,mi,nk->mlnj", Tc, np.conj(YA), XC)
    elif tau == "34":
        YB, YC = frob(rig, "y", B).mat, frob(rig, "y", C).mat
        out = np.einsum("ijkl,mj,nk->lmni", Tc, np.conj(YB), YC)
    else:
        raise ValueError(f"unknown generator {tau!r}")
    return s2, out


def s4_word(rig: RigidityData, word, s: Tetra, T: np.ndarray) -> tuple[Tetra, np.ndarray]:
    for g in reversed(tuple(word)):
        s, T = s4_act(rig, g, s, T)
    return s, T


def s4_act_pure(rig: RigidityData, tau: str, s: Tetra, arrows: tuple) -> tuple[Tetra, tuple, bool]:
    """Generator action on a pure tuple ``(alpha, beta, gamma, delta)`` of arrows.

    Returns the new tuple and ``True`` (every generator is antilinear, so the
    overall coefficient of the input gets conjugated).
    """
    A, B, C, D = spaces(s)
    a, b, c, d = arrows
    s2 = tetra_transform(rig.cat.conj, tau, s)
    if tau == "12":
        return s2, (x_arrow(rig, *A, a), c, b, x_arrow(rig, *D, d)), True
    if tau == "23":
        return s2, (y_arrow(rig, *A, a), d, x_arrow(rig, *C, c), b), True
    if tau == "34":
        return s2, (d, y_arrow(rig, *B, b), y_arrow(rig, *C, c), a), True
    raise ValueError(f"unknown generator {tau!r}")


def phi(rig: RigidityData, s: Tetra, alpha: Arrow, beta: Arrow, gamma: Arrow, delta: Arrow) -> complex:
    """Closed-diagram value
    ``sqrt(d_p d_q d_r / d_t) e_t (1⊗beta*)(1⊗(alpha*⊗1_r))(1⊗phi_pqr)(1⊗(1_p⊗gamma))(1⊗delta) e_t*``."""
    cat = rig.cat
    p, q, r, t, u, v = s
    want = {"alpha": (u, (p, q)), "beta": (t, (u, r)), "gamma": (v, (q, r)), "delta": (t, (p, v))}
    for name, arr in zip(want, (alpha, beta, gamma, delta)):
        if (arr.src, arr.dst) != want[name]:
            raise ShapeMismatch(f"{name} is not in hom{want[name]}")
    th = cat.conj[t]
    one = cat.identity
    e = rig.e_irr[t]
    val = chain(
        e,
        one(th).tensor(beta.adj),
        one(th).tensor(alpha.adj.tensor(one(r))),
        one(th).tensor(cat.assoc(p, q, r)),
        one(th).tensor(one(p).tensor(gamma)),
        one(th).tensor(delta),
        e.adj,
    ).scalar()
    return complex(np.sqrt(rig.d[p] * rig.d[q] * rig.d[r] / rig.d[t]) * val)


def phi_direct(rig: RigidityData, s: Tetra, alpha, beta, gamma, delta) -> complex:
    """Same value contracted inside ``End(t)`` first, using ``e_t e_t* = d_t``."""
    cat = rig.cat
    p, q, r, t, u, v = s
    x = beta.adj.mat @ np.kron(alpha.adj.mat, np.eye(cat.dims[r])) @ (
        cat.omega(p, q, r) * np.kron(np.eye(cat.dims[p]), gamma.mat)
    ) @ delta.mat
    return complex(np.sqrt(rig.d[p] * rig.d[q] * rig.d[r] / rig.d[t]) * rig.d[t] * np.trace(x) / cat.dims[t])


def f_tensor(rig: RigidityData, s: Tetra) -> np.ndarray:
    """``F̆_s[i,j,k,l] = Phi(A_i, B_j, C_k, D_l)`` in the fixed bases."""
    cache = rig.__dict__.setdefault("_ftensor", {})
    if s in cache:
        return cache[s]
    bases = [basic_space(rig, *sp).basis for sp in spaces(s)]
    out = np.zeros(tuple(len(b) for b in bases), dtype=complex)
    for idx in itertools.product(*(range(len(b)) for b in bases)):
        out[idx] = phi(rig, s, *(b[i] for b, i in zip(bases, idx)))
    cache[s] = out
    return out


def six_j(rig: RigidityData, s: Tetra) -> np.ndarray:
    p, q, r, t = s[:4]
    return f_tensor(rig, s) / np.sqrt(rig.d[p] * rig.d[q] * rig.d[r] * rig.d[t])


def phi_value(rig: RigidityData, s: Tetra, T: np.ndarray) -> complex:
    """Phi extended linearly to a coefficient array."""
    return complex(np.sum(T * f_tensor(rig, s)))


def sixj_matrix(rig: RigidityData, p: int, q: int, r: int, t: int) -> np.ndarray:
    """Multi-label matrix with rows ``(u, alpha, beta)`` and columns ``(v, gamma, delta)``."""
    cat = rig.cat
    n = cat.fusion_table()
    rows = [(u, a, b) for u in cat.labels for a in range(n[u, p, q]) for b in range(n[t, u, r])]
    cols = [(v, g, d) for v in cat.labels for g in range(n[v, q, r]) for d in range(n[t, p, v])]
    m = np.zeros((len(rows), len(cols)), dtype=complex)
    for i, (u, a, b) in enumerate(rows):
        for j, (v, g, d) in enumerate(cols):
            m[i, j] = six_j(rig, (p, q, r, t, u, v))[a, b, g, d]
    return m


def unitarity_residual(rig: RigidityData) -> float:
    worst = 0.0
    for p, q, r, t in itertools.product(rig.cat.labels, repeat=4):
        m = sixj_matrix(rig, p, q, r, t)
        if m.size == 0:
            continue
        if m.shape[0] != m.shape[1]:
            return float("inf")
        worst = max(worst, max_abs(m.conj().T @ m - np.eye(m.shape[1])))
    return worst


def basis_tensors(rig: RigidityData, s: Tetra):
    sh = shape(rig, s)
    for idx in itertools.product(*(range(n) for n in sh)):
        T = np.zeros(sh, dtype=complex)
        T[idx] = 1.0
        yield idx, T


# relations of the Coxeter presentation of S4, each must act as the identity
LEMMA_RELATIONS = {
    "tau12^2": ("12", "12"),
    "tau23^2": ("23", "23"),
    "tau34^2": ("34", "34"),
    "braid-12-23": ("12", "23", "12", "23", "12", "23"),
    "braid-23-34": ("23", "34", "23", "34", "23", "34"),
    "commute-12-34": ("12", "34", "12", "34"),
}


def lemma_residuals(rig: RigidityData, s: Tetra) -> dict[str, float]:
    out = {}
    for name, word in LEMMA_RELATIONS.items():
        worst = 0.0
        for _, T in basis_tensors(rig, s):
            s2, T2 = s4_word(rig, word, s, T)
            if s2 != s:
                worst = float("inf")
                break
            worst = max(worst, max_abs(T2 - T))
        out[name] = worst
    return out


def invariance_residuals(rig: RigidityData, s: Tetra) -> dict[str, float]:
    """``Phi(tau X) = conj(Phi(X))`` for each generator and every basis tuple X."""
    out = {}
    for g in GENERATORS:
        worst = 0.0
        for _, T in basis_tensors(rig, s):
            s2, T2 = s4_act(rig, g, s, T)
            worst = max(worst, abs(phi_value(rig, s2, T2) - np.conj(phi_value(rig, s, T))))
        out[g] = worst
    return out


@dataclass
class InvarianceReport:
    tetra: Tetra
    generators: dict
    lemma: dict

    @property
    def max_residual(self) -> float:
        return max(list(self.generators.values()) + list(self.lemma.values()))


def verify_s4_invariance(rig: RigidityData, s: Tetra) -> InvarianceReport:
    return InvarianceReport(s, invariance_residuals(rig, s), lemma_residuals(rig, s))


# -- orbits ------------------------------------------------------------------------


@dataclass
class Orbit:
    representative: Tetra
    members: dict = field(default_factory=dict)  # tetra -> word from the representative

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class OrbitReport:
    category: str
    admissible: int
    orbits: list

    @property
    def count(self) -> int:
        return len(self.orbits)

    @property
    def ratio(self) -> float:
        return self.admissible / self.count if self.orbits else 0.0

    @property
    def sizes(self) -> list[int]:
        return [o.size for o in self.orbits]


def orbit_report(cat: Category) -> OrbitReport:
    """Partition the admissible tetrahedra into S4 orbits, breadth-first from the smallest tuple."""
    todo = sorted(admissible_tetrahedra(cat))
    seen: set = set()
    orbits = []
    for s0 in todo:
        if s0 in seen:
            continue
        orbit = Orbit(s0, {s0: ()})
        queue = deque([s0])
        while queue:
            s = queue.popleft()
            for g in GENERATORS:
                s2 = tetra_transform(cat.conj, g, s)
                if s2 not in orbit.members:
                    orbit.members[s2] = (g,) + orbit.members[s]
                    queue.append(s2)
        seen.update(orbit.members)
        orbits.append(orbit)
    return OrbitReport(cat.name, len(todo), orbits)


def reconstruct(rig: RigidityData, orbit: Orbit, s: Tetra) -> np.ndarray:
    """F̆ at ``s`` transported from the orbit representative only."""
    word = orbit.members[s]
    s0 = orbit.representative
    F0 = f_tensor(rig, s0)
    out = np.zeros(shape(rig, s), dtype=complex)
    inverse = tuple(reversed(word))
    for idx, T in basis_tensors(rig, s):
        back, T0 = s4_word(rig, inverse, s, T)
        assert back == s0
        val = np.sum(T0 * F0)
        out[idx] = np.conj(val) if len(word) % 2 else val
    return out


def reconstruction_residual(rig: RigidityData, report: OrbitReport | None = None) -> float:
    report = report or orbit_report(rig.cat)
    worst = 0.0
    for orbit in report.orbits:
        for s in orbit.members:
            worst = max(worst, max_abs(reconstruct(rig, orbit, s) - f_tensor(rig, s)))
    return worst


# -- pointed Z3 demonstration ----------------------------------------------------------


@dataclass
class GaugeDemo:
    omega: complex
    tau12_factors: tuple
    tau12_product: complex
    b_values: tuple
    b_product: complex


def phased_f(rig: RigidityData, s: Tetra, beta: np.ndarray) -> complex:
    """F̆ at ``s`` for the one-dimensional bases ``b^p_qr = beta[q, r] 1^p_qr``."""
    bases = [basic_space(rig, *sp).basis[0] * beta[sp[1], sp[2]] for sp in spaces(s)]
    return phi(rig, s, *bases)


def coherent_gauge_demo(rig: RigidityData, seed: int = 0) -> GaugeDemo:
    cat = rig.cat
    if not isinstance(cat, PointedZ3Category):
        raise WrongBackend("the gauge demonstration needs the pointed Z3 backend")
    if cat.omega_index == 0:
        raise OmegaTrivial("omega = 1 has no obstruction")
    s0 = (1, 0, 1, 2, 1, 1)
    X0 = np.ones((1, 1, 1, 1), dtype=complex)
    s1, T1 = s4_act(rig, "12", s0, X0)
    kappa = complex(T1.ravel()[0])
    f_img = complex(f_tensor(rig, s1).ravel()[0])
    factors = (np.conj(kappa), np.conj(f_img))
    rng = np.random.default_rng(seed)
    beta = np.exp(2j * np.pi * rng.random((3, 3)))
    sa = tetra_transform(cat.conj, ("12", "34"), s0)
    sb = tetra_transform(cat.conj, ("23", "34", "12", "23"), s0)
    vals = (phased_f(rig, sa, beta), phased_f(rig, sb, beta))
    return GaugeDemo(cat.omega_value, factors, factors[0] * factors[1], vals, vals[0] * vals[1])


# -- export --------------------------------------------------------------------------


def _enc(a: np.ndarray):
    if a.ndim == 0:
        return [float(a.real), float(a.imag)]
    return [_enc(x) for x in a]


def fsymbol_table(rig: RigidityData) -> list[dict]:
    out = []
    for s in sorted(admissible_tetrahedra(rig.cat)):
        out.append({"tetra": list(s), "Fhat": _enc(f_tensor(rig, s)), "sixj": _enc(six_j(rig, s))})
    return out


def orbit_transport(rig: RigidityData, s0: Tetra, T0: np.ndarray) -> dict:
    """Push one element of ``H_{s0}`` around its label orbit.

    Returns ``{s: (word, T_s, Phi(T_s))}``; by invariance every value is
    ``Phi(T0)`` or its conjugate according to the parity of the word.
    """
    out = {s0: ((), np.asarray(T0, dtype=complex), phi_value(rig, s0, T0))}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        word, T, _ = out[s]
        for g in GENERATORS:
            s2, T2 = s4_act(rig, g, s, T)
            if s2 not in out:
                out[s2] = ((g,) + word, T2, phi_value(rig, s2, T2))
                queue.append(s2)
    return out

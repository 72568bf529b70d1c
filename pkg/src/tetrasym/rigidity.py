"""Standard rigidity intertwiners, conjugation of arrows, traces and kappa maps.

Conventions: ``e_a: â⊗a -> 1`` and ``c_a: 1 -> a⊗â`` with the unit realised
as the leaf ``0``; ``lambda_a: a -> a⊗1``, ``rho_a: a -> 1⊗a``.  For a word
``a`` the conjugate word mirrors the bracketing and hats every letter.

Two rigidity structures exist on every word.  The *recursive* one is built
from the irreducible data by the product rule and is used to define the left
conjugation of arrows.  The *standard* one is assembled from irreducible
summands through orthonormal embeddings ``V: p -> a`` and their conjugates
``W: p̂ -> â``; it minimises ``||e_a|| ||c_a||`` and is what traces use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .category import Arrow, Category
from .exceptions import (
    CoherenceViolation,
    GaugeInconsistency,
    NoInvariantVector,
    NotRelated,
    ShapeMismatch,
)
from .numeric import as_tol, classify, max_abs
from .words import UNIT, Word, conj_word, is_leaf


def chain(*arrows: Arrow) -> Arrow:
    """Compose as written: ``chain(f, g, h) = f @ g @ h``."""
    return reduce(lambda f, g: f @ g, arrows)


def zigzag_left(cat: Category, a: Word, e: Arrow, c: Arrow) -> Arrow:
    """``lambda_a* (1_a⊗e_a) phi*_{a,â,a} (c_a⊗1_a) rho_a``, should be ``1_a``."""
    ah = conj_word(a, cat.conj)
    one = cat.identity
    return chain(
        cat.lunit(a).adj,
        one(a).tensor(e),
        cat.assoc(a, ah, a).adj,
        c.tensor(one(a)),
        cat.runit(a),
    )


def zigzag_right(cat: Category, a: Word, e: Arrow, c: Arrow) -> Arrow:
    """``rho_â* (e_a⊗1_â) phi_{â,a,â} (1_â⊗c_a) lambda_â``, should be ``1_â``."""
    ah = conj_word(a, cat.conj)
    one = cat.identity
    return chain(
        cat.runit(ah).adj,
        e.tensor(one(ah)),
        cat.assoc(ah, a, ah),
        one(ah).tensor(c),
        cat.lunit(ah),
    )


def standard_rigidity_irreducible(cat: Category, p: int, tol=None):
    """Standard ``(e_p, c_p, d_p)`` for an irreducible label, phase-fixed on ``e_p``."""
    eps = as_tol(tol)
    ph = cat.conj[p]
    hb_e = cat.hom_basis((ph, p), UNIT, eps)
    hb_c = cat.hom_basis(UNIT, (p, ph), eps)
    if len(hb_e) != 1 or len(hb_c) != 1:
        raise NoInvariantVector(f"hom({cat.names[ph]}⊗{cat.names[p]}, 1) has dimension {len(hb_e)}")
    e, c = hb_e[0], hb_c[0]
    z = zigzag_left(cat, p, e, c).scalar()
    c = c * (1.0 / z)
    ne, nc = np.linalg.norm(e.mat), np.linalg.norm(c.mat)
    d = float(ne * nc)
    e = e * (np.sqrt(d) / ne)
    c = c * (np.sqrt(d) / nc)
    # first significant entry of e real positive; c takes the inverse phase
    flat = e.mat.ravel()
    k = int(np.argmax(np.abs(flat) > 1e-6 * np.abs(flat).max()))
    ph_z = abs(flat[k]) / flat[k]
    e, c = e * ph_z, c * np.conj(ph_z)
    res = max(
        zigzag_left(cat, p, e, c).dist(cat.identity(p)),
        zigzag_right(cat, p, e, c).dist(cat.identity(ph)),
    )
    if res > eps:
        raise CoherenceViolation("zig-zag", (p,), res)
    return e, c, d


@dataclass
class WordRigidity:
    word: Word
    e: Arrow
    c: Arrow
    V: dict
    W: dict


@dataclass
class KappaData:
    label: Word
    kappa: Arrow
    kappa_tilde: Arrow
    unitary: bool
    sovereign_residual: float


class RigidityData:
    """Per-label standard rigidity and on-demand extension to words."""

    def __init__(self, cat: Category, e: dict, c: dict, d: dict, chi: dict | None = None, tol=None):
        self.cat = cat
        self.e_irr = dict(e)
        self.c_irr = dict(c)
        self.d = dict(d)
        self.chi = dict(chi) if chi is not None else None
        self.tol = as_tol(tol)
        self._rec: dict = {}
        self._ext: dict = {}

    @property
    def gauged(self) -> bool:
        return self.chi is not None

    def conj(self, w: Word) -> Word:
        return conj_word(w, self.cat.conj)

    # -- recursive (product) rigidity --------------------------------------------
    def rec(self, w: Word) -> tuple[Arrow, Arrow]:
        hit = self._rec.get(w)
        if hit is not None:
            return hit
        if is_leaf(w):
            out = (self.e_irr[w], self.c_irr[w])
        else:
            out = self._product(*w)
        self._rec[w] = out
        return out

    def _product(self, a: Word, b: Word) -> tuple[Arrow, Arrow]:
        cat = self.cat
        one = cat.identity
        ah, bh = self.conj(a), self.conj(b)
        ab = (a, b)
        ea, ca = self.rec(a)
        eb, cb = self.rec(b)
        e = chain(
            eb,
            one(bh).tensor(cat.runit(b).adj),
            one(bh).tensor(ea.tensor(one(b))),
            one(bh).tensor(cat.assoc(ah, a, b)),
            cat.assoc(bh, ah, ab).adj,
        )
        c = chain(
            cat.assoc(ab, bh, ah).adj,
            cat.assoc(a, b, bh).tensor(one(ah)),
            one(a).tensor(cb).tensor(one(ah)),
            cat.lunit(a).tensor(one(ah)),
            ca,
        )
        return e, c

    def left_conjugate(self, T: Arrow) -> Arrow:
        """Left conjugation through the recursive rigidity: ``T: a -> b`` gives ``b̂ -> â``."""
        cat = self.cat
        one = cat.identity
        a, b = T.src, T.dst
        ah, bh = self.conj(a), self.conj(b)
        _, ca = self.rec(a)
        eb, _ = self.rec(b)
        return chain(
            cat.runit(ah).adj,
            eb.tensor(one(ah)),
            one(bh).tensor(T).tensor(one(ah)),
            cat.assoc(bh, a, ah),
            one(bh).tensor(ca),
            cat.lunit(bh),
        )

    # -- standard rigidity on words ----------------------------------------------
    def ext(self, w: Word, mixing: dict | None = None) -> WordRigidity:
        """Standard rigidity of ``w`` assembled from irreducible summands.

        ``mixing`` optionally maps a label ``p`` to a unitary matrix that
        recombines the multiplicity embeddings ``V^{p alpha}``.
        """
        if mixing is None and w in self._ext:
            return self._ext[w]
        cat = self.cat
        V: dict = {}
        W: dict = {}
        e_sum = None
        c_sum = None
        for p in cat.labels:
            basis = list(cat.hom_basis(p, w, self.tol))
            if not basis:
                continue
            if mixing is not None and p in mixing:
                u = np.asarray(mixing[p], dtype=complex)
                basis = [sum((u[j, i] * basis[j] for j in range(len(basis))), basis[0] * 0) for i in range(len(basis))]
            V[p] = basis
            W[p] = [self.left_conjugate(v).adj for v in basis]
            for v, wv in zip(V[p], W[p]):
                e_term = self.e_irr[p] @ wv.adj.tensor(v.adj)
                c_term = v.tensor(wv) @ self.c_irr[p]
                e_sum = e_term if e_sum is None else e_sum + e_term
                c_sum = c_term if c_sum is None else c_sum + c_term
        out = WordRigidity(w, e_sum, c_sum, V, W)
        if mixing is None:
            self._ext[w] = out
        return out

    def e(self, w: Word) -> Arrow:
        return self.ext(w).e if not is_leaf(w) else self.e_irr[w]

    def c(self, w: Word) -> Arrow:
        return self.ext(w).c if not is_leaf(w) else self.c_irr[w]

    def qdim(self, w: Word) -> float:
        e = self.e(w)
        return float((e @ e.adj).scalar().real)


def build_rigidity(cat: Category, tol=None, gauge: bool = True) -> RigidityData:
    eps = as_tol(tol)
    e, c, d = {}, {}, {}
    for p in cat.labels:
        e[p], c[p], d[p] = standard_rigidity_irreducible(cat, p, eps)
    rig = RigidityData(cat, e, c, d, None, eps)
    return involutive_gauge(rig) if gauge else rig


def involutive_gauge(rig: RigidityData) -> RigidityData:
    """Pair gauge ``e_p̂ = c_p*``, ``c_p̂ = e_p*`` for ``p != p̂``; record the signs chi."""
    cat = rig.cat
    eps = rig.tol
    e, c = dict(rig.e_irr), dict(rig.c_irr)
    chi = {}
    for p in cat.labels:
        ph = cat.conj[p]
        cs = c[p].adj
        ratio = complex(np.vdot(cs.mat, e[ph].mat) / np.vdot(cs.mat, cs.mat))
        if max_abs(e[ph].mat - ratio * cs.mat) > eps or abs(abs(ratio) - 1) > eps:
            raise GaugeInconsistency(f"e_{cat.names[ph]} is not a phase times c_{cat.names[p]}*")
        if p == ph:
            sign = round(ratio.real)
            if abs(ratio - sign) > eps or sign not in (-1, 1):
                raise GaugeInconsistency(f"chi_{cat.names[p]} = {ratio} is not a sign")
            chi[p] = sign
        elif p < ph:
            e[ph] = c[p].adj
            c[ph] = e[p].adj
            chi[p] = chi[ph] = 1
    return RigidityData(cat, e, c, rig.d, chi, eps)


# -- operations on words and arrows ---------------------------------------------


def extend_rigidity(rig: RigidityData, a: Word, mixing: dict | None = None) -> tuple[Arrow, Arrow]:
    w = rig.ext(a, mixing)
    return w.e, w.c


def conjugate_arrow(rig: RigidityData, T: Arrow, src_mixing=None, dst_mixing=None) -> Arrow:
    """``T̂ = sum W_src^{p beta} t^{alpha beta} W_dst^{p alpha *}`` with
    ``t^{alpha beta} = V_dst^{p alpha *} T V_src^{p beta}``."""
    src = rig.ext(T.src, src_mixing)
    dst = rig.ext(T.dst, dst_mixing)
    out = None
    for p, vs_src in src.V.items():
        vs_dst = dst.V.get(p, [])
        for a, vd in enumerate(vs_dst):
            for b, vs in enumerate(vs_src):
                t = (vd.adj @ T @ vs).scalar()
                term = src.W[p][b] @ dst.W[p][a].adj * t
                out = term if out is None else out + term
    if out is None:
        cat = rig.cat
        return Arrow(rig.conj(T.dst), rig.conj(T.src),
                     np.zeros((cat.dim(T.src), cat.dim(T.dst)), dtype=complex))
    return out


def trace_left(rig: RigidityData, T: Arrow) -> complex:
    if T.src != T.dst:
        raise ShapeMismatch("trace needs an endomorphism")
    e = rig.e(T.src)
    a_hat = rig.conj(T.src)
    return (e @ rig.cat.identity(a_hat).tensor(T) @ e.adj).scalar()


def trace_right(rig: RigidityData, T: Arrow) -> complex:
    if T.src != T.dst:
        raise ShapeMismatch("trace needs an endomorphism")
    c = rig.c(T.src)
    a_hat = rig.conj(T.src)
    return (c.adj @ T.tensor(rig.cat.identity(a_hat)) @ c).scalar()


def trace(rig: RigidityData, T: Arrow, tol=None) -> complex:
    """Left trace, checked against the right trace."""
    eps = rig.tol if tol is None else as_tol(tol)
    left, right = trace_left(rig, T), trace_right(rig, T)
    if abs(left - right) > eps * max(1.0, abs(left)):
        raise CoherenceViolation("sphericality", T.src, abs(left - right))
    return left


def kappa(rig: RigidityData, a: Word) -> KappaData:
    """``kappa_a`` and ``kappa~_a``; both equal ``chi_a 1_a`` in the involutive gauge."""
    cat = rig.cat
    one = cat.identity
    ah = rig.conj(a)
    k = chain(
        cat.lunit(a).adj,
        one(a).tensor(rig.c(ah).adj),
        cat.assoc(a, ah, a).adj,
        rig.c(a).tensor(one(a)),
        cat.runit(a),
    )
    kt = chain(
        cat.runit(a).adj,
        rig.e(ah).tensor(one(a)),
        cat.assoc(a, ah, a),
        one(a).tensor(rig.e(a).adj),
        cat.lunit(a),
    )
    return KappaData(a, k, kt, classify(k.mat, rig.tol).unitary, k.dist(kt))


def compare_rigidity(rig1: RigidityData, rig2: RigidityData, a: Word, tol=None) -> Arrow:
    """Unitary ``U`` on ``a`` with ``e2 = e1 (1⊗U)`` and ``c2 = (U*⊗1) c1``."""
    eps = rig1.tol if tol is None else as_tol(tol)
    cat = rig1.cat
    ah = rig1.conj(a)
    e1, c1 = rig1.e(a), rig1.c(a)
    e2, c2 = rig2.e(a), rig2.c(a)
    basis = list(cat.hom_basis(a, a, eps))
    cols = np.array([(e1 @ cat.identity(ah).tensor(b)).mat.ravel() for b in basis]).T
    coef, *_ = np.linalg.lstsq(cols, e2.mat.ravel(), rcond=None)
    U = sum((z * b for z, b in zip(coef, basis)), basis[0] * 0)
    res = max(
        (e1 @ cat.identity(ah).tensor(U)).dist(e2),
        (U.adj.tensor(cat.identity(ah)) @ c1).dist(c2),
    )
    if res > eps or not classify(U.mat, eps).unitary:
        raise NotRelated(f"rigidity structures on {a!r} are not related by a unitary (residual {res:.2e})")
    return U


def antimonoidal_alpha(rig: RigidityData, a: Word, b: Word) -> Arrow:
    """Comparison of the standard and product conjugates of ``a⊗b``, acting on the word ``b̂⊗â``."""
    cat = rig.cat
    one = cat.identity
    ab = (a, b)
    abh = rig.conj(ab)
    _, c_rec = rig.rec(ab)
    return chain(
        cat.runit(abh).adj,
        rig.e(ab).tensor(one(abh)),
        cat.assoc(abh, ab, abh),
        one(abh).tensor(c_rec),
        cat.lunit(abh),
    )


def alpha_residuals(rig: RigidityData, a: Word) -> tuple[float, float]:
    """Residuals of ``alpha_{â,a} ê_a = c_â`` and ``ĉ_a alpha_{a,â}^{-1} = e_â``."""
    ah = rig.conj(a)
    r1 = (antimonoidal_alpha(rig, ah, a) @ conjugate_arrow(rig, rig.e(a))).dist(rig.c(ah))
    al = antimonoidal_alpha(rig, a, ah)
    al_inv = Arrow(al.dst, al.src, np.linalg.inv(al.mat))
    r2 = (conjugate_arrow(rig, rig.c(a)) @ al_inv).dist(rig.e(ah))
    return r1, r2

"""Concrete semisimple C*-categories: objects, hom spaces, monoidal structure.

Two backends are provided.  :class:`GroupRepCategory` is the representation
category of a finite group given by unitary irreps; its tensor product is the
Kronecker product and every structure map is an identity matrix.
:class:`PointedZ3Category` is the representation category of the
omega-deformed group algebra of Z3: every word space is one dimensional,
graded by the sum of its letters mod 3, and the associator acts by the scalar
``omega_{pqr}`` on the graded components.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .exceptions import (
    CoherenceViolation,
    InvalidCocycle,
    InvalidIrrep,
    ParseError,
    ShapeMismatch,
)
from .numeric import as_tol, cmat, fix_phase, kron, max_abs, nullspace, orthonormalize, rref
from .words import EMPTY, UNIT, Word, check_word, fmt, is_leaf, letters

PRESETS = ("z2", "z3", "s3", "d4", "q8", "z3_omega0", "z3_omega1", "z3_omega2")


@dataclass(frozen=True, eq=False)
class Arrow:
    """An intertwiner ``mat: src -> dst`` between the underlying spaces of two words.

    ``f @ g`` is the composite "first ``g``, then ``f``" and requires
    ``g.dst == f.src`` exactly, bracketing included.
    """

    src: Word
    dst: Word
    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", cmat(self.mat))

    def __matmul__(self, other: Arrow) -> Arrow:
        if other.dst != self.src:
            raise ShapeMismatch(f"cannot compose {fmt(self.src)}<-... with ...->{fmt(other.dst)}")
        return Arrow(other.src, self.dst, self.mat @ other.mat)

    def tensor(self, other: Arrow) -> Arrow:
        return Arrow(_pair(self.src, other.src), _pair(self.dst, other.dst), kron(self.mat, other.mat))

    @property
    def adj(self) -> Arrow:
        return Arrow(self.dst, self.src, self.mat.conj().T)

    def __add__(self, other: Arrow) -> Arrow:
        self._same_type(other)
        return Arrow(self.src, self.dst, self.mat + other.mat)

    def __sub__(self, other: Arrow) -> Arrow:
        self._same_type(other)
        return Arrow(self.src, self.dst, self.mat - other.mat)

    def __mul__(self, z) -> Arrow:
        return Arrow(self.src, self.dst, complex(z) * self.mat)

    __rmul__ = __mul__

    def _same_type(self, other):
        if (self.src, self.dst) != (other.src, other.dst):
            raise ShapeMismatch("arrows live in different hom spaces")

    def scalar(self) -> complex:
        """The number ``z`` with ``self = z * 1`` for an endomorphism of an irreducible."""
        return complex(np.trace(self.mat) / self.mat.shape[0])

    def dist(self, other: Arrow) -> float:
        self._same_type(other)
        return max_abs(self.mat - other.mat)


def _pair(a: Word, b: Word) -> Word:
    return (a, b)


def tensor(*arrows: Arrow) -> Arrow:
    out = arrows[0]
    for a in arrows[1:]:
        out = out.tensor(a)
    return out


@dataclass(frozen=True)
class HomBasis:
    src: Word
    dst: Word
    basis: tuple

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]


class Category:
    """Common machinery; subclasses provide generator matrices and the associator."""

    backend = ""

    def __init__(self, name: str, names, conj, gen_mats, tol=None):
        self.name = name
        self.names = tuple(names)
        self.rank = len(self.names)
        self.conj = tuple(int(c) for c in conj)
        # gen_mats[label][k]: matrix of the k-th group generator on that irrep
        self.gen_mats = [[cmat(m) for m in mats] for mats in gen_mats]
        self.dims = tuple(m[0].shape[0] for m in self.gen_mats)
        self.tol = as_tol(tol)
        self._hom_cache: dict = {}
        self._check_conj()

    def _check_conj(self):
        if len(self.conj) != self.rank:
            raise ParseError("conjugation map has wrong length")
        if self.conj[UNIT] != UNIT:
            raise ParseError("conjugation must fix the unit label")
        for p, ph in enumerate(self.conj):
            if not 0 <= ph < self.rank or self.conj[ph] != p:
                raise ParseError(f"conjugation is not an involution at {self.names[p]}")

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, rank={self.rank})"

    @property
    def labels(self) -> range:
        return range(self.rank)

    def label(self, name: str) -> int:
        return self.names.index(name)

    # -- underlying spaces ---------------------------------------------------
    def dim(self, w: Word) -> int:
        if w == EMPTY:
            return 1
        if is_leaf(w):
            return self.dims[w]
        return self.dim(w[0]) * self.dim(w[1])

    def word_rep(self, w: Word) -> list[np.ndarray]:
        """Matrices of the group generators on the underlying space of ``w``."""
        check_word(w, self.rank)
        ngen = len(self.gen_mats[0])
        if w == EMPTY:
            return [np.eye(1, dtype=complex) for _ in range(ngen)]
        out = None
        for x in letters(w):
            mats = self.gen_mats[x]
            out = list(mats) if out is None else [kron(a, b) for a, b in zip(out, mats)]
        return out

    # -- structure maps ------------------------------------------------------
    def identity(self, w: Word) -> Arrow:
        return Arrow(w, w, np.eye(self.dim(w), dtype=complex))

    def omega(self, a: Word, b: Word, c: Word) -> complex:
        return 1.0

    def assoc(self, a: Word, b: Word, c: Word) -> Arrow:
        """``phi_{a,b,c}: a⊗(b⊗c) -> (a⊗b)⊗c``."""
        n = self.dim(a) * self.dim(b) * self.dim(c)
        return Arrow((a, (b, c)), ((a, b), c), self.omega(a, b, c) * np.eye(n, dtype=complex))

    def lunit(self, a: Word) -> Arrow:
        """``lambda_a: a -> a⊗1``."""
        return Arrow(a, (a, UNIT), np.eye(self.dim(a), dtype=complex))

    def runit(self, a: Word) -> Arrow:
        """``rho_a: 1⊗a <- a``, i.e. ``rho_a: a -> 1⊗a``."""
        return Arrow(a, (UNIT, a), np.eye(self.dim(a), dtype=complex))

    # -- hom spaces ----------------------------------------------------------
    def hom_basis(self, src: Word, dst: Word, tol=None) -> HomBasis:
        eps = self.tol if tol is None else as_tol(tol)
        key = (src, dst, eps)
        hit = self._hom_cache.get(key)
        if hit is None:
            hit = HomBasis(src, dst, tuple(self._compute_hom(src, dst, eps)))
            self._hom_cache[key] = hit
        return hit

    def _compute_hom(self, src: Word, dst: Word, eps: float) -> list[Arrow]:
        a_mats = self.word_rep(src)
        b_mats = self.word_rep(dst)
        m, n = self.dim(dst), self.dim(src)
        # row-major vec: vec(T A) = (1 ⊗ A^T) vec T,  vec(B T) = (B ⊗ 1) vec T
        eqs = [np.kron(np.eye(m), a.T) - np.kron(b, np.eye(n)) for a, b in zip(a_mats, b_mats)]
        null = nullspace(np.vstack(eqs) if eqs else np.zeros((0, m * n)), eps)
        if null.shape[0] == 0:
            return []
        rows = rref(null, eps)
        vecs = orthonormalize([r.reshape(m, n) for r in rows], inner="scaled", tol=eps)
        return [Arrow(src, dst, fix_phase(v, eps)) for v in vecs]

    def fusion(self, t: int, p: int, q: int) -> int:
        """``N^t_{pq} = dim hom(t, p⊗q)``."""
        return len(self.hom_basis(t, (p, q)))

    def fusion_table(self) -> np.ndarray:
        if not hasattr(self, "_ntable"):
            n = np.zeros((self.rank,) * 3, dtype=int)
            for t, p, q in itertools.product(self.labels, repeat=3):
                n[t, p, q] = self.fusion(t, p, q)
            self._ntable = n
        return self._ntable


class GroupRepCategory(Category):
    backend = "group_rep"

    def __init__(self, name, order, mult_table, generators, irreps, tol=None):
        """``irreps`` is a list of dicts with keys name, dim, conjugate,
        conj_unitary and matrices (generator element -> matrix)."""
        self.order = int(order)
        self.mult = np.asarray(mult_table, dtype=int)
        self.generators = [int(g) for g in generators]
        names = [ir["name"] for ir in irreps]
        conj = [names.index(ir["conjugate"]) for ir in irreps]
        gen_mats = [[cmat(ir["matrices"][g]) for g in self.generators] for ir in irreps]
        super().__init__(name, names, conj, gen_mats, tol)
        self.conj_unitaries = [cmat(ir["conj_unitary"]) for ir in irreps]
        self.identity_element = self._find_identity()
        self.elements_mats = [self._all_elements(p) for p in self.labels]
        self._validate()

    def _find_identity(self) -> int:
        n = self.order
        if self.mult.shape != (n, n):
            raise ParseError("multiplication table has wrong shape")
        for e in range(n):
            if np.all(self.mult[e] == np.arange(n)) and np.all(self.mult[:, e] == np.arange(n)):
                return e
        raise ParseError("multiplication table has no identity")

    def _all_elements(self, p: int) -> list[np.ndarray]:
        """Irrep matrices on every group element, generated from the generators."""
        d = self.dims[p]
        mats: list = [None] * self.order
        mats[self.identity_element] = np.eye(d, dtype=complex)
        frontier = [self.identity_element]
        while frontier:
            nxt = []
            for g in frontier:
                for k, s in enumerate(self.generators):
                    h = self.mult[g, s]
                    if mats[h] is None:
                        mats[h] = mats[g] @ self.gen_mats[p][k]
                        nxt.append(h)
            frontier = nxt
        if any(m is None for m in mats):
            raise ParseError("generators do not generate the group")
        return mats

    def inverse(self, g: int) -> int:
        return int(np.nonzero(self.mult[g] == self.identity_element)[0][0])

    def character(self, p: int) -> np.ndarray:
        return np.array([np.trace(m) for m in self.elements_mats[p]])

    def _validate(self):
        eps = self.tol
        n = self.order
        if any(len(set(row)) != n for row in self.mult):
            raise ParseError("multiplication table is not a Latin square")
        for p in self.labels:
            mats = self.elements_mats[p]
            d = self.dims[p]
            for g, m in enumerate(mats):
                if m.shape != (d, d):
                    raise InvalidIrrep(self.names[p], g, "wrong matrix size")
                if max_abs(m.conj().T @ m - np.eye(d)) > eps:
                    raise InvalidIrrep(self.names[p], g, "matrix is not unitary")
            for g, h in itertools.product(range(n), repeat=2):
                if max_abs(mats[g] @ mats[h] - mats[self.mult[g, h]]) > eps:
                    raise InvalidIrrep(self.names[p], (g, h), "not a homomorphism")
            c = self.conj_unitaries[p]
            ph = self.conj[p]
            if c.shape != (d, d) or max_abs(c.conj().T @ c - np.eye(d)) > eps:
                raise InvalidIrrep(self.names[p], None, "conjugation matrix is not unitary")
            for g in range(n):
                if max_abs(mats[g].conj() - c @ self.elements_mats[ph][g] @ c.conj().T) > eps:
                    raise InvalidIrrep(self.names[p], g, "conjugation matrix does not intertwine")
        if self.dims[UNIT] != 1 or max_abs(self.character(UNIT) - 1) > eps:
            raise InvalidIrrep(self.names[UNIT], None, "label 0 must be the trivial irrep")
        if sum(d * d for d in self.dims) != n:
            raise ParseError(f"sum of squared dimensions {sum(d * d for d in self.dims)} != |G| = {n}")
        chars = np.array([self.character(p) for p in self.labels])
        gram = chars.conj() @ chars.T / n
        if max_abs(gram - np.eye(self.rank)) > 1e3 * eps:
            raise ParseError("irreps are not pairwise inequivalent")


Z3_NONTRIVIAL = {(1, 1, 1), (2, 2, 2), (1, 1, 2), (2, 2, 1), (2, 1, 1), (1, 2, 2)}


def z3_omega_table(omega: complex) -> np.ndarray:
    table = np.ones((3, 3, 3), dtype=complex)
    for idx in Z3_NONTRIVIAL:
        table[idx] = omega
    return table


class PointedZ3Category(Category):
    backend = "pointed_z3"

    def __init__(self, name, omega_index=0, omega_table=None, tol=None):
        self.omega_index = int(omega_index) % 3
        self.omega_value = np.exp(2j * np.pi * self.omega_index / 3)
        table = z3_omega_table(self.omega_value) if omega_table is None else np.asarray(omega_table, complex)
        if table.shape != (3, 3, 3) or max_abs(np.abs(table) - 1) > 1e-12:
            raise InvalidCocycle("omega table must be a 3x3x3 array of phases")
        self.omega_table = table
        zeta = np.exp(2j * np.pi / 3)
        super().__init__(name, ["0", "1", "2"], [0, 2, 1], [[[[zeta**p]]] for p in range(3)], tol)

    def grade(self, w: Word) -> int:
        return sum(letters(w)) % 3

    def omega(self, a: Word, b: Word, c: Word) -> complex:
        return complex(self.omega_table[self.grade(a), self.grade(b), self.grade(c)])


# -- loading -------------------------------------------------------------------


def _parse_matrix(data, dim=None) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from None
    if arr.shape[-1] != 2:
        raise ParseError("matrix entries must be [re, im] pairs")
    z = arr[..., 0] + 1j * arr[..., 1]
    if z.ndim == 1:
        if dim is None or z.size != dim * dim:
            raise ParseError("flat matrix needs a matching dim")
        z = z.reshape(dim, dim)
    if z.ndim != 2:
        raise ParseError("matrix must be 2-dimensional")
    return z


def category_from_dict(doc: dict, tol=None) -> Category:
    try:
        name = doc["name"]
        backend = doc["backend"]
    except (KeyError, TypeError):
        raise ParseError("category document needs 'name' and 'backend'") from None
    if backend == "pointed_z3":
        idx = doc.get("omega_index")
        if idx not in (0, 1, 2):
            raise InvalidCocycle(f"omega_index must be 0, 1 or 2, got {idx!r}")
        return PointedZ3Category(name, idx, tol=tol)
    if backend != "group_rep":
        raise ParseError(f"unknown backend {backend!r}")
    try:
        irreps = []
        for ir in doc["irreps"]:
            d = int(ir["dim"])
            irreps.append(
                {
                    "name": ir["name"],
                    "dim": d,
                    "conjugate": ir["conjugate"],
                    "conj_unitary": _parse_matrix(ir["conj_unitary"], d),
                    "matrices": {int(g): _parse_matrix(m, d) for g, m in ir["matrices"].items()},
                }
            )
        gens = [int(g) for g in doc["generators"]]
        for ir in irreps:
            if set(ir["matrices"]) != set(gens):
                raise ParseError(f"irrep {ir['name']} must give matrices for exactly the generators")
        names = [ir["name"] for ir in irreps]
        if any(ir["conjugate"] not in names for ir in irreps):
            raise ParseError("conjugate refers to an unknown irrep")
        return GroupRepCategory(name, doc["order"], doc["mult_table"], gens, irreps, tol)
    except KeyError as exc:
        raise ParseError(f"missing field {exc}") from None


def load_category(source, tol=None) -> Category:
    """Load a category from a preset name, a path, or JSON text.

    ``source`` may be ``"q8"``, ``"presets/q8"``, a path to a JSON file, or the
    JSON document itself.
    """
    text = None
    if isinstance(source, dict):
        return category_from_dict(source, tol)
    src = str(source)
    if src.lstrip().startswith("{"):
        text = src
    else:
        path = Path(src)
        if path.is_file():
            text = path.read_text()
        else:
            stem = path.name.removesuffix(".json")
            if stem in PRESETS:
                text = resources.files("tetrasym.presets").joinpath(f"{stem}.json").read_text()
    if text is None:
        raise ParseError(f"no category found at {src!r}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return category_from_dict(doc, tol)


def word_rep(cat: Category, w: Word):
    """Generator matrices (group backend) or the grading (pointed backend) of ``w``."""
    if isinstance(cat, PointedZ3Category):
        check_word(w, cat.rank)
        return cat.grade(w)
    return cat.word_rep(w)


def hom_basis(cat: Category, src: Word, dst: Word, tol=None) -> HomBasis:
    return cat.hom_basis(src, dst, tol)


def fusion_coeff(cat: Category, t: int, p: int, q: int) -> int:
    return cat.fusion(t, p, q)


def structure_maps(cat: Category, a: Word, b: Word, c: Word):
    return cat.lunit(a), cat.runit(a), cat.assoc(a, b, c)


# -- coherence -----------------------------------------------------------------


@dataclass
class CoherenceReport:
    triangle_max: float
    pentagon_max: float
    triangle_count: int
    pentagon_count: int
    exhaustive: bool
    seed: int | None
    worst: dict = field(default_factory=dict)


def triangle_residual(cat: Category, a: Word, c: Word) -> float:
    lhs = cat.assoc(a, UNIT, c)
    rhs = cat.lunit(a).tensor(cat.identity(c)) @ cat.identity(a).tensor(cat.runit(c).adj)
    return lhs.dist(rhs)


def pentagon_residual(cat: Category, a: Word, b: Word, c: Word, d: Word) -> float:
    lhs = cat.assoc((a, b), c, d) @ cat.assoc(a, b, (c, d))
    rhs = (
        cat.assoc(a, b, c).tensor(cat.identity(d))
        @ cat.assoc(a, (b, c), d)
        @ cat.identity(a).tensor(cat.assoc(b, c, d))
    )
    return lhs.dist(rhs)


def verify_coherence(cat: Category, sample=None, tol=None, seed: int = 0, n_random: int = 2000,
                     strict: bool = True) -> CoherenceReport:
    """Triangle and pentagon identities on label tuples.

    Without an explicit ``sample`` every triple/quadruple is checked when
    ``rank**4 <= 10**4``; otherwise ``n_random`` quadruples are drawn with ``seed``.
    """
    eps = as_tol(tol)
    labels = list(cat.labels)
    exhaustive = sample is None and cat.rank**4 <= 10**4
    used_seed = None
    if sample is None:
        triples = list(itertools.product(labels, repeat=2))
        if exhaustive:
            quads = list(itertools.product(labels, repeat=4))
        else:
            used_seed = seed
            rng = np.random.default_rng(seed)
            quads = [tuple(int(x) for x in rng.integers(0, cat.rank, 4)) for _ in range(n_random)]
    else:
        triples = [(t[0], t[-1]) for t in sample if len(t) == 3]
        quads = [tuple(t) for t in sample if len(t) == 4]
    worst: dict = {}
    tri_max = 0.0
    for a, c in triples:
        r = triangle_residual(cat, a, c)
        if r > tri_max:
            tri_max, worst["triangle"] = r, (a, UNIT, c)
    pent_max = 0.0
    for q in quads:
        r = pentagon_residual(cat, *q)
        if r > pent_max:
            pent_max, worst["pentagon"] = r, q
    if strict:
        if tri_max > eps:
            raise CoherenceViolation("triangle", worst["triangle"], tri_max)
        if pent_max > eps:
            raise CoherenceViolation("pentagon", worst["pentagon"], pent_max)
    return CoherenceReport(tri_max, pent_max, len(triples), len(quads), exhaustive, used_seed, worst)

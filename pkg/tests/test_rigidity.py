from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tetrasym.category import Arrow, PointedZ3Category
from tetrasym.exceptions import GaugeInconsistency, NoInvariantVector, NotRelated, ShapeMismatch
from tetrasym.numeric import classify
from tetrasym.rigidity import (
    RigidityData,
    alpha_residuals,
    antimonoidal_alpha,
    build_rigidity,
    compare_rigidity,
    conjugate_arrow,
    extend_rigidity,
    involutive_gauge,
    kappa,
    standard_rigidity_irreducible,
    trace,
    trace_left,
    trace_right,
    zigzag_left,
    zigzag_right,
)
from tetrasym.words import letters

from conftest import GROUP_PRESETS, cat_of, rig_of


def random_arrow(cat, src, dst, rng):
    basis = cat.hom_basis(src, dst)
    z = rng.normal(size=len(basis)) + 1j * rng.normal(size=len(basis))
    return sum((c * b for c, b in zip(z, basis)), basis[0] * 0)


def words(cat):
    return list(cat.labels) + list(itertools.product(cat.labels, repeat=2))


def test_unit_rigidity(cat):
    e, c, d = standard_rigidity_irreducible(cat, 0)
    assert d == pytest.approx(1)
    assert np.allclose(e.mat, 1) and np.allclose(c.mat, 1)


@pytest.mark.parametrize("name", GROUP_PRESETS)
def test_group_dimensions(name):
    # oracle: quantum dimension of a unitary group rep is its vector-space dimension
    cat = cat_of(name)
    rig = rig_of(name)
    for p in cat.labels:
        assert rig.d[p] == pytest.approx(cat.dims[p], abs=1e-12)


def test_pointed_canonical_rigidity():
    cat = cat_of("z3_omega1")
    rig = rig_of("z3_omega1")
    for p in cat.labels:
        ph = cat.conj[p]
        assert rig.d[p] == pytest.approx(1)
        assert np.allclose(rig.e_irr[p].mat, cat.hom_basis((ph, p), 0)[0].mat)
        assert np.allclose(rig.c_irr[p].mat, cat.hom_basis(0, (p, ph))[0].mat)


def test_broken_conjugation_detected():
    cat = PointedZ3Category("broken", 1)
    cat.conj = (0, 1, 2)
    with pytest.raises(NoInvariantVector):
        standard_rigidity_irreducible(cat, 1)


def test_zigzags_and_standardness(preset):
    cat, rig = cat_of(preset), rig_of(preset)
    for w in words(cat):
        e, c = rig.e(w), rig.c(w)
        assert zigzag_left(cat, w, e, c).dist(cat.identity(w)) <= 1e-9
        assert zigzag_right(cat, w, e, c).dist(cat.identity(rig.conj(w))) <= 1e-9
        d = rig.qdim(w)
        assert abs((c.adj @ c).scalar() - d) <= 1e-9
        assert abs((e @ e.adj).scalar() - d) <= 1e-9


def test_dimension_additive_and_multiplicative(preset):
    cat, rig = cat_of(preset), rig_of(preset)
    for a, b in itertools.product(cat.labels, repeat=2):
        via_summands = sum(cat.fusion(p, a, b) * rig.d[p] for p in cat.labels)
        assert rig.qdim((a, b)) == pytest.approx(via_summands)
        assert rig.qdim((a, b)) == pytest.approx(rig.d[a] * rig.d[b])
        assert rig.d[cat.conj[a]] == pytest.approx(rig.d[a])


def test_single_letter_extension_is_exact(rig):
    for p in rig.cat.labels:
        e, c = extend_rigidity(rig, p)
        assert e.dist(rig.e_irr[p]) <= 1e-12 and c.dist(rig.c_irr[p]) <= 1e-12


def test_pointed_pair_single_summand():
    rig = rig_of("z3_omega1")
    w = rig.ext((1, 1))
    assert list(w.V) == [2]


def test_q8_pair_four_summands():
    rig = rig_of("q8")
    w = rig.ext((4, 4))
    assert sorted(w.V) == [0, 1, 2, 3]
    cat = rig.cat
    assert zigzag_left(cat, (4, 4), w.e, w.c).dist(cat.identity((4, 4))) <= 1e-9


def test_conjugate_identity_and_scalar(rig):
    cat = rig.cat
    for p in cat.labels:
        ph = cat.conj[p]
        assert conjugate_arrow(rig, cat.identity(p)).dist(cat.identity(ph)) <= 1e-12
        assert conjugate_arrow(rig, cat.identity(p) * (2 - 3j)).dist(cat.identity(ph) * (2 - 3j)) <= 1e-12


def test_double_conjugation_q8():
    rig = rig_of("q8")
    rng = np.random.default_rng(3)
    for _ in range(5):
        T = random_arrow(rig.cat, (4, 4), (4, 4), rng)
        assert conjugate_arrow(rig, conjugate_arrow(rig, T)).dist(T) <= 1e-9


def test_conjugate_agrees_with_left_conjugation(rig):
    rng = np.random.default_rng(5)
    cat = rig.cat
    for a, b in [(1, (1, 0)), ((cat.rank - 1, 1), (1, cat.rank - 1))]:
        if not len(cat.hom_basis(a, b)):
            continue
        T = random_arrow(cat, a, b, rng)
        assert conjugate_arrow(rig, T).dist(rig.left_conjugate(T)) <= 1e-9


def test_conjugation_is_functorial():
    rig = rig_of("s3")
    cat = rig.cat
    rng = np.random.default_rng(2)
    S = random_arrow(cat, 2, (2, 2), rng)
    T = random_arrow(cat, (2, 2), (2, (1, 2)), rng)
    lhs = conjugate_arrow(rig, T @ S)
    rhs = conjugate_arrow(rig, S) @ conjugate_arrow(rig, T)
    assert lhs.dist(rhs) <= 1e-9


def test_trace_of_identity(rig):
    for p in rig.cat.labels:
        assert trace(rig, rig.cat.identity(p)) == pytest.approx(rig.d[p])


def test_trace_of_minimal_projector_q8():
    rig = rig_of("q8")
    v = rig.cat.hom_basis(0, (4, 4))[0]
    P = v @ v.adj
    assert trace(rig, P) == pytest.approx(1.0)


def test_trace_properties(preset):
    cat, rig = cat_of(preset), rig_of(preset)
    rng = np.random.default_rng(17)
    ws = words(cat)
    pairs = 0
    while pairs < 100:
        a, b = (ws[i] for i in rng.integers(0, len(ws), 2))
        if not len(cat.hom_basis(a, b)):
            continue
        T = random_arrow(cat, b, a, rng)
        S = random_arrow(cat, a, b, rng)
        pairs += 1
        assert abs(trace_left(rig, T @ S) - trace_right(rig, T @ S)) <= 1e-9
        assert abs(trace(rig, T @ S) - trace(rig, S @ T)) <= 1e-9
        pos = trace(rig, S.adj @ S)
        assert pos.real > 0 and abs(pos.imag) <= 1e-9


def test_trace_needs_endomorphism():
    rig = rig_of("s3")
    with pytest.raises(ShapeMismatch):
        trace(rig, rig.cat.hom_basis(2, (2, 2))[0])


def test_kappa(preset):
    cat, rig = cat_of(preset), rig_of(preset)
    for w in words(cat):
        k = kappa(rig, w)
        assert k.unitary
        assert k.sovereign_residual <= 1e-9
        sign = np.prod([rig.chi[x] for x in letters(w)])
        assert k.kappa.dist(cat.identity(w) * sign) <= 1e-9


def test_kappa_unit(rig):
    assert kappa(rig, 0).kappa.dist(rig.cat.identity(0)) <= 1e-12


def test_kappa_q8_before_gauge():
    raw = build_rigidity(cat_of("q8"), gauge=False)
    assert kappa(raw, 4).kappa.dist(raw.cat.identity(4) * -1) <= 1e-9


def test_involutive_gauge_signs():
    assert rig_of("z3_omega1").chi == {0: 1, 1: 1, 2: 1}
    assert rig_of("q8").chi == {0: 1, 1: 1, 2: 1, 3: 1, 4: -1}
    assert rig_of("z3").chi == {0: 1, 1: 1, 2: 1}


def test_involutive_gauge_relations(rig):
    cat = rig.cat
    for p in cat.labels:
        ph = cat.conj[p]
        assert rig.e_irr[ph].dist(rig.c_irr[p].adj * rig.chi[p]) <= 1e-12
        assert rig.c_irr[ph].dist(rig.e_irr[p].adj * rig.chi[p]) <= 1e-12
        if ph != p:
            assert rig.chi[p] == 1


def test_gauge_rejects_nonstandard_pair():
    raw = build_rigidity(cat_of("z3"), gauge=False)
    bad = RigidityData(raw.cat, {**raw.e_irr, 2: raw.e_irr[2] * 2}, raw.c_irr, raw.d, tol=raw.tol)
    with pytest.raises(GaugeInconsistency):
        involutive_gauge(bad)


def test_compare_same_is_identity(rig):
    for w in [1, (1, 1)]:
        if w == (1, 1) and rig.cat.rank < 2:
            continue
        U = compare_rigidity(rig, rig, w)
        assert U.dist(rig.cat.identity(w)) <= 1e-9


@settings(max_examples=20, deadline=None)
@given(st.floats(0, 2 * np.pi))
def test_compare_scalar_gauge(theta):
    # e -> z e and c -> conj(z) c is solved by U = z (the postcondition e' = e(1⊗U) fixes the phase)
    rig = rig_of("s3")
    z = np.exp(1j * theta)
    e2 = {**rig.e_irr, 2: rig.e_irr[2] * z}
    c2 = {**rig.c_irr, 2: rig.c_irr[2] * np.conj(z)}
    other = RigidityData(rig.cat, e2, c2, rig.d, rig.chi, rig.tol)
    U = compare_rigidity(rig, other, 2)
    assert U.dist(rig.cat.identity(2) * z) <= 1e-9


def test_compare_random_multiplicity_choice():
    rig = rig_of("q8")
    cat = rig.cat
    w = (4, (4, 4))
    rng = np.random.default_rng(9)
    mixing = {}
    for p in cat.labels:
        n = len(cat.hom_basis(p, w))
        if n:
            q, _ = np.linalg.qr(rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)))
            mixing[p] = q
    assert any(len(m) > 1 for m in mixing.values())
    e2, c2 = extend_rigidity(rig, w, mixing)
    other = RigidityData(cat, rig.e_irr, rig.c_irr, rig.d, rig.chi, rig.tol)
    other._ext[w] = type(rig.ext(w))(w, e2, c2, {}, {})
    U = compare_rigidity(rig, other, w)
    assert classify(U.mat).unitary


def test_compare_unrelated():
    rig = rig_of("s3")
    e2 = {**rig.e_irr, 2: rig.e_irr[2] * 2}
    other = RigidityData(rig.cat, e2, rig.c_irr, rig.d, rig.chi, rig.tol)
    with pytest.raises(NotRelated):
        compare_rigidity(rig, other, 2)


def test_alpha_unit_strand(rig):
    for a in rig.cat.labels:
        assert classify(antimonoidal_alpha(rig, a, 0).mat).unitary


def test_alpha_pointed_phase():
    rig = rig_of("z3_omega1")
    al = antimonoidal_alpha(rig, 1, 1)
    assert al.mat.shape == (1, 1)
    assert abs(abs(al.mat[0, 0]) - 1) <= 1e-12


def test_alpha_conjugates_rigidity(preset):
    rig = rig_of(preset)
    for p in rig.cat.labels:
        assert max(alpha_residuals(rig, p)) <= 1e-9


def test_antimonoidal_on_sampled_arrows():
    for name in ("q8", "z3_omega2"):
        rig = rig_of(name)
        cat = rig.cat
        rng = np.random.default_rng(4)
        for p, q in itertools.product(cat.labels, repeat=2):
            if not len(cat.hom_basis(p, (cat.conj[q], (q, p)))):
                continue
            T = random_arrow(cat, p, (cat.conj[q], (q, p)), rng)
            S = random_arrow(cat, q, (q, 0), rng)
            lhs = conjugate_arrow(rig, T.tensor(S))
            mid = conjugate_arrow(rig, S).tensor(conjugate_arrow(rig, T))
            a_in = antimonoidal_alpha(rig, p, q)
            a_out = antimonoidal_alpha(rig, T.dst, S.dst)
            inv = Arrow(a_in.dst, a_in.src, np.linalg.inv(a_in.mat))
            assert lhs.dist(inv @ mid @ a_out) <= 1e-9

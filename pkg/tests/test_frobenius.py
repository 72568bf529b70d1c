from __future__ import annotations

import itertools

import numpy as np
import pytest

from tetrasym.exceptions import NotCase2, SelectionViolation
from tetrasym.frobenius import (
    basic_space,
    canonical_action_residuals,
    frobenius_x,
    frobenius_y,
    s3_relations_check,
    selection_rules,
    triple_orbit,
    x_arrow,
    y_arrow,
    z3_spectrum,
)
from tetrasym.rigidity import RigidityData

from conftest import cat_of, rig_of

W = np.exp(2j * np.pi / 3)


def admissible_triples(cat):
    return [t for t in itertools.product(cat.labels, repeat=3) if cat.fusion(*t)]


def test_x_rho_and_y_lambda():
    rig = rig_of("q8")
    for p in rig.cat.labels:
        rho, lam = rig.cat.runit(p), rig.cat.lunit(p)
        assert x_arrow(rig, p, 0, p, rho).dist(rho) <= 1e-12
        assert y_arrow(rig, p, p, 0, lam).dist(lam) <= 1e-12


def test_x_lambda_and_y_rho():
    rig = rig_of("s3")
    sd = np.sqrt(rig.d[2])
    assert x_arrow(rig, 2, 2, 0, rig.cat.lunit(2)).dist(rig.e_irr[2].adj * (1 / sd)) <= 1e-12
    assert y_arrow(rig, 2, 0, 2, rig.cat.runit(2)).dist(rig.c_irr[2] * (1 / sd)) <= 1e-12


def test_canonical_actions(rig):
    for p in rig.cat.labels:
        assert max(canonical_action_residuals(rig, p).values()) <= 1e-9


@pytest.mark.parametrize("k", [0, 1, 2])
def test_pointed_closed_formulas(k):
    rig = rig_of(f"z3_omega{k}")
    cat = rig.cat
    for p, q, r in admissible_triples(cat):
        qh, rh = cat.conj[q], cat.conj[r]
        assert frobenius_x(rig, p, q, r).mat[0, 0] == pytest.approx(np.conj(cat.omega(qh, q, r)))
        assert frobenius_y(rig, p, q, r).mat[0, 0] == pytest.approx(cat.omega(q, r, rh))


def test_x_targets():
    rig = rig_of("z3_omega1")
    assert frobenius_x(rig, 1, 2, 2).dst == (2, 1, 1)
    assert frobenius_y(rig, 1, 2, 2).dst == (2, 1, 1)


def test_antilinear_isometry(rig):
    # <x(t1), x(t2)> = <t2, t1>
    rng = np.random.default_rng(0)
    for t in admissible_triples(rig.cat):
        for which in (frobenius_x, frobenius_y):
            m = which(rig, *t)
            n = m.mat.shape[1]
            v1 = rng.normal(size=n) + 1j * rng.normal(size=n)
            v2 = rng.normal(size=n) + 1j * rng.normal(size=n)
            assert np.vdot(m.apply(v1), m.apply(v2)) == pytest.approx(np.vdot(v2, v1))


def test_isometry_against_arrows():
    # coordinates agree with evaluating the arrow formula on a random element
    rig = rig_of("q8")
    rng = np.random.default_rng(1)
    t = (0, 4, 4)
    space = basic_space(rig, *t)
    v = rng.normal(size=space.dim) + 1j * rng.normal(size=space.dim)
    elem = space.element(v)
    image = x_arrow(rig, *t, elem)
    dst = basic_space(rig, *frobenius_x(rig, *t).dst)
    assert np.allclose(dst.coords(image), frobenius_x(rig, *t).apply(v))


def test_s3_relations(rig):
    for t in admissible_triples(rig.cat):
        assert s3_relations_check(rig, *t).max_residual <= 1e-9


def test_q8_x_squared_is_minus_one():
    rig = rig_of("q8")
    x1 = frobenius_x(rig, 0, 4, 4)
    xx = x1.then(frobenius_x(rig, *x1.dst))
    assert np.allclose(xx, -np.eye(1))


def test_pointed_x_squared_trivial():
    rig = rig_of("z3_omega1")
    for t in admissible_triples(rig.cat):
        x1 = frobenius_x(rig, *t)
        assert np.allclose(x1.then(frobenius_x(rig, *x1.dst)), 1)


def test_triple_orbit_examples():
    assert triple_orbit((0,), 0, 0, 0) == ([(0, 0, 0)], "case3")
    orbit, kind = triple_orbit((0, 2, 1), 1, 2, 2)
    assert kind == "case2"
    orbit, kind = triple_orbit(cat_of("q8").conj, 0, 4, 4)
    assert len(orbit) == 3 and kind == "case1"


def test_triple_orbit_generic():
    orbit, kind = triple_orbit((0, 2, 1), 1, 1, 1)
    assert kind == "generic"
    assert len(orbit) == 6
    orbit, kind = triple_orbit((0, 2, 1), 0, 1, 2)
    assert kind == "case1" and (1, 0, 1) in orbit


def test_orbit_closed(cat):
    for t in itertools.product(cat.labels, repeat=3):
        orbit, _ = triple_orbit(cat.conj, *t)
        for s in orbit:
            assert set(triple_orbit(cat.conj, *s)[0]) == set(orbit)
            assert cat.fusion(*s) == cat.fusion(*t)


def test_selection_rules_q8():
    rig = rig_of("q8")
    checked = selection_rules(rig)
    assert ("N^p_pp", (4,), 0) in checked
    assert all(n == 0 for _, _, n in checked)
    assert rig.cat.fusion(4, 4, 4) == 0


def test_selection_rules_s3_empty():
    assert selection_rules(rig_of("s3")) == []


def test_selection_violation_detected():
    rig = rig_of("s3")
    fake = RigidityData(rig.cat, rig.e_irr, rig.c_irr, rig.d, {**rig.chi, 2: -1}, rig.tol)
    with pytest.raises(SelectionViolation):
        selection_rules(fake)


@pytest.mark.parametrize("k, value", [(0, 1.0), (1, W), (2, W.conjugate())])
def test_z3_spectrum(k, value):
    spec = z3_spectrum(rig_of(f"z3_omega{k}"), 1)
    assert spec.eigenvalues == pytest.approx([value])
    assert spec.order3_residual <= 1e-9
    assert len(spec.eigenbasis) == 1


def test_z3_spectrum_not_case2():
    with pytest.raises(NotCase2):
        z3_spectrum(rig_of("q8"), 4)
    with pytest.raises(NotCase2):
        z3_spectrum(rig_of("s3"), 2)


def test_z3_group_spectrum_trivial():
    assert z3_spectrum(rig_of("z3"), 1).eigenvalues == pytest.approx([1.0])

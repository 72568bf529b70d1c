from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tetrasym.exceptions import EmptyInput
from tetrasym.numeric import (
    Tolerance,
    as_tol,
    classify,
    cmat,
    default_tol,
    hs_inner,
    kron,
    nullspace,
    orthonormalize,
    rref,
)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def cplx(shape):
    return st.tuples(arrays(float, shape, elements=finite), arrays(float, shape, elements=finite)).map(
        lambda ri: ri[0] + 1j * ri[1]
    )


def test_kron_identity():
    assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))


def test_kron_scalar_factor():
    assert np.array_equal(kron([[0, 1], [1, 0]], [[2]]), [[0, 2], [2, 0]])


def test_kron_index_convention():
    a = np.arange(6).reshape(2, 3)
    b = np.arange(4).reshape(2, 2) + 1
    k = kron(a, b)
    for i, j, m, n in np.ndindex(2, 3, 2, 2):
        assert k[i * 2 + m, j * 2 + n] == a[i, j] * b[m, n]


def test_kron_mixed_product_random():
    rng = np.random.default_rng(1)
    A, B, C, D = (rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)) for _ in range(4))
    # direct multiplication oracle
    assert np.allclose(kron(A, B) @ kron(C, D), kron(A @ C, B @ D), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(cplx((2, 2)), cplx((2, 3)), cplx((1, 2)))
def test_kron_associative(a, b, c):
    assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)))


@settings(max_examples=40, deadline=None)
@given(cplx((2, 3)), cplx((3, 2)), finite, finite)
def test_adjoint_antihomomorphism(a, b, x, y):
    lam = x + 1j * y
    assert np.allclose((a @ b).conj().T, b.conj().T @ a.conj().T)
    assert np.allclose((lam * a).conj().T, np.conj(lam) * a.conj().T)


def test_orthonormalize_gram_schmidt():
    out = orthonormalize([[[1], [0]], [[1], [1]]])
    assert len(out) == 2
    assert np.allclose(out[0], [[1], [0]])
    assert np.allclose(out[1], [[0], [1]])


def test_orthonormalize_drops_dependent():
    v = np.array([[1.0], [2.0j], [3.0]])
    out = orthonormalize([v, 2 * v])
    assert len(out) == 1
    assert np.isclose(np.linalg.norm(out[0]), 1)


def test_orthonormalize_random_overcomplete():
    rng = np.random.default_rng(7)
    vecs = [rng.normal(size=(3, 1)) + 1j * rng.normal(size=(3, 1)) for _ in range(4)]
    out = orthonormalize(vecs)
    assert len(out) == 3
    gram = np.array([[np.vdot(a, b) for b in out] for a in out])
    assert np.abs(gram - np.eye(3)).max() <= 1e-12
    assert classify(np.hstack(out)).isometry


def test_orthonormalize_scaled_inner_product():
    out = orthonormalize([np.eye(2), np.diag([1, -1])], inner="scaled")
    for a in out:
        assert np.isclose(hs_inner(a, a, scaled=True), 1)
    assert abs(hs_inner(out[0], out[1], scaled=True)) < 1e-12


def test_orthonormalize_empty():
    with pytest.raises(EmptyInput):
        orthonormalize([])


def test_orthonormalize_shape_mismatch():
    with pytest.raises(ValueError):
        orthonormalize([np.zeros((2, 1)), np.zeros((3, 1))])


@pytest.mark.parametrize(
    "m, flags",
    [
        (np.eye(3), (True, True, True, False)),
        (np.array([[1.0], [0.0]]), (True, False, True, False)),
        (np.diag([1.0, 0.0]), (False, False, True, False)),
        (np.zeros((2, 2)), (False, False, True, True)),
    ],
)
def test_classify(m, flags):
    c = classify(m)
    assert (c.isometry, c.unitary, c.partial_isometry, c.zero) == flags


def test_tolerance_bounds():
    with pytest.raises(ValueError):
        Tolerance(0.0)
    with pytest.raises(ValueError):
        Tolerance(1.5)
    assert as_tol(None) == default_tol()
    assert as_tol(Tolerance(1e-6)) == 1e-6


def test_env_override(monkeypatch):
    monkeypatch.setenv("TETRASYM_TOL", "1e-7")
    assert default_tol() == 1e-7


def test_cmat_rejects_nonfinite():
    with pytest.raises(ValueError):
        cmat([[np.nan]])


def test_nullspace_and_rref():
    m = np.array([[1.0, 1.0, 0.0]])
    ns = nullspace(m)
    assert ns.shape == (2, 3)
    assert np.abs(m @ ns.T).max() < 1e-12
    r = rref(ns)
    # leftmost pivots, rows unit-normalised at the pivot
    assert np.allclose(r, [[1, -1, 0], [0, 0, 1]])

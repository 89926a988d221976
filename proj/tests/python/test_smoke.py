import numpy as np
import pytest

import sketchkit as sk


def rng_matrix(n, m, seed=0, complex_=False):
    g = np.random.default_rng(seed)
    A = g.standard_normal((n, m))
    if complex_:
        A = A + 1j * g.standard_normal((n, m))
    return A


@pytest.mark.parametrize("family", ["gaussian", "sparsestack", "sparseuniform", "sparseiid", "sparsecol",
                                    "sparsertt", "khatrirao"])
@pytest.mark.parametrize("field", ["real", "complex"])
def test_apply_matches_materialized(family, field):
    om = sk.test_matrix(sk.SketchSpec(family), 64, 16, seed=3, field=field)
    assert om.shape == (64, 16)
    W = om.materialize()
    A = rng_matrix(5, 64, complex_=field == "complex")
    B = rng_matrix(64, 4, 1, complex_=field == "complex")
    np.testing.assert_allclose(om.apply_right(A), A @ W, atol=1e-12)
    np.testing.assert_allclose(om.apply_adjoint(B), W.conj().T @ B, atol=1e-12)


def test_seed_determinism():
    spec = sk.SketchSpec("sparsestack", zeta=4)
    a = sk.test_matrix(spec, 100, 20, seed=7).materialize()
    b = sk.test_matrix(spec, 100, 20, seed=7).materialize()
    c = sk.test_matrix(spec, 100, 20, seed=8).materialize()
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert np.all(np.count_nonzero(a, axis=1) == 4)


def test_rsvd_exact_rank():
    A = rng_matrix(60, 5) @ rng_matrix(5, 40, 1)
    om = sk.test_matrix(sk.SketchSpec("sparsestack"), 40, 10, seed=1)
    U, s, V = sk.rsvd(A, om)
    np.testing.assert_allclose((U * s) @ V.T, A, atol=1e-10 * np.linalg.norm(A))


def test_complex_rsvd():
    A = rng_matrix(30, 3, complex_=True) @ rng_matrix(3, 20, 1, complex_=True)
    om = sk.test_matrix(sk.SketchSpec(), 20, 6, seed=2, field="complex")
    U, s, V = sk.rsvd(A, om)
    np.testing.assert_allclose((U * s) @ V.conj().T, A, atol=1e-10 * np.linalg.norm(A))


def test_nystrom_and_generalized():
    G = rng_matrix(50, 4)
    P = G @ G.T
    om = sk.test_matrix(sk.SketchSpec(), 50, 8, seed=4)
    U, lam = sk.nystrom_psd(P, om)
    np.testing.assert_allclose((U * lam) @ U.T, P, atol=1e-8 * np.linalg.norm(P))

    A = rng_matrix(50, 4) @ rng_matrix(4, 30, 1)
    om = sk.test_matrix(sk.SketchSpec(), 30, 8, seed=5)
    psi = sk.test_matrix(sk.SketchSpec(), 50, 12, seed=6)
    F, Gm = sk.gen_nystrom(A, om, psi)
    np.testing.assert_allclose(F @ Gm.T, A, atol=1e-9 * np.linalg.norm(A))
    U, s, V = sk.gen_nystrom(A, om, psi, form="svd")
    np.testing.assert_allclose((U * s) @ V.T, A, atol=1e-9 * np.linalg.norm(A))


def test_nystrom_rejects_indefinite():
    A = -np.eye(20)
    om = sk.test_matrix(sk.SketchSpec(), 20, 5, seed=1)
    with pytest.raises(sk.PreconditionError):
        sk.nystrom_psd(A, om)


def test_sketch_and_solve():
    A = rng_matrix(200, 10)
    X = rng_matrix(10, 2, 1)
    psi = sk.test_matrix(sk.SketchSpec("sparsestack"), 200, 40, seed=2)
    np.testing.assert_allclose(sk.sketch_and_solve(A, A @ X, psi), X, atol=1e-9)


def test_dimension_error():
    om = sk.test_matrix(sk.SketchSpec(), 10, 3)
    with pytest.raises(sk.DimensionError):
        om.apply_right(np.ones((2, 11)))


def test_bad_family():
    with pytest.raises(sk.Error):
        sk.SketchSpec("nope")


def test_injectivity_identity():
    om = sk.test_matrix(sk.SketchSpec(), 30, 30, seed=0)
    Q = np.linalg.qr(rng_matrix(30, 5))[0]
    alpha, beta = sk.injectivity_dilation(om, Q)
    assert 0 <= alpha <= beta


def test_trace_estimators():
    G = rng_matrix(64, 4)
    A = G @ G.T
    spec = sk.SketchSpec("khatrirao", dist="real-spherical")
    nh = sk.na_hutch_pp(A, 24, spec, seed=1)
    assert abs(nh - np.trace(A)) <= 1e-8 * np.trace(A)
    gh = sk.girard_hutchinson(np.eye(64), 8, sk.SketchSpec("sparsestack"), seed=1)
    assert abs(gh - 64) < 1e-12


def test_tfim_trace():
    # ell = 2, h = 0: H = diag(-2, 2, 2, -2), shift 2.
    assert sk.tfim_shift(2, 0.0) == 2.0
    expected = 2 * np.exp(0.0) + 2 * np.exp(-4.0 * 1.0)
    assert sk.tfim_shifted_trace(2, 0.0, 1.0) == pytest.approx(expected)

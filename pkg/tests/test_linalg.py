"""The dense kernel: products, inverses, exponentials, Jacobi roots and norms."""

import numpy as np
import pytest
import scipy.linalg

from pfcircuit import linalg
from pfcircuit.errors import NotSPD, SingularMatrix
from pfcircuit.liouvillian import shift
from pfcircuit.pfalgebra import fermion_generators


def test_multiply_identity():
    rng = np.random.default_rng(0)
    x = rng.standard_normal((4, 4))
    np.testing.assert_array_equal(linalg.multiply(np.eye(4), x), x)


def test_multiply_nilpotent_generator():
    a1, a2 = fermion_generators()
    assert np.all(linalg.multiply(a1, a1) == 0.0)
    assert np.all(linalg.multiply(a2, a2) == 0.0)


def test_multiply_associativity():
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b, c = rng.standard_normal((3, 4, 4))
        left = linalg.multiply(linalg.multiply(a, b), c)
        right = linalg.multiply(a, linalg.multiply(b, c))
        assert np.max(np.abs(left - right)) < 1e-13 * np.max(np.abs(left) + 1.0)


def test_multiply_rejects_nonfinite():
    bad = np.full((4, 4), np.nan)
    with pytest.raises(ValueError):
        linalg.multiply(bad, np.eye(4))


def test_inverse_identity_and_diagonal():
    np.testing.assert_allclose(linalg.inverse(np.eye(4)), np.eye(4), atol=1e-15)
    np.testing.assert_allclose(
        linalg.inverse(np.diag([1.0, 2.0, 4.0, 8.0])),
        np.diag([1.0, 0.5, 0.25, 0.125]), atol=1e-15)


def test_inverse_intertwiner_residual(reference_T):
    T, _ = reference_T
    product = T @ linalg.inverse(T)
    assert np.max(np.abs(product - np.eye(4))) < 1e-10


def test_inverse_singular():
    singular = np.ones((4, 4))
    with pytest.raises(SingularMatrix) as err:
        linalg.inverse(singular)
    assert err.value.determinant < 1e-10


def test_adjoint_moves_unit_entries():
    a1, _ = fermion_generators()
    adj = linalg.adjoint(a1)
    assert adj[1, 0] == 1.0 and adj[3, 2] == 1.0
    assert np.sum(np.abs(adj)) == 2.0


def test_adjoint_fixes_symmetric(reference_pf):
    np.testing.assert_array_equal(linalg.adjoint(reference_pf.S_phi), reference_pf.S_phi.T)
    assert np.max(np.abs(reference_pf.S_phi - reference_pf.S_phi.T)) == 0.0


def test_adjoint_product_rule():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a, b = rng.standard_normal((2, 4, 4))
        left = linalg.adjoint(a @ b)
        right = linalg.adjoint(b) @ linalg.adjoint(a)
        assert np.max(np.abs(left - right)) < 1e-13 * np.max(np.abs(left) + 1.0)


def test_expm_zero_matrix():
    np.testing.assert_array_equal(linalg.expm(np.zeros((4, 4)), 3.7), np.eye(4))


def test_expm_diagonal():
    lams = np.array([0.0, -1.5, 0.3, 2.0])
    result = linalg.expm(np.diag(lams), 1.0)
    np.testing.assert_allclose(result, np.diag(np.exp(lams)), rtol=1e-14)


def test_expm_two_routes_agree(reference_generator, reference_spectrum, reference_T):
    # eigendecomposition route vs scaling-and-squaring Taylor route
    T, _ = reference_T
    shifted = shift(reference_generator, reference_spectrum)
    eig_route = linalg.expm(shifted, 0.7,
                            eig=(T, reference_spectrum.shifted_eigenvalues))
    taylor_route = linalg.expm(shifted, 0.7)
    scale = np.linalg.norm(taylor_route)
    assert np.linalg.norm(eig_route - taylor_route) / scale < 1e-9
    # third, library-grade oracle
    reference = scipy.linalg.expm(shifted * 0.7)
    assert np.linalg.norm(taylor_route - reference) / scale < 1e-12


def test_expm_semigroup(reference_generator, reference_spectrum):
    shifted = shift(reference_generator, reference_spectrum)
    for t1, t2 in ((0.3, 0.9), (1.1, 0.4), (2.0, 2.0)):
        combined = linalg.expm(shifted, t1 + t2)
        split = linalg.expm(shifted, t1) @ linalg.expm(shifted, t2)
        assert np.linalg.norm(combined - split) / np.linalg.norm(combined) < 1e-9


def test_expm_derivative_at_zero(reference_generator):
    h = 1e-5
    diff = (linalg.expm(reference_generator, h) - linalg.expm(reference_generator, -h)) / (2 * h)
    assert np.max(np.abs(diff - reference_generator)) < 1e-6


def test_sqrtm_identity_and_diagonal():
    np.testing.assert_allclose(linalg.sqrtm_spd(np.eye(4)), np.eye(4), atol=1e-14)
    np.testing.assert_allclose(
        linalg.sqrtm_spd(np.diag([4.0, 9.0, 16.0, 25.0])),
        np.diag([2.0, 3.0, 4.0, 5.0]), atol=1e-13)


def test_sqrtm_metric(reference_pf):
    root = linalg.sqrtm_spd(reference_pf.S_psi)
    residual = np.linalg.norm(root @ root - reference_pf.S_psi)
    assert residual < 1e-9
    assert np.max(np.abs(root - root.T)) < 1e-12


def test_sqrtm_rejects_indefinite():
    with pytest.raises(NotSPD) as err:
        linalg.sqrtm_spd(np.diag([1.0, 2.0, -3.0, 4.0]))
    assert err.value.eigenvalue == pytest.approx(-3.0, rel=1e-12)


def test_sqrtm_rejects_asymmetric():
    m = np.eye(4)
    m[0, 1] = 0.5
    with pytest.raises(ValueError):
        linalg.sqrtm_spd(m)


def test_spectral_norm_basics():
    assert linalg.spectral_norm(np.eye(4)) == pytest.approx(1.0, rel=1e-12)
    assert linalg.spectral_norm(np.diag([0.0, 0.0, 0.0, -7.0])) == pytest.approx(7.0, rel=1e-12)


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(3)
    for _ in range(10):
        a = rng.standard_normal((4, 4))
        expected = np.linalg.svd(a, compute_uv=False)[0]
        assert linalg.spectral_norm(a) == pytest.approx(expected, rel=1e-11)


def test_spectral_norm_number_operator(reference_pf):
    # non-orthogonal idempotents have norm >= 1
    assert linalg.spectral_norm(reference_pf.N1) >= 1.0


def test_jacobi_matches_library():
    rng = np.random.default_rng(4)
    for _ in range(10):
        base = rng.standard_normal((4, 4))
        sym = base + base.T
        w, v = linalg.jacobi_eigh(sym)
        w_ref = np.linalg.eigvalsh(sym)
        np.testing.assert_allclose(w, w_ref, atol=1e-11 * max(1.0, np.max(np.abs(w_ref))))
        residual = np.linalg.norm(sym @ v - v @ np.diag(w))
        assert residual < 1e-11 * max(1.0, np.linalg.norm(sym))


def test_jacobi_ill_conditioned_metric(reference_pf):
    # cond(S_phi) ~ 1e4; the sweep must still converge to eps-level residuals
    w, v = linalg.jacobi_eigh(reference_pf.S_phi)
    residual = np.linalg.norm(reference_pf.S_phi @ v - v @ np.diag(w))
    assert residual < 1e-11 * np.linalg.norm(reference_pf.S_phi)
    assert np.linalg.norm(v.T @ v - np.eye(4)) < 1e-13

"""Generator assembly and the closed-form spectrum against independent oracles."""

import math

import numpy as np
import pytest

from conftest import sample_accepted
from pfcircuit import build_liouvillian, derive, normalized, spectrum, validate
from pfcircuit.errors import NearDegenerate, RegimeRejected
from pfcircuit.liouvillian import characteristic_residual, effective_hamiltonian, shift


def quartic_roots(derived):
    """Independent oracle: numeric roots of the characteristic quartic."""
    a, g, m = derived.alpha, derived.gamma, derived.mu
    roots = np.roots([1.0, 0.0, 2.0 * a - g * g, 0.0, a * a * (1.0 - m * m)])
    assert np.max(np.abs(roots.imag)) < 1e-10
    return np.sort(roots.real)


def test_matrix_layout(reference_derived, reference_generator):
    gen = reference_generator
    np.testing.assert_array_equal(gen[:2, :2], np.zeros((2, 2)))
    np.testing.assert_array_equal(gen[:2, 2:], np.eye(2))
    np.testing.assert_allclose(gen[2], [-4.0 / 3.0, 2.0 / 3.0, 3.0, 0.0], rtol=1e-15)
    np.testing.assert_allclose(gen[3], [2.0 / 3.0, -4.0 / 3.0, 0.0, -3.0], rtol=1e-15)


def test_matrix_decoupled_at_zero_coupling():
    gen = build_liouvillian(derive(normalized(0.0, 3.0)))
    assert gen[2, 1] == 0.0 and gen[3, 0] == 0.0


def test_build_rejects_regime():
    with pytest.raises(RegimeRejected):
        build_liouvillian(derive(normalized(0.5, 2.0)))
    # exploratory override still assembles the matrix
    gen = build_liouvillian(derive(normalized(0.5, 2.0)), require_regime=False)
    assert gen.shape == (4, 4)
    with pytest.raises(RegimeRejected):
        spectrum(derive(normalized(0.5, 2.0)))


def test_effective_hamiltonian(reference_derived, reference_generator):
    h = effective_hamiltonian(reference_derived)
    np.testing.assert_array_equal(h.imag, reference_generator)
    np.testing.assert_array_equal(h.real, np.zeros((4, 4)))


def test_shift(reference_generator, reference_spectrum):
    shifted = shift(reference_generator, reference_spectrum)
    np.testing.assert_array_equal(shifted + reference_spectrum.l3 * np.eye(4),
                                  reference_generator)
    # numeric eigenvalues of the shifted matrix are the shifted closed forms
    eigs = np.sort(np.linalg.eigvals(shifted).real)
    np.testing.assert_allclose(eigs, reference_spectrum.shifted_eigenvalues, atol=1e-9)
    assert abs(np.trace(shifted) - (np.trace(reference_generator)
               - 4.0 * reference_spectrum.l3)) < 1e-12


def test_spectrum_decoupled_closed_form():
    # each decoupled sub-circuit obeys s^2 - gamma s + 1 = 0, roots (3 +- sqrt5)/2
    oracle = np.sort(np.roots([1.0, -3.0, 1.0]).real)
    np.testing.assert_allclose(oracle, [(3.0 - math.sqrt(5.0)) / 2.0,
                                        (3.0 + math.sqrt(5.0)) / 2.0], atol=1e-12)
    spec = spectrum(derive(normalized(0.0, 3.0)))
    assert spec.l4 == pytest.approx((3.0 + math.sqrt(5.0)) / 2.0, abs=1e-12)
    assert spec.l2 == pytest.approx((3.0 - math.sqrt(5.0)) / 2.0, abs=1e-12)
    assert spec.l4 == pytest.approx(oracle[1], abs=1e-12)
    assert spec.l2 == pytest.approx(oracle[0], abs=1e-12)


def test_spectrum_reference_against_quartic(reference_derived, reference_spectrum):
    roots = quartic_roots(reference_derived)
    closed = np.sort([reference_spectrum.l1, reference_spectrum.l2,
                      reference_spectrum.l3, reference_spectrum.l4])
    np.testing.assert_allclose(closed, roots, atol=1e-9)
    assert reference_spectrum.l4 == pytest.approx(2.47291, abs=1e-5)
    assert reference_spectrum.l2 == pytest.approx(0.46697, abs=5e-5)


def test_spectrum_structure_random():
    rng = np.random.default_rng(21)
    for mu, gamma in sample_accepted(rng, 100):
        derived = derive(normalized(mu, gamma))
        spec = spectrum(derived)
        assert spec.l3 < spec.l1 < 0.0 < spec.l2 < spec.l4
        assert spec.l2 == -spec.l1 and spec.l4 == -spec.l3
        assert spec.lambda0 == 0.0 < spec.lambda1 < spec.lambda2 < spec.lambda3
        assert abs(spec.lambda3 - (spec.lambda1 + spec.lambda2)) < 1e-12
        # general-purpose eigenvalue oracle on the assembled matrix
        numeric = np.sort(np.linalg.eigvals(build_liouvillian(derived)).real)
        closed = np.sort([spec.l1, spec.l2, spec.l3, spec.l4])
        np.testing.assert_allclose(closed, numeric,
                                   atol=1e-9 * max(1.0, spec.l4))


def test_characteristic_residuals(reference_spectrum, reference_derived):
    residuals = characteristic_residual(reference_spectrum, reference_derived)
    bounds = 1e-9 * np.maximum(
        1.0, np.array([reference_spectrum.l1, reference_spectrum.l2,
                       reference_spectrum.l3, reference_spectrum.l4]) ** 4)
    assert np.all(residuals < bounds)
    decoupled = derive(normalized(0.0, 3.0))
    assert np.all(characteristic_residual(spectrum(decoupled), decoupled) < 1e-12)


def test_quartic_constant_term_identity():
    rng = np.random.default_rng(22)
    for mu, gamma in sample_accepted(rng, 20):
        d = derive(normalized(mu, gamma))
        assert d.alpha**2 * (1.0 - d.mu**2) == pytest.approx(d.alpha, rel=1e-12)


def test_determinant_and_trace(reference_derived, reference_generator, reference_spectrum):
    assert np.linalg.det(reference_generator) == pytest.approx(
        reference_derived.alpha, rel=1e-10)
    assert np.trace(reference_generator) == 0.0
    total = (reference_spectrum.l1 + reference_spectrum.l2
             + reference_spectrum.l3 + reference_spectrum.l4)
    assert abs(total) < 1e-12
    product = (reference_spectrum.l2 ** 2) * (reference_spectrum.l4 ** 2)
    assert product == pytest.approx(reference_derived.alpha, rel=1e-10)


def test_near_degenerate_guard():
    # at extreme gamma the l1/l2 pair cancels to working precision
    with pytest.raises(NearDegenerate):
        spectrum(derive(normalized(0.5, 2.0e4)))
    # and the validator flags the same collision
    assert validate(derive(normalized(0.5, 2.0e4))).near_degenerate_warning


def test_spectrum_serialization(reference_spectrum):
    data = reference_spectrum.to_dict()
    assert list(data) == ["l1", "l2", "l3", "l4",
                          "lambda0", "lambda1", "lambda2", "lambda3", "rho"]
    assert data["rho"] == pytest.approx(313.0 / 9.0, rel=1e-12)

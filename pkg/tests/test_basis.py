"""Biorthogonal families: construction, eigen-relations, metric maps, frame bounds."""

import json

import numpy as np
import pytest

from pfcircuit import Gauge, build_T, build_bases
from pfcircuit.basis import (
    KN_ORDER,
    eigen_check,
    expand,
    frame_bounds,
    gram_residual,
    metric_map_check,
    reconstruct,
    resolution_residuals,
)
from pfcircuit.errors import SingularMatrix


def test_identity_intertwiner_gives_canonical_bases():
    pair = build_bases(np.eye(4))
    np.testing.assert_array_equal(pair.phi, np.eye(4))
    np.testing.assert_array_equal(pair.psi, np.eye(4))
    assert gram_residual(pair) == 0.0


def test_singular_intertwiner_rejected():
    with pytest.raises(SingularMatrix):
        build_bases(np.zeros((4, 4)))


def test_gram_and_resolutions(reference_pair):
    assert gram_residual(reference_pair) < 1e-10
    r1, r2 = resolution_residuals(reference_pair)
    assert r1 < 1e-10 and r2 < 1e-10


def test_ladder_construction_matches_columns(reference_pair, reference_pf):
    phi00 = reference_pair.phi_vec(0, 0)
    # vacuum annihilated by both lowering operators
    assert np.linalg.norm(reference_pf.a1 @ phi00) < 1e-10 * np.linalg.norm(phi00)
    assert np.linalg.norm(reference_pf.a2 @ phi00) < 1e-10 * np.linalg.norm(phi00)
    for raised, column in (
        (reference_pf.b1 @ phi00, reference_pair.phi_vec(1, 0)),
        (reference_pf.b2 @ phi00, reference_pair.phi_vec(0, 1)),
        (reference_pf.b1 @ reference_pf.b2 @ phi00, reference_pair.phi_vec(1, 1)),
    ):
        assert np.linalg.norm(raised - column) < 1e-10 * np.linalg.norm(column)


def test_eigen_relations(reference_pair, reference_generator, reference_spectrum):
    residuals = eigen_check(reference_pair, reference_generator)
    assert np.max(residuals) < 1e-9
    assert reference_pair.labels[0] == reference_spectrum.l3
    phi00 = reference_pair.phi_vec(0, 0)
    assert np.linalg.norm(reference_generator @ phi00 - reference_spectrum.l3 * phi00) \
        < 1e-10 * np.linalg.norm(phi00)


def test_eigen_relations_gauge_independent(reference_spectrum, reference_derived,
                                           reference_generator):
    T, _ = build_T(reference_spectrum, reference_derived, Gauge(2.0, 0.5, 3.0, 1.0))
    pair = build_bases(T, reference_spectrum)
    assert np.max(eigen_check(pair, reference_generator)) < 1e-9


def test_metric_maps(reference_pair, reference_pf):
    residuals = metric_map_check(reference_pair, reference_pf.S_phi)
    assert np.max(residuals) < 1e-9


def test_metric_maps_identity_limit():
    pair = build_bases(np.eye(4))
    residuals = metric_map_check(pair, np.eye(4))
    assert np.max(residuals) == 0.0


def test_expansion_identity(reference_pair):
    rng = np.random.default_rng(51)
    for _ in range(25):
        v = rng.standard_normal(4)
        w = expand(reference_pair, v)
        assert np.linalg.norm(reconstruct(reference_pair, w) - v) \
            < 1e-10 * np.linalg.norm(v)


def test_frame_bounds(reference_pair, reference_pf):
    result = frame_bounds(reference_pair, reference_pf.S_phi, n_samples=200, seed=0)
    assert result["within_bounds"]
    assert result["lower_bound"] <= result["min_observed"] + 1e-9
    assert result["max_observed"] <= result["upper_bound"] + 1e-9


def test_export(reference_pair, reference_spectrum):
    payload = json.loads(json.dumps(reference_pair.to_dict()))
    assert len(payload["phi"]) == 4 and len(payload["psi"]) == 4
    for j, entry in enumerate(payload["phi"]):
        assert (entry["k"], entry["n"]) == KN_ORDER[j]
        assert len(entry["vector"]) == 4
    assert payload["phi"][0]["eigenvalue"] == pytest.approx(reference_spectrum.l3)

"""Shared fixtures: the reference parameter point and a sampler for accepted regimes."""

import numpy as np
import pytest

from pfcircuit import (
    Gauge,
    build_T,
    build_bases,
    build_liouvillian,
    build_pf,
    coefficients,
    derive,
    initial_state,
    normalized,
    spectrum,
)

REFERENCE_MU = 0.5
REFERENCE_GAMMA = 3.0


def sample_accepted(rng, n):
    """Yield n random (mu, gamma) pairs inside the accepted regime.

    The regime is gamma^2 > 2*alpha*(1 + sqrt(1 - mu^2)) with 0 < mu^2 < 1;
    gamma is drawn a random factor above the threshold.
    """
    out = []
    while len(out) < n:
        mu = float(rng.uniform(0.05, 0.9))
        alpha = 1.0 / (1.0 - mu * mu)
        threshold = 2.0 * alpha * (1.0 + np.sqrt(1.0 - mu * mu))
        gamma = float(np.sqrt(threshold * rng.uniform(1.2, 4.0)))
        out.append((mu, gamma))
    return out


@pytest.fixture(scope="session")
def reference_params():
    return normalized(REFERENCE_MU, REFERENCE_GAMMA, i1=1.0)


@pytest.fixture(scope="session")
def reference_derived(reference_params):
    return derive(reference_params)


@pytest.fixture(scope="session")
def reference_spectrum(reference_derived):
    return spectrum(reference_derived)


@pytest.fixture(scope="session")
def reference_generator(reference_derived):
    return build_liouvillian(reference_derived)


@pytest.fixture(scope="session")
def reference_T(reference_spectrum, reference_derived):
    T, deltas = build_T(reference_spectrum, reference_derived, Gauge())
    return T, deltas


@pytest.fixture(scope="session")
def reference_pf(reference_T, reference_spectrum, reference_generator):
    T, _ = reference_T
    return build_pf(T, reference_spectrum, liouvillian=reference_generator)


@pytest.fixture(scope="session")
def reference_pair(reference_T, reference_spectrum):
    T, _ = reference_T
    return build_bases(T, reference_spectrum)


@pytest.fixture(scope="session")
def reference_coefficients(reference_pair):
    return coefficients(initial_state(1.0), reference_pair)

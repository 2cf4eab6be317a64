import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_state(rng, dim):
    from qsgeom.hilbert import StateVector, normalize

    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return normalize(StateVector(v))

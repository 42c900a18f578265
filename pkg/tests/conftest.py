import numpy as np
import pytest

from funtf.polytope import bounding_box, hrep
from funtf.sampler import SamplerConfig, sample_batch

# Dimensions small enough that every oracle below stays hand-checkable.
SMALL_DIMS = [(2, 4), (2, 5), (3, 5), (3, 6), (4, 7)]


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)


@pytest.fixture(scope="session")
def geometry35():
    h = hrep(3, 5)
    return h, bounding_box(h)


@pytest.fixture(scope="session")
def records35():
    # Shared pipeline output; tests must not mutate the records.
    return sample_batch(SamplerConfig(d=3, N=5, seed=7), 40)

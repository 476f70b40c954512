import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dyadic_valued(rng, shape):
    """Random image on the k/256 intensity grid.

    Sums of such values are exact in float64 at these sizes, so tests
    may compare different summation orders bitwise.
    """
    return rng.integers(0, 257, size=shape).astype(np.float64) / 256.0

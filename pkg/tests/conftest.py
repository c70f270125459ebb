import numpy as np
import pytest

from atspec import AtomParams


@pytest.fixture
def params():
    return AtomParams()


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)

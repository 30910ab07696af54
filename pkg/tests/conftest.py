import os

import numpy as np
import pytest

SEED = int(os.environ.get("DETOUR_SEED", "20241016"))


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def plane():
    from pathpunch import Space

    return Space.euclidean(2)

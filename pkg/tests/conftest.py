import numpy as np
import pytest

import surrokit as sk


@pytest.fixture(scope="session")
def ls_series():
    """Preprocessed linear-stationary benchmark realization."""
    return sk.normalize(sk.trim_endpoint_mismatch(sk.preset("LS", 2048, seed=1)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)

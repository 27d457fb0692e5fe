import numpy as np
import pytest

try:
    from hypothesis import HealthCheck, settings
    settings.register_profile(
        "suite", derandomize=True, max_examples=60, deadline=None,
        suppress_health_check=[HealthCheck.too_slow])
    settings.load_profile("suite")
except ImportError:
    pass


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

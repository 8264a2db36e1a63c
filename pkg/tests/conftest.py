import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    max_examples=40,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


class ScriptedRng:
    """Stand-in generator returning scripted ``integers`` draws.

    Each scripted value is interpreted modulo the requested range, so a
    test can force a specific sample index.
    """

    def __init__(self, values):
        self._values = list(values)

    def integers(self, low, high=None, size=None):
        if size is not None:
            raise NotImplementedError("scripted draws are scalar")
        v = self._values.pop(0)
        if high is None:
            return np.int64(v % low)
        return np.int64(low + (v % (high - low)))


@pytest.fixture
def scripted_rng():
    return ScriptedRng

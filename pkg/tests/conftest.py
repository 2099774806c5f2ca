import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from twopoint import ZeroMeanMeasure

settings.register_profile(
    "suite", deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture
def four_atom():
    """The recurring worked measure: half the mass at -1, a dusting at
    0, and an asymmetric positive side."""
    return ZeroMeanMeasure.from_atoms(
        [(-1, "5/10"), (0, "1/10"), (1, "3/10"), (2, "1/10")])


@pytest.fixture
def symmetric_four():
    return ZeroMeanMeasure.from_atoms(
        [(-2, "1/10"), (-1, "4/10"), (1, "4/10"), (2, "1/10")])


@pytest.fixture
def third_discrete():
    return ZeroMeanMeasure.from_atoms(
        [(-2, "1/5"), (-1, "2/5"), (2, "2/5")])


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)

import math

import pytest

from eprbell import Scenario, make_direction, planar_direction


def single_pair(theta):
    return Scenario((make_direction(0, 0, 1),), (planar_direction(theta),))


@pytest.fixture
def chsh_scenario():
    # A at 0 and 90 degrees, B at 45 and 135 degrees, common plane
    return Scenario.planar([0.0, math.pi / 2], [math.pi / 4, 3 * math.pi / 4])


@pytest.fixture
def parallel_pair():
    return single_pair(0.0)


@pytest.fixture
def perpendicular_pair():
    return single_pair(math.pi / 2)

import pytest

from shiftopt import Scenario, plan


@pytest.fixture(scope="session")
def headline_scenario():
    """The headline instance: one week in hours, 10 drivers, 5 shifts of 8h."""
    return Scenario(T=168, N=10, s=5, delta=8, beta=8, d_max=10.0, a=2.0, c_veh=10)


@pytest.fixture(scope="session")
def headline_result(headline_scenario):
    return plan(headline_scenario)

"""Common fixtures for testing."""

import pytest

from tau_euler.satotate import build_angles
from tau_euler.tau_series import expand_delta

DESK_LIMIT = 10_000
ACCEPTANCE_LIMIT = 100_000


@pytest.fixture(scope="session")
def table():
    """Exact tau(1..10^4)."""
    return expand_delta(DESK_LIMIT)


@pytest.fixture(scope="session")
def angles(table):
    """Sato-Tate angles for every prime up to 10^4."""
    return build_angles(table, DESK_LIMIT)


@pytest.fixture(scope="session")
def acceptance_table():
    return expand_delta(ACCEPTANCE_LIMIT)


@pytest.fixture(scope="session")
def acceptance_angles(acceptance_table):
    return build_angles(acceptance_table, ACCEPTANCE_LIMIT)

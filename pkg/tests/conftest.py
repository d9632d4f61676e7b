import os

import pytest
from hypothesis import HealthCheck, settings

from b3lift.datum import canonical_datum
from b3lift.liftings import build_lifting
from b3lift.pbwalg import build_rewrite_system

settings.register_profile(
    "b3lift",
    max_examples=int(os.environ.get("B3LIFT_HYPOTHESIS_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture],
)
settings.load_profile("b3lift")

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session")
def d3():
    return canonical_datum(3)


@pytest.fixture(scope="session")
def d7():
    return canonical_datum(7)


@pytest.fixture(scope="session")
def serre3(d3):
    return build_rewrite_system(d3, "serre")


@pytest.fixture(scope="session")
def lift3(d3):
    return build_lifting(d3, "symbolic")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

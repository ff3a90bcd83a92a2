from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from swisscheese.schedule import build_cheese

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def cheese1():
    return build_cheese(1)


@pytest.fixture(scope="session")
def cheese2():
    return build_cheese(2)


@pytest.fixture(scope="session")
def empty_cheese():
    return build_cheese(0)


def frac(s) -> Fraction:
    return Fraction(s)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

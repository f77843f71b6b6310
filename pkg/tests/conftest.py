import functools

import pytest
from hypothesis import HealthCheck, settings

from tlgsb.presentations import build_candidate_gsb, build_defining
from tlgsb.rewrite import complete

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def gsb(family, n):
    return build_candidate_gsb(family, n)


@functools.lru_cache(maxsize=None)
def completed(family, n):
    return complete(build_defining(family, n).rule_set())


@pytest.fixture
def a3():
    return gsb("A", 4)


@pytest.fixture
def b3():
    return gsb("B", 3)


@pytest.fixture
def d4():
    return gsb("D", 4)


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance verdict; the line is printed in the terminal summary."""
    number = request.node.get_closest_marker("criterion").args[0]
    ACCEPTANCE[number] = f"criterion {number}: FAIL ({request.node.name})"

    def passed(detail):
        ACCEPTANCE[number] = f"criterion {number}: PASS  {detail}"
        print(ACCEPTANCE[number])

    return passed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])

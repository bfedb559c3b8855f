import random

import pytest
from hypothesis import HealthCheck, settings

from minlink.geom import PolyCurve

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(12345)


def zigzag(n=5, amp=1.0):
    return PolyCurve(tuple((float(i), amp * (i % 2)) for i in range(n)))


U_CURVE = PolyCurve(((0, 0), (0, 5), (3, 5), (3, 0)))


# (criterion, passed, detail) lines filled in by test_acceptance
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {detail}")

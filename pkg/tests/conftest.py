from __future__ import annotations

import hashlib

import pytest
from hypothesis import HealthCheck, settings

from rankpke.rng import SeededRng

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# filled by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def seeded(label: str) -> SeededRng:
    return SeededRng(hashlib.sha256(label.encode()).digest())


@pytest.fixture
def rng(request):
    return seeded(request.node.nodeid)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])

import time

import pytest
from hypothesis import HealthCheck, settings

from gyrovector import SpaceContext

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[list]()
_START = pytest.StashKey[float]()
RUNTIME_BUDGET = 60.0


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


def pytest_sessionstart(session):
    session.config.stash[_START] = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    # the runtime half of criterion 9 only makes sense once the acceptance tests ran
    lines = session.config.stash.get(_ACCEPTANCE, [])
    if not any(line.startswith("criterion 9 ") for line in lines):
        return
    elapsed = time.perf_counter() - session.config.stash[_START]
    passed = elapsed < RUNTIME_BUDGET
    lines.append(f"criterion 9 {'PASS' if passed else 'FAIL'} suite runtime: "
                 f"{elapsed:.1f} s < {RUNTIME_BUDGET:g} s")
    if not passed:
        session.exitstatus = pytest.ExitCode.TESTS_FAILED


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split()[1])):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one acceptance line; returns the pass flag for asserting."""

    def record(number, name, passed, detail=""):
        line = f"criterion {number} {'PASS' if passed else 'FAIL'} {name}" + (f": {detail}" if detail else "")
        request.config.stash[_ACCEPTANCE].append(line)
        print(line)
        return passed

    return record


@pytest.fixture
def ctx2():
    return SpaceContext(s=1.0, n=2)


@pytest.fixture
def ctx3():
    return SpaceContext(s=1.0, n=3)

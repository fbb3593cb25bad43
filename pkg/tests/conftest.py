import functools

import pytest

from soaring_esc.sim import builtin_scenarios, run

ACCEPTANCE_LINES = {}


@functools.lru_cache(maxsize=None)
def builtin_record(name):
    for sc in builtin_scenarios():
        if sc.name == name:
            return run(sc)
    raise KeyError(name)


@pytest.fixture(scope="session")
def records():
    return builtin_record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])

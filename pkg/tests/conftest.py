import time

import pytest

from recforge import _kernels

ACCEPTANCE = {}
SUITE_LIMIT = 300.0
_started = []


def pytest_sessionstart(session):
    _started.append(time.perf_counter())


@pytest.fixture(scope="session", autouse=True)
def _jit_warm():
    # compile the kernels once so timed criteria measure steady-state work
    _kernels.warm_up()


@pytest.fixture
def record_criterion():
    def record(number, name, passed, detail=""):
        ACCEPTANCE[number] = (name, bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    elapsed = time.perf_counter() - _started[0]
    if 9 in ACCEPTANCE:
        name, passed, detail = ACCEPTANCE[9]
        within = elapsed < SUITE_LIMIT
        ACCEPTANCE[9] = (name + f" and suite < {SUITE_LIMIT:.0f}s", passed and within,
                         detail + f" suite={elapsed:.1f}s")
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        name, passed, detail = ACCEPTANCE[number]
        mark = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {mark}  {name}  {detail}")

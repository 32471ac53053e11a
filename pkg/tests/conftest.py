import os

import pytest

from inca.generators import abracadabra_rlslp

SCALE = float(os.environ.get("INCA_TEST_SCALE", "1"))


def scaled(n, floor=1):
    return max(floor, int(n * SCALE))


@pytest.fixture
def abra():
    return abracadabra_rlslp()


ABRA_TEXT = b"abracad" + b"abra" * 7 + b"cabra"


# one summary line per acceptance criterion, printed at the end of the run
_criteria = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    if report.when == "call" or report.outcome != "passed":
        prev = _criteria.get(num, "PASS")
        _criteria[num] = "PASS" if prev == "PASS" and report.outcome == "passed" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        terminalreporter.write_line(f"{_criteria[num]} criterion {num}")

import sys

import pytest

from srestrict.blockset import TEST_FAMILY


@pytest.fixture(params=sorted(TEST_FAMILY), ids=str)
def family_set(request):
    return TEST_FAMILY[request.param]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "VERDICTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

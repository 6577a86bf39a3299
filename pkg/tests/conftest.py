import sys

import pytest

from nilpat.pattern import parse_pattern

# Worked examples used across suites.
TWO_TWO_CYCLES = "**0\n*0*\n0**"
LOOP_PLUS_BLOCK = "*00\n0**\n0**"
THREE_CYCLE_LOOPS = "**0\n0**\n*0*"
G5 = "---00\n+++00\n000--\n0-00-\n-0000"


@pytest.fixture
def two_two_cycles():
    return parse_pattern(TWO_TWO_CYCLES)


@pytest.fixture
def loop_plus_block():
    return parse_pattern(LOOP_PLUS_BLOCK)


@pytest.fixture
def three_cycle_loops():
    return parse_pattern(THREE_CYCLE_LOOPS)


@pytest.fixture
def g5():
    return parse_pattern(G5)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        terminalreporter.write_line(results[number])

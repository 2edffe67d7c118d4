import pytest

import acceptance_log
from knotcrypt.table import default_table


@pytest.fixture(scope="session")
def table():
    return default_table()


@pytest.fixture(scope="session")
def small(table):
    """Table entries with at most seven crossings."""
    return [e for e in table if e.crossing_number <= 7]


def pytest_terminal_summary(terminalreporter):
    if acceptance_log.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.LINES:
            terminalreporter.write_line(line)

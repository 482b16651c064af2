import pytest

from slatt.construct import grid, insert_fork, s7
from slatt.lattice import Edge

# S7 element ids after canonical renumbering.
O, P, Q, A, M, B, T = range(7)


def E(a: int, b: int) -> Edge:
    return Edge(a, b)


@pytest.fixture(scope="session")
def S7():
    return s7()


@pytest.fixture(scope="session")
def G33():
    return grid(3, 3)


@pytest.fixture(scope="session")
def F33():
    # Fork into the 4-cell under the top of grid(3,3); its bottom is element 4.
    return insert_fork(grid(3, 3), 4)


# One line per acceptance criterion, collected by tests/test_acceptance.py
# and repeated at the end of the run so they survive output capture.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

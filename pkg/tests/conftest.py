import numpy as np
import pytest

from dail.latin import LatinSquare

# worked-example squares, symbols shifted to 0-based (G=0, B=1, R=2, W=3)
E = np.array([[1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2], [4, 1, 2, 3]]) - 1
F = np.array([[4, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 1], [3, 4, 1, 2]]) - 1
J = np.array([[3, 4, 1, 2], [4, 1, 2, 3], [1, 2, 3, 4], [2, 3, 4, 1]]) - 1
G, B, R, W = range(4)


@pytest.fixture
def efj():
    return LatinSquare(E), LatinSquare(F), LatinSquare(J)


_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)

import random

import pytest


def random_skew(rng, n, bound=2):
    B = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rng.randint(-bound, bound)
            B[i][j], B[j][i] = v, -v
    return B


@pytest.fixture
def rng():
    return random.Random(20240611)


# (number, line) pairs filled in by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)

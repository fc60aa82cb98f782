import random

import pytest

from condexp import make_finite_algebra

ACCEPTANCE_LINES = []


@pytest.fixture
def rng():
    return random.Random(20211)


@pytest.fixture
def ab():
    return make_finite_algebra(["a", "b"])


@pytest.fixture
def abc():
    return make_finite_algebra(["a", "b", "c"])


def small_algebras(max_atoms):
    for n in range(1, max_atoms + 1):
        yield make_finite_algebra([f"x{i}" for i in range(n)])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

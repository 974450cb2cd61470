import random

import pytest
from hypothesis import settings

from quiver_edmonds.fixtures import a_n, five_vertex, kronecker, unit

# reproducible property runs
settings.register_profile("repo", derandomize=True, deadline=None)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def A2():
    return a_n(2)


@pytest.fixture
def A3():
    return a_n(3)


@pytest.fixture
def K2():
    return kronecker(2)


@pytest.fixture
def Q5():
    return five_vertex()


@pytest.fixture
def E():
    return lambda i, j, n=2: unit(n, i, j)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])

import pytest

from corpus import sample9
from theta_miner.generators import clique, cycle_graph, path_graph, theta_graph


@pytest.fixture
def sample9_graph():
    return sample9()


@pytest.fixture
def k4():
    return clique(4)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def p9():
    return path_graph(9)


@pytest.fixture
def theta5():
    return theta_graph(5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

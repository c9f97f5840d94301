import itertools

import numpy as np
import pytest

from cliqueproc.process import Graph

ACCEPTANCE_LINES: list[str] = []


def random_graph(n, p, rng):
    edges = [(i, j) for i, j in itertools.combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

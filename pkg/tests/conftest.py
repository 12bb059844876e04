import itertools
import random

import pytest
from hypothesis import settings

from ordramsey.core import OrderedGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> OrderedGraph:
    return OrderedGraph(n, [e for e in itertools.combinations(range(1, n + 1), 2) if rng.random() < p])


@pytest.fixture
def rng():
    return random.Random(20240611)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)

import random
import sys
from itertools import combinations
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from slicescan import Snapshot  # noqa: E402


def two_cliques(size=4):
    edges = list(combinations(range(size), 2)) + list(combinations(range(size, 2 * size), 2))
    return Snapshot.from_edges(2 * size, edges)


def random_snapshot(rng: random.Random, n: int, p: float, min_edges=1) -> Snapshot:
    while True:
        edges = [e for e in combinations(range(n), 2) if rng.random() < p]
        if len(edges) >= min_edges:
            return Snapshot.from_edges(n, edges)


@pytest.fixture
def cliques8():
    return two_cliques(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

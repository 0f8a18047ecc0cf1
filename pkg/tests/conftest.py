import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tsubdiv import Tournament, paley, transitive  # noqa: E402


@pytest.fixture
def cycle3():
    # 0->1->2->0; the examples' 1->2->3->1 shifted down by one
    return Tournament.from_edges(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def t3():
    return transitive(3)


@pytest.fixture
def paley7():
    return paley(7)


def random_adjacency(rng: np.random.Generator, n: int) -> np.ndarray:
    upper = np.triu(rng.random((n, n)) < 0.5, k=1)
    lower = np.triu(~upper, k=1).T
    return upper | lower


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            for name, value in rep.user_properties:
                if name == "criterion":
                    number, detail = value
                    lines.append((number, "PASS" if outcome == "passed" else "FAIL", detail))
    if lines:
        terminalreporter.section("acceptance criteria")
        for number, verdict, detail in sorted(lines):
            terminalreporter.write_line(f"criterion {number:>2}: {verdict}  {detail}")

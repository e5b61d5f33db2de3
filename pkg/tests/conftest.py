import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from maxedgecol.colouring import Instance
from maxedgecol.generators import random_graph
from maxedgecol.reductions import CnfFormula


def small_corpus(count, seed, qs=(2, 3), max_edges=12, max_vertices=8):
    """Seeded random instances (graph, S, q) with at most ``max_edges`` edges."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, max_vertices)
        g = random_graph(n, max_edges, rng)
        s_set = frozenset(v for v in g.vertices if rng.random() < 0.3)
        out.append(Instance(g, s_set, rng.choice(qs)))
    return out


def random_formula(rng, n):
    """Random formula with 1-3 literals per clause and each variable in at most 3 clauses."""
    left = {x: 3 for x in range(1, n + 1)}
    clauses = []
    for _ in range(rng.randint(1, 3 * n)):
        avail = [x for x in left if left[x] > 0]
        if not avail:
            break
        vs = rng.sample(avail, rng.randint(1, min(3, len(avail))))
        for x in vs:
            left[x] -= 1
        clauses.append(tuple(x if rng.random() < 0.5 else -x for x in vs))
    return CnfFormula(n, tuple(clauses))


@pytest.fixture(scope="session")
def corpus200():
    return small_corpus(200, seed=2024)


@pytest.fixture(scope="session")
def corpus100_q2():
    return small_corpus(100, seed=7, qs=(2,))


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" in nodeid and rep.when == "call":
                name = nodeid.split("::")[-1][len("test_criterion_"):]
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"[{status}] criterion {name}")

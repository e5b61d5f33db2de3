"""Deterministic instance families for experiments and tests."""

from __future__ import annotations

import itertools
import random
from typing import List, Tuple

from .graph import Graph


def path(n: int) -> Graph:
    _check(n >= 1, "path needs at least one vertex")
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    _check(n >= 3, "cycle needs at least three vertices")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)])


def star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    _check(leaves >= 0, "star needs a non-negative leaf count")
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


def complete(n: int) -> Graph:
    _check(n >= 0, "complete graph needs a non-negative order")
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def grid(rows: int, cols: int) -> Graph:
    """rows x cols grid, vertex ``r * cols + c``; row edges before column edges."""
    _check(rows >= 1 and cols >= 1, "grid dimensions must be positive")
    edges = []
    for r in range(rows):
        for c in range(cols - 1):
            edges.append((r * cols + c, r * cols + c + 1))
    for r in range(rows - 1):
        for c in range(cols):
            edges.append((r * cols + c, (r + 1) * cols + c))
    return Graph.from_edges(rows * cols, edges)


def random_planar_sub(rows: int, cols: int, keep: float, seed: int = 0) -> Graph:
    """Grid with each edge kept independently with probability ``keep``."""
    _check(0.0 <= keep <= 1.0, "keep probability must lie in [0, 1]")
    rng = random.Random(seed)
    base = grid(rows, cols)
    return base.edge_subgraph(e for e in base.edges if rng.random() < keep)


def apex_grid(rows: int, cols: int, apexes: int = 1, density: float = 0.5, seed: int = 0) -> Tuple[Graph, List[int]]:
    """Grid plus ``apexes`` new vertices, each joined to a random vertex subset.

    Returns the graph and the apex ids (appended after the grid vertices).
    """
    _check(apexes >= 0, "apex count must be non-negative")
    _check(0.0 <= density <= 1.0, "density must lie in [0, 1]")
    rng = random.Random(seed)
    base = grid(rows, cols)
    n = len(base.vertices)
    edges = list(base.edges)
    apex_ids = list(range(n, n + apexes))
    for a in apex_ids:
        for v in range(n):
            if rng.random() < density:
                edges.append((v, a))
    return Graph.from_edges(n + apexes, edges), apex_ids


def random_graph(n: int, max_edges: int, rng: random.Random) -> Graph:
    """Uniform random simple graph on ``n`` vertices with 0..max_edges edges."""
    pairs = list(itertools.combinations(range(n), 2))
    m = rng.randint(0, min(max_edges, len(pairs)))
    return Graph.from_edges(n, rng.sample(pairs, m))


def _check(ok: bool, msg: str) -> None:
    if not ok:
        raise ValueError(msg)

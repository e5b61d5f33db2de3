"""Simple undirected graphs, layerings, maximal matchings and stratifications.

Graphs are immutable. Vertex ids are non-negative integers; they stay stable
under deletion, so a subgraph can be coloured and merged back into its host
without any relabelling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Tuple

Edge = Tuple[int, int]
Layering = Dict[int, int]
Matching = Tuple[Edge, ...]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    """Vertices and edges, both kept in insertion order.

    Edges are stored normalised as ``(min, max)``.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        vs = tuple(self.vertices)
        es = tuple(norm_edge(*e) for e in self.edges)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "edges", es)
        vset = set(vs)
        if len(vset) != len(vs):
            raise GraphError("duplicate vertex id")
        if any((not isinstance(v, int)) or v < 0 for v in vs):
            raise GraphError("vertex ids must be non-negative integers")
        seen = set()
        for u, v in es:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if u not in vset or v not in vset:
                raise GraphError(f"edge ({u}, {v}) has an undeclared endpoint")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        return cls(tuple(range(n)), tuple(edges))

    @cached_property
    def vertex_set(self) -> FrozenSet[int]:
        return frozenset(self.vertices)

    @cached_property
    def edge_set(self) -> FrozenSet[Edge]:
        return frozenset(self.edges)

    @cached_property
    def adjacency(self) -> Dict[int, Tuple[int, ...]]:
        adj: Dict[int, List[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return {v: tuple(ns) for v, ns in adj.items()}

    @cached_property
    def incident(self) -> Dict[int, Tuple[Edge, ...]]:
        inc: Dict[int, List[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            inc[e[0]].append(e)
            inc[e[1]].append(e)
        return {v: tuple(es) for v, es in inc.items()}

    def neighbours(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    @property
    def size(self) -> int:
        """|V| + |E|."""
        return len(self.vertices) + len(self.edges)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = set(keep)
        return Graph(
            tuple(v for v in self.vertices if v in keep),
            tuple(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def edge_subgraph(self, edges: Iterable[Edge]) -> "Graph":
        """Same vertex set, only the given edges (kept in host order)."""
        keep = {norm_edge(*e) for e in edges}
        return Graph(self.vertices, tuple(e for e in self.edges if e in keep))

    def __repr__(self):
        return f"Graph(n={len(self.vertices)}, m={len(self.edges)})"


def connected_components(g: Graph) -> List[FrozenSet[int]]:
    """Components ordered by their smallest vertex id."""
    seen = set()
    comps = []
    for root in sorted(g.vertices):
        if root in seen:
            continue
        seen.add(root)
        comp = [root]
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    queue.append(y)
        comps.append(frozenset(comp))
    return comps


def delete_vertex(g: Graph, v: int) -> Graph:
    if v not in g.vertex_set:
        raise GraphError(f"unknown vertex {v}")
    return Graph(
        tuple(x for x in g.vertices if x != v),
        tuple(e for e in g.edges if v not in e),
    )


def bfs_layering(g: Graph) -> Layering:
    """BFS distance from the lowest id of each component.

    Isolated vertices are spread over levels 0, 1, 2, ... in id order so that
    a layering move can split an edgeless graph.
    """
    level: Layering = {}
    isolated = 0
    for comp in connected_components(g):
        root = min(comp)
        if not g.adjacency[root]:
            level[root] = isolated
            isolated += 1
            continue
        level[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if y not in level:
                    level[y] = level[x] + 1
                    queue.append(y)
    return level


def is_layering(g: Graph, lam: Mapping[int, int]) -> bool:
    if set(lam) != set(g.vertices):
        return False
    return all(abs(lam[u] - lam[v]) <= 1 for u, v in g.edges)


def greedy_maximal_matching(g: Graph) -> Matching:
    """Scan edges in order, keeping each edge whose endpoints are both free."""
    matched = set()
    out = []
    for u, v in g.edges:
        if u not in matched and v not in matched:
            matched.add(u)
            matched.add(v)
            out.append((u, v))
    return tuple(out)


def is_matching(g: Graph, m: Iterable[Edge]) -> bool:
    used = set()
    for e in m:
        e = norm_edge(*e)
        if e not in g.edge_set or e[0] in used or e[1] in used:
            return False
        used.update(e)
    return True


def is_maximal_matching(g: Graph, m: Iterable[Edge]) -> bool:
    m = list(m)
    if not is_matching(g, m):
        return False
    covered = {x for e in m for x in e}
    return all(u in covered or v in covered for u, v in g.edges)


@dataclass(frozen=True)
class Stratification:
    residual_graph: Graph
    boundary: FrozenSet[int]
    removed_edges: Tuple[Edge, ...]
    parts: Tuple[FrozenSet[int], ...] = field(default=())


def stratify(g: Graph, lam: Mapping[int, int], r: int, m: int) -> Stratification:
    """Drop every edge joining a level = m to a level = m+1 (mod r).

    Remaining vertices are grouped into windows of r consecutive levels
    starting at levels = m+1 (mod r); no residual edge leaves its window.
    """
    if r < 2:
        raise ValueError(f"r must be at least 2, got {r}")
    if not 0 <= m <= r - 1:
        raise ValueError(f"m must lie in [0, {r - 1}], got {m}")
    cut = {m % r, (m + 1) % r}
    kept, removed = [], []
    for e in g.edges:
        a, b = lam[e[0]] % r, lam[e[1]] % r
        if a != b and {a, b} == cut:
            removed.append(e)
        else:
            kept.append(e)
    boundary = frozenset(x for e in removed for x in e)
    windows: Dict[int, List[int]] = {}
    for v in g.vertices:
        windows.setdefault((lam[v] - m - 1) // r, []).append(v)
    parts = tuple(frozenset(windows[k]) for k in sorted(windows))
    return Stratification(
        residual_graph=Graph(g.vertices, tuple(kept)),
        boundary=boundary,
        removed_edges=tuple(removed),
        parts=parts,
    )

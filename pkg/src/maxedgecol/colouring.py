"""Edge colourings and the predicates that judge them.

A colouring is a plain ``dict`` from normalised edge to a non-negative int.
Colour 0 is reserved: it is the glue colour that boundary vertices may carry
on top of their q-1 ordinary colours.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Set, Tuple

from .graph import Edge, Graph, GraphError, Matching, is_matching

EdgeColouring = Dict[Edge, int]


@dataclass(frozen=True)
class Instance:
    graph: Graph
    s_set: FrozenSet[int] = frozenset()
    q: int = 2

    def __post_init__(self):
        object.__setattr__(self, "s_set", frozenset(self.s_set))
        if self.q < 1:
            raise ValueError(f"q must be at least 1, got {self.q}")
        extra = self.s_set - self.graph.vertex_set
        if extra:
            raise ValueError(f"S contains unknown vertices {sorted(extra)}")


def incident_palette(g: Graph, f: Mapping[Edge, int], v: int) -> Set[int]:
    if v not in g.vertex_set:
        raise GraphError(f"unknown vertex {v}")
    return {f[e] for e in g.incident[v]}


def _check_domain(g: Graph, f: Mapping[Edge, int]) -> None:
    if set(f) != g.edge_set:
        missing = g.edge_set - set(f)
        extra = set(f) - g.edge_set
        raise ValueError(
            f"colouring domain mismatch: missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]}"
        )


def first_violation(
    g: Graph,
    f: Mapping[Edge, int],
    total_cap: Mapping[int, int],
    nonzero_cap: Optional[Mapping[int, int]] = None,
) -> Optional[Tuple[int, Set[int]]]:
    """Return ``(vertex, palette)`` for the first vertex over its budget."""
    _check_domain(g, f)
    for v in g.vertices:
        pal = incident_palette(g, f, v)
        if len(pal) > total_cap[v]:
            return v, pal
        if nonzero_cap is not None and len(pal - {0}) > nonzero_cap[v]:
            return v, pal
    return None


def _q_caps(inst: Instance):
    total = {v: inst.q for v in inst.graph.vertices}
    nonzero = {v: inst.q - 1 if v in inst.s_set else inst.q for v in inst.graph.vertices}
    return total, nonzero


def is_valid_q_colouring(inst: Instance, f: Mapping[Edge, int]) -> bool:
    total, _ = _q_caps(inst)
    return first_violation(inst.graph, f, total) is None


def is_composable(inst: Instance, f: Mapping[Edge, int]) -> bool:
    """Valid q-colouring with at most q-1 non-zero colours at each S vertex."""
    total, nonzero = _q_caps(inst)
    return first_violation(inst.graph, f, total, nonzero) is None


def composable_violation(inst: Instance, f: Mapping[Edge, int]):
    total, nonzero = _q_caps(inst)
    return first_violation(inst.graph, f, total, nonzero)


def is_valid_g_colouring(g: Graph, budgets: Mapping[int, int], f: Mapping[Edge, int]) -> bool:
    return first_violation(g, f, budgets) is None


def spread_nonzero(f: Mapping[Edge, int]) -> int:
    return len({c for c in f.values() if c != 0})


def spread_total(f: Mapping[Edge, int]) -> int:
    return len(set(f.values()))


def matching_colouring(g: Graph, m: Matching) -> EdgeColouring:
    """Colour the i-th matching edge with i (1-based), everything else with 0."""
    if not is_matching(g, m):
        raise ValueError("not a matching of the graph")
    f = {e: 0 for e in g.edges}
    for i, e in enumerate(m, start=1):
        f[tuple(sorted(e))] = i
    return f


def relabel_zero_free(f: Mapping[Edge, int]) -> EdgeColouring:
    if 0 not in f.values():
        return dict(f)
    fresh = max(f.values()) + 1
    return {e: (fresh if c == 0 else c) for e, c in f.items()}


def extend_with_zero(g: Graph, f: Mapping[Edge, int]) -> EdgeColouring:
    """Colour every edge of ``g`` missing from ``f`` with 0."""
    return {e: f.get(e, 0) for e in g.edges}


def merge_disjoint(parts: Iterable[Mapping[Edge, int]]) -> EdgeColouring:
    """Union colourings of edge-disjoint pieces, keeping non-zero colours apart.

    Each piece's non-zero colours are shifted past those already used so that
    the union uses exactly the sum of the pieces' non-zero counts.
    """
    out: EdgeColouring = {}
    offset = 0
    for f in parts:
        remap: Dict[int, int] = {}
        for e, c in f.items():
            if c == 0:
                out[e] = 0
                continue
            if c not in remap:
                offset += 1
                remap[c] = offset
            out[e] = remap[c]
    return out


def canonical(f: Mapping[Edge, int], order: Iterable[Edge]) -> EdgeColouring:
    """Renumber non-zero colours 1, 2, ... by first occurrence along ``order``."""
    remap: Dict[int, int] = {}
    out = {}
    for e in order:
        c = f[e]
        if c != 0 and c not in remap:
            remap[c] = len(remap) + 1
        out[e] = remap.get(c, 0)
    return out

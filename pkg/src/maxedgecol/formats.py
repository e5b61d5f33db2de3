"""Plain-text graph and colouring files.

Graph documents::

    c any comment; "c apex 9 10" declares apex vertices
    p edge <n> <m>
    e <u> <v>          (m lines, 0-indexed)
    s <v>              (optional, membership in S)
    g <v> <1|2>        (optional, per-vertex budget)

Colourings are one ``<u> <v> <colour>`` line per edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from .colouring import EdgeColouring
from .graph import Graph, GraphError, norm_edge


class FormatError(ValueError):
    pass


@dataclass
class GraphDoc:
    graph: Graph
    s_set: FrozenSet[int] = frozenset()
    budgets: Optional[Dict[int, int]] = None
    apex: Tuple[int, ...] = ()
    comments: List[str] = field(default_factory=list)


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(f"line {lineno}: expected an integer, got {tok!r}") from None


def parse_graph(text: str) -> GraphDoc:
    n = m = None
    edges = []
    seen = set()
    s_set = set()
    budgets: Dict[int, int] = {}
    apex: List[int] = []
    comments = []

    def vertex(tok, lineno):
        v = _int(tok, lineno)
        if n is None:
            raise FormatError(f"line {lineno}: vertex reference before the 'p edge' header")
        if not 0 <= v < n:
            raise FormatError(f"line {lineno}: vertex {v} outside 0..{n - 1}")
        return v

    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if not toks:
            continue
        kind = toks[0]
        if kind == "c":
            body = raw.strip()[1:].strip()
            comments.append(body)
            if len(toks) >= 2 and toks[1] == "apex":
                apex.extend(_int(t, lineno) for t in toks[2:])
            continue
        if kind == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: second header")
            if len(toks) != 4 or toks[1] != "edge":
                raise FormatError(f"line {lineno}: header must read 'p edge <n> <m>'")
            n, m = _int(toks[2], lineno), _int(toks[3], lineno)
            if n < 0 or m < 0:
                raise FormatError(f"line {lineno}: negative size")
        elif kind == "e":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: edge line must read 'e <u> <v>'")
            u, v = vertex(toks[1], lineno), vertex(toks[2], lineno)
            if u == v:
                raise FormatError(f"line {lineno}: loop at {u}")
            e = norm_edge(u, v)
            if e in seen:
                raise FormatError(f"line {lineno}: duplicate edge {e}")
            seen.add(e)
            edges.append(e)
        elif kind == "s":
            if len(toks) != 2:
                raise FormatError(f"line {lineno}: S line must read 's <v>'")
            s_set.add(vertex(toks[1], lineno))
        elif kind == "g":
            if len(toks) != 3:
                raise FormatError(f"line {lineno}: budget line must read 'g <v> <1|2>'")
            v, b = vertex(toks[1], lineno), _int(toks[2], lineno)
            if b not in (1, 2):
                raise FormatError(f"line {lineno}: budget must be 1 or 2, got {b}")
            budgets[v] = b
        else:
            raise FormatError(f"line {lineno}: unknown line type {kind!r}")

    if n is None:
        raise FormatError("missing 'p edge <n> <m>' header")
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    for a in apex:
        if not 0 <= a < n:
            raise FormatError(f"apex vertex {a} outside 0..{n - 1}")
    if budgets and len(budgets) != n:
        missing = sorted(set(range(n)) - set(budgets))
        raise FormatError(f"budgets missing for vertices {missing[:5]}")
    try:
        graph = Graph.from_edges(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from None
    return GraphDoc(graph, frozenset(s_set), budgets or None, tuple(apex), comments)


def format_graph(
    g: Graph,
    s_set=(),
    budgets: Optional[Mapping[int, int]] = None,
    comments=(),
    apex=(),
) -> str:
    """Inverse of :func:`parse_graph`. Vertex ids must be 0..n-1."""
    if list(g.vertices) != list(range(len(g.vertices))):
        raise ValueError("only graphs with vertex ids 0..n-1 can be written")
    lines = [f"c {c}" if c else "c" for c in comments]
    if apex:
        lines.append("c apex " + " ".join(str(a) for a in apex))
    lines.append(f"p edge {len(g.vertices)} {len(g.edges)}")
    lines += [f"e {u} {v}" for u, v in g.edges]
    lines += [f"s {v}" for v in sorted(s_set)]
    if budgets is not None:
        lines += [f"g {v} {budgets[v]}" for v in g.vertices]
    return "\n".join(lines) + "\n"


def parse_colouring(text: str, g: Optional[Graph] = None) -> EdgeColouring:
    """Read ``u v colour`` lines; with ``g`` also require an exact edge match."""
    f: EdgeColouring = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = raw.split()
        if not toks or toks[0] == "c":
            continue
        if len(toks) != 3:
            raise FormatError(f"line {lineno}: colouring line must read '<u> <v> <colour>'")
        u, v, c = (_int(t, lineno) for t in toks)
        if c < 0:
            raise FormatError(f"line {lineno}: negative colour")
        e = norm_edge(u, v)
        if e in f:
            raise FormatError(f"line {lineno}: edge {e} coloured twice")
        f[e] = c
    if g is not None:
        missing = [e for e in g.edges if e not in f]
        if missing:
            raise FormatError(f"colouring misses edge {missing[0]}")
        extra = sorted(set(f) - g.edge_set)
        if extra:
            raise FormatError(f"colouring has non-edge {extra[0]}")
    return f


def format_colouring(f: Mapping[Tuple[int, int], int]) -> str:
    return "".join(f"{u} {v} {c}\n" for (u, v), c in sorted(f.items()))

"""Exact solvers and matching bounds.

The exhaustive search walks the edges in a fixed order and gives each one
either the zero class, an already opened colour class, or a fresh class
(restricted-growth form, so no two branches differ by a renaming of colours).
Branches die as soon as some vertex exceeds its palette budget, when the class
count passes ``2q|M|``, or when an optimistic count of the colours still
obtainable cannot beat the incumbent.

Connected components are solved independently and summed; component results
are cached on a canonical relabelling, which makes the many near-identical
subproblems of the stratification and deletion experiments cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .colouring import (
    EdgeColouring,
    Instance,
    matching_colouring,
)
from .graph import Graph, Matching, connected_components, greedy_maximal_matching


class InstanceTooLarge(Exception):
    """The exhaustive search was asked to handle more edges than allowed."""


@dataclass(frozen=True)
class SolveLimits:
    max_edges_exhaustive: int = 18
    max_classes: Optional[int] = None

    def __post_init__(self):
        if self.max_edges_exhaustive < 0:
            raise ValueError("max_edges_exhaustive must be non-negative")


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: EdgeColouring
    optimal: bool


DEFAULT_LIMITS = SolveLimits()


def _search(
    n: int,
    edges: Sequence[Tuple[int, int]],
    total_cap: Sequence[int],
    nonzero_cap: Sequence[int],
    zero: bool,
    class_cap: int,
) -> Tuple[int, Tuple[int, ...]]:
    """Maximise the number of non-zero classes over edge assignments.

    With ``zero`` false every class is counted and class 0 is never used.
    Returns ``(best, assignment)`` with classes numbered from 1.
    """
    m = len(edges)
    remdeg = [[0] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = remdeg[i]
        row[:] = remdeg[i + 1]
        a, b = edges[i]
        row[a] += 1
        row[b] += 1

    pal: List[Dict[int, int]] = [dict() for _ in range(n)]
    tot = [0] * n
    nz = [0] * n
    assign = [0] * m
    best = [-1, ()]

    def can_take(v, c):
        if c in pal[v]:
            return True
        if tot[v] >= total_cap[v]:
            return False
        return c == 0 or nz[v] < nonzero_cap[v]

    def put(v, c):
        p = pal[v]
        k = p.get(c, 0)
        p[c] = k + 1
        if k == 0:
            tot[v] += 1
            if c:
                nz[v] += 1

    def take(v, c):
        p = pal[v]
        k = p[c]
        if k == 1:
            del p[c]
            tot[v] -= 1
            if c:
                nz[v] -= 1
        else:
            p[c] = k - 1

    # Every further class needs a free slot at both ends of one of its edges.
    def optimistic(i):
        row = remdeg[i]
        slots = 0
        for v in range(n):
            d = row[v]
            if d:
                free = min(total_cap[v] - tot[v], nonzero_cap[v] - nz[v])
                slots += free if free < d else d
        return min(m - i, slots // 2)

    ceiling = min(class_cap, optimistic(0))

    def rec(i, k):
        if i == m:
            if k > best[0]:
                best[0] = k
                best[1] = tuple(assign)
            return
        if k + min(class_cap - k, optimistic(i)) <= best[0]:
            return
        a, b = edges[i]
        if k < class_cap and can_take(a, -1) and can_take(b, -1):
            c = k + 1
            assign[i] = c
            put(a, c)
            put(b, c)
            rec(i + 1, c)
            take(a, c)
            take(b, c)
            if best[0] >= ceiling:
                return
        for c in range(k, 0, -1):
            if can_take(a, c) and can_take(b, c):
                assign[i] = c
                put(a, c)
                put(b, c)
                rec(i + 1, k)
                take(a, c)
                take(b, c)
                if best[0] >= ceiling:
                    return
        if zero and can_take(a, 0) and can_take(b, 0):
            assign[i] = 0
            put(a, 0)
            put(b, 0)
            rec(i + 1, k)
            take(a, 0)
            take(b, 0)

    rec(0, 0)
    return best[0], best[1]


_search_cached = lru_cache(maxsize=200_000)(
    lambda n, edges, total, nonzero, zero, cap: _search(n, edges, total, nonzero, zero, cap)
)


def _search_order(g: Graph, comp) -> List[int]:
    """BFS order from a maximum-degree vertex, so each vertex's edges are
    grouped early and budgets bite near the top of the search tree."""
    start = min(comp, key=lambda v: (-g.degree(v), v))
    order = [start]
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in sorted(g.adjacency[x], key=lambda v: (-g.degree(v), v)):
            if y not in seen:
                seen.add(y)
                order.append(y)
                queue.append(y)
    return order


def _solve_components(
    g: Graph,
    total_cap: Mapping[int, int],
    nonzero_cap: Mapping[int, int],
    zero: bool,
    class_cap_of,
) -> Tuple[int, EdgeColouring]:
    witness: EdgeColouring = {}
    offset = 0
    for comp in connected_components(g):
        order = _search_order(g, comp)
        if len(order) < 2:
            continue
        pos = {v: i for i, v in enumerate(order)}
        comp_edges = sorted(
            (e for v in comp for e in g.incident[v] if e[0] == v),
            key=lambda e: tuple(sorted((pos[e[0]], pos[e[1]]))),
        )
        local = tuple(tuple(sorted((pos[a], pos[b]))) for a, b in comp_edges)
        total = tuple(total_cap[v] for v in order)
        nonzero = tuple(nonzero_cap[v] for v in order)
        cap = class_cap_of(g.induced(comp))
        value, assign = _search_cached(len(order), local, total, nonzero, zero, cap)
        for e, c in zip(comp_edges, assign):
            witness[e] = c + offset if c else 0
        offset += value
    return offset, {e: witness[e] for e in g.edges}


def exact_q1(inst: Instance) -> SolveResult:
    """Components meeting S are all zero; every other component gets one colour."""
    if inst.q != 1:
        raise ValueError("exact_q1 requires q = 1")
    g = inst.graph
    f: EdgeColouring = {e: 0 for e in g.edges}
    colour = 0
    for comp in connected_components(g):
        if comp & inst.s_set:
            continue
        comp_edges = [e for e in g.edges if e[0] in comp]
        if not comp_edges:
            continue
        colour += 1
        for e in comp_edges:
            f[e] = colour
    return SolveResult(colour, f, True)


def exact_composable_spread(inst: Instance, limits: SolveLimits = DEFAULT_LIMITS) -> SolveResult:
    if inst.q == 1:
        return exact_q1(inst)
    g = inst.graph
    if len(g.edges) > limits.max_edges_exhaustive:
        raise InstanceTooLarge(
            f"{len(g.edges)} edges exceeds the exhaustive limit of {limits.max_edges_exhaustive}"
        )
    q = inst.q
    total = {v: q for v in g.vertices}
    nonzero = {v: q - 1 if v in inst.s_set else q for v in g.vertices}
    value, f = _solve_components(
        g, total, nonzero, True, lambda h: 2 * q * len(greedy_maximal_matching(h))
    )
    if limits.max_classes is not None and value > limits.max_classes:
        # dropping whole colour classes to 0 keeps the colouring composable
        f = {e: (c if c <= limits.max_classes else 0) for e, c in f.items()}
        return SolveResult(limits.max_classes, f, False)
    return SolveResult(value, f, True)


def bounded_solver(inst: Instance, s: int, limits: SolveLimits = DEFAULT_LIMITS) -> SolveResult:
    """Return a composable colouring with at least min(optimum, s) non-zero colours.

    A maximal matching of size at least s is coloured directly; otherwise its
    endpoints form a vertex cover of at most 2s-2 vertices and the instance is
    solved exactly.
    """
    if inst.q < 2:
        raise ValueError("bounded_solver requires q >= 2")
    if s < 1:
        raise ValueError("s must be at least 1")
    m = greedy_maximal_matching(inst.graph)
    if len(m) >= s:
        return SolveResult(len(m), matching_colouring(inst.graph, m), False)
    return exact_composable_spread(inst, limits)


def bounds(inst: Instance) -> Tuple[int, int, Matching]:
    """Lower and upper bounds ``|M|`` and ``2q|M|`` from a greedy maximal matching."""
    if inst.q < 2:
        raise ValueError("bounds require q >= 2")
    m = greedy_maximal_matching(inst.graph)
    return len(m), 2 * inst.q * len(m), m


def exact_g_spread(
    g: Graph, budgets: Mapping[int, int], limits: SolveLimits = DEFAULT_LIMITS
) -> Tuple[int, EdgeColouring]:
    """Maximum number of distinct colours with ``|palette(v)| <= budgets[v]``.

    Every colour counts here, so the witness simply numbers classes from 1.
    """
    if len(g.edges) > limits.max_edges_exhaustive:
        raise InstanceTooLarge(
            f"{len(g.edges)} edges exceeds the exhaustive limit of {limits.max_edges_exhaustive}"
        )
    for v in g.vertices:
        if budgets[v] < 1:
            raise ValueError(f"budget of vertex {v} must be positive")
    value, f = _solve_components(g, budgets, budgets, False, lambda h: len(h.edges))
    return value, f


def clear_cache() -> None:
    _search_cached.cache_clear()

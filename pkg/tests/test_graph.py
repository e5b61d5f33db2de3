import itertools

import pytest
from hypothesis import given, settings, strategies as st

from maxedgecol.generators import complete, cycle, grid, path, star
from maxedgecol.graph import (
    Graph,
    GraphError,
    bfs_layering,
    connected_components,
    delete_vertex,
    greedy_maximal_matching,
    is_layering,
    is_maximal_matching,
    stratify,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=14)) if pairs else []
    return Graph.from_edges(n, chosen)


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])


def test_edges_keep_insertion_order():
    g = Graph.from_edges(4, [(3, 2), (0, 1), (1, 3)])
    assert g.edges == ((2, 3), (0, 1), (1, 3))
    assert g.size == 7


@pytest.mark.parametrize(
    "g, levels",
    [
        (path(3), {0: 0, 1: 1, 2: 2}),
        (complete(3), {0: 0, 1: 1, 2: 1}),
        (Graph.from_edges(3, []), {0: 0, 1: 1, 2: 2}),
    ],
)
def test_bfs_layering_examples(g, levels):
    assert bfs_layering(g) == levels


def test_bfs_layering_restarts_per_component():
    g = Graph.from_edges(5, [(0, 1), (3, 4)])
    assert bfs_layering(g) == {0: 0, 1: 1, 2: 0, 3: 0, 4: 1}


@given(graphs())
def test_bfs_layering_is_a_layering(g):
    lam = bfs_layering(g)
    assert is_layering(g, lam)
    assert min(lam.values(), default=0) >= 0


def test_greedy_matching_examples():
    assert greedy_maximal_matching(path(4)) == ((0, 1), (2, 3))
    assert greedy_maximal_matching(complete(3)) == ((0, 1),)
    assert greedy_maximal_matching(Graph.from_edges(3, [])) == ()


@given(graphs())
def test_greedy_matching_is_maximal(g):
    m = greedy_maximal_matching(g)
    assert is_maximal_matching(g, m)
    covered = {x for e in m for x in e}
    assert all(u in covered or v in covered for u, v in g.edges)


def test_stratify_path6():
    g = path(6)
    st_ = stratify(g, bfs_layering(g), 3, 1)
    assert set(st_.removed_edges) == {(1, 2), (4, 5)}
    assert st_.boundary == {1, 2, 4, 5}
    assert st_.parts == (frozenset({0, 1}), frozenset({2, 3, 4}), frozenset({5}))


def test_stratify_triangle():
    g = complete(3)
    st_ = stratify(g, {0: 0, 1: 1, 2: 1}, 2, 0)
    assert set(st_.removed_edges) == {(0, 1), (0, 2)}
    assert st_.residual_graph.edges == ((1, 2),)
    assert st_.boundary == {0, 1, 2}


def test_stratify_flat_layering_removes_nothing():
    g = grid(2, 3)
    st_ = stratify(g, {v: 0 for v in g.vertices}, 2, 0)
    assert st_.removed_edges == ()
    assert st_.boundary == frozenset()


@pytest.mark.parametrize("r, m", [(1, 0), (3, 3), (3, -1)])
def test_stratify_rejects_bad_parameters(r, m):
    with pytest.raises(ValueError):
        stratify(path(3), {0: 0, 1: 1, 2: 2}, r, m)


@settings(max_examples=60)
@given(graphs(), st.integers(2, 5), st.data())
def test_stratify_invariants(g, r, data):
    m = data.draw(st.integers(0, r - 1))
    lam = bfs_layering(g)
    out = stratify(g, lam, r, m)
    residual = set(out.residual_graph.edges)
    removed = set(out.removed_edges)
    assert residual | removed == set(g.edges)
    assert not residual & removed
    assert out.boundary == {x for e in removed for x in e}
    assert sorted(v for p in out.parts for v in p) == sorted(g.vertices)
    part_of = {v: i for i, p in enumerate(out.parts) for v in p}
    for u, v in residual:
        assert part_of[u] == part_of[v]
    for p in out.parts:
        levels = [lam[v] for v in p]
        assert max(levels) - min(levels) < r


def test_connected_components():
    assert connected_components(Graph.from_edges(4, [(0, 1), (2, 3)])) == [{0, 1}, {2, 3}]
    assert len(connected_components(grid(3, 3))) == 1
    assert connected_components(Graph((), ())) == []


def test_delete_vertex():
    assert delete_vertex(complete(3), 0).edges == ((1, 2),)
    assert delete_vertex(star(3), 0).edges == ()
    g = Graph.from_edges(3, [(0, 1)])
    assert delete_vertex(g, 2).edges == g.edges
    assert delete_vertex(g, 2).vertices == (0, 1)
    with pytest.raises(GraphError):
        delete_vertex(g, 7)


def test_generators_sizes():
    assert len(grid(2, 2).edges) == 4
    assert star(3).edges == ((0, 1), (0, 2), (0, 3))
    assert len(cycle(5).edges) == 5
    assert len(complete(4).edges) == 6

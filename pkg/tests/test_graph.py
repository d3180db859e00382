import networkx as nx
import pytest
from hypothesis import given, settings

from ehfcover.corpus import butterfly_graph, cycle_graph, figure1_graph
from ehfcover.graph import (Graph, GraphError, Hole, InducedPath, bits, closed_neighborhood,
                            components_after_removal, is_flat_path, iter_flat_paths, iter_induced_paths,
                            lowest, to_mask)

from conftest import graphs


def test_mask_helpers():
    assert list(bits(0b101001)) == [0, 3, 5]
    assert to_mask([0, 3, 5]) == 0b101001
    assert lowest(0b101000) == 3


def test_graph_rejects_bad_edges():
    with pytest.raises(GraphError):
        Graph(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(3, [(0, 3)])


def test_graph_is_symmetric_and_hashable():
    g = Graph(4, [(0, 1), (1, 2)])
    assert g.has_edge(1, 0) and not g.has_edge(0, 2)
    assert g == Graph(4, [(2, 1), (1, 0)])
    assert hash(g) == hash(Graph(4, [(1, 2), (0, 1)]))
    assert g.degree(1) == 2


def test_induced_returns_mapping():
    g = cycle_graph(6)
    sub, keep = g.induced([1, 2, 3, 5])
    assert keep == (1, 2, 3, 5)
    assert sorted(sub.edges()) == [(0, 1), (1, 2)]


def test_closed_neighborhood_examples():
    c5 = cycle_graph(5)
    assert closed_neighborhood(c5, {0}) == {4, 0, 1}
    assert closed_neighborhood(c5, set()) == frozenset()
    f = figure1_graph()
    assert closed_neighborhood(f, {0}) == set(range(7))
    with pytest.raises(GraphError):
        closed_neighborhood(c5, {7})


def test_components_after_removal_examples():
    comps = components_after_removal(butterfly_graph(), {0})
    assert [len(c) for c in comps] == [2, 2]
    assert components_after_removal(cycle_graph(5), set()) == [frozenset(range(5))]
    f = figure1_graph()
    assert components_after_removal(f, closed_neighborhood(f, {0})) == [frozenset({7, 8, 9})]


def test_flat_path_examples():
    assert is_flat_path(cycle_graph(7), InducedPath((0, 1, 2)))
    assert not is_flat_path(figure1_graph(), InducedPath((1, 0, 3)))
    assert is_flat_path(figure1_graph(), InducedPath((5,)))
    with pytest.raises(GraphError):
        is_flat_path(cycle_graph(5), InducedPath((0, 2)))


def test_hole_validation():
    Hole((0, 1, 2, 3, 4)).validate(cycle_graph(5))
    with pytest.raises(GraphError):
        Hole((0, 1, 2)).validate(cycle_graph(3))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_components_partition(g):
    removed = {v for v in range(g.n) if v % 3 == 0}
    comps = components_after_removal(g, removed)
    union = set(removed)
    for c in comps:
        assert not union & c
        union |= c
    assert union == set(range(g.n))
    nxg = nx.Graph(list(g.edges()))
    nxg.add_nodes_from(range(g.n))
    nxg.remove_nodes_from(removed)
    assert sorted(map(sorted, comps)) == sorted(map(sorted, nx.connected_components(nxg)))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_induced_paths_match_brute_force(g):
    from itertools import permutations
    found = {p if p[0] <= p[-1] else p[::-1] for p in iter_induced_paths(g)}
    expected = set()
    for k in range(1, g.n + 1):
        for p in permutations(range(g.n), k):
            if p[0] > p[-1] or (k > 1 and p[0] == p[-1]):
                continue
            ok = all(g.has_edge(p[i], p[j]) == (j == i + 1) for i in range(k) for j in range(i + 1, k))
            if ok:
                expected.add(p)
    assert found == expected


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_flatness_is_reversal_invariant(g):
    for p in iter_induced_paths(g):
        assert is_flat_path(g, InducedPath(p)) == is_flat_path(g, InducedPath(p[::-1]))
    flats = {tuple(p) for p in iter_flat_paths(g)}
    for p in flats:
        assert all(g.degree(v) == 2 for v in p[1:-1])


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_closed_neighborhood_monotone(g):
    s = {v for v in range(g.n) if v % 2 == 0}
    t = s | {g.n - 1}
    assert closed_neighborhood(g, s) <= closed_neighborhood(g, t)

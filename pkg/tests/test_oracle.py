from itertools import product

import networkx as nx
import pytest
from hypothesis import given, settings

from ehfcover.corpus import clique_graph, cycle_graph, figure1_graph, path_graph, wheel_graph
from ehfcover.graph import Graph
from ehfcover.oracle import (MAX_FPE_N, MAX_ORACLE_N, OracleSizeError, brute_force_cover, brute_force_extend,
                             check_fpe, iter_precovers)

from conftest import graphs


def _chordal(g, verts):
    h = nx.Graph()
    h.add_nodes_from(verts)
    h.add_edges_from((u, v) for u, v in g.edges() if u in h and v in h)
    return nx.is_chordal(h)


def _naive_extend(g, path, w1, w2):
    """Reference: try every side assignment of the unplaced vertices."""
    rest = [v for v in range(g.n) if v not in set(w1) | set(w2)]
    for sides in product((1, 2), repeat=len(rest)):
        x1 = set(w1) | {v for v, s in zip(rest, sides) if s == 1}
        x2 = set(w2) | {v for v, s in zip(rest, sides) if s == 2}
        if _chordal(g, x1) and _chordal(g, x2):
            return x1, x2
    return None


def _is_cover(g, x1, x2):
    return set(x1) | set(x2) == set(range(g.n)) and _chordal(g, x1) and _chordal(g, x2)


def test_cover_examples():
    for g in (cycle_graph(6), cycle_graph(7), wheel_graph(6)):
        x1, x2 = brute_force_cover(g)
        assert _is_cover(g, x1, x2)
    assert brute_force_cover(clique_graph(3)) == (frozenset({0, 1, 2}), frozenset())
    assert brute_force_cover(path_graph(5))[1] == frozenset()


def test_sector_wheel_example_does_not_extend():
    f = figure1_graph()
    assert brute_force_extend(f, (0,), {0, 1, 3, 5}, {0, 2, 4, 6}) is None
    assert _naive_extend(f, (0,), {0, 1, 3, 5}, {0, 2, 4, 6}) is None
    assert brute_force_cover(f) is not None


def test_figure1_is_not_weakly_fpe():
    ok, wit = check_fpe(figure1_graph(), weak=True)
    assert not ok
    assert wit.path == (0,) and {wit.w1, wit.w2} == {frozenset({0, 1, 3, 5}), frozenset({0, 2, 4, 6})}


def test_extend_examples():
    c5 = cycle_graph(5)
    x1, x2 = brute_force_extend(c5, (0,), {4, 0, 1}, {0})
    assert x1 & x2 == {0} and _is_cover(c5, x1, x2)
    assert brute_force_extend(c5, (0,), {0, 1, 2, 3, 4}, {0}) is None   # W1 already holds a hole
    assert brute_force_extend(c5, (0,), {0, 1}, {0, 1}) is None         # W1 & W2 != P


def test_fpe_examples():
    assert check_fpe(cycle_graph(5)) == (True, None)
    assert check_fpe(clique_graph(4), weak=True) == (True, None)
    assert check_fpe(cycle_graph(7), weak=True)[0]


def test_iter_precovers_on_c5():
    got = {(w1, w2) for w1, w2 in iter_precovers(cycle_graph(5), (0,))}
    # N(0) = {1, 4}; all four splits keep both sides chordal
    assert got == {(0b10011, 0b00001), (0b00011, 0b10001), (0b10001, 0b00011), (0b00001, 0b10011)}


def test_size_limits():
    with pytest.raises(OracleSizeError):
        brute_force_cover(cycle_graph(MAX_ORACLE_N + 1))
    with pytest.raises(OracleSizeError):
        check_fpe(cycle_graph(MAX_FPE_N + 1))


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=1, max_n=7))
def test_cover_matches_naive_search(g):
    found = brute_force_cover(g)
    naive = _naive_extend(g, (), (), ())
    assert (found is None) == (naive is None)
    if found is not None:
        assert _is_cover(g, *found)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=7))
def test_extend_matches_naive_search(g):
    for v in range(g.n):
        for w1, w2 in iter_precovers(g, (v,)):
            a = {u for u in range(g.n) if w1 >> u & 1}
            b = {u for u in range(g.n) if w2 >> u & 1}
            found = brute_force_extend(g, (v,), a, b)
            assert (found is None) == (_naive_extend(g, (v,), a, b) is None)
            if found is not None:
                x1, x2 = found
                assert a <= x1 and b <= x2 and x1 & x2 == {v} and _is_cover(g, x1, x2)

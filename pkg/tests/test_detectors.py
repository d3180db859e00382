from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings

from ehfcover import detectors as det
from ehfcover.corpus import (build_bt, butterfly_graph, clique_graph, cycle_graph, figure1_graph,
                             gen_pyramid, named_graph, parse_tree_spec, two_join_example, wheel_graph)
from ehfcover.graph import Graph, GraphError, Hole, InducedPath, component_masks, is_clique_mask, to_mask

from conftest import graphs


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def _disconnects(g, cut):
    return len(component_masks(g, g.full & ~cut)) >= 2


# --------------------------------------------------------------------------
# independent brute-force references

def brute_star_cutset(g):
    if len(component_masks(g, g.full)) != 1:
        return False
    for v in range(g.n):
        nbrs = list(det.bits(g.adj[v]))
        for r in range(len(nbrs) + 1):
            for s in combinations(nbrs, r):
                if _disconnects(g, to_mask(s) | (1 << v)):
                    return True
    return False


def brute_clique_cutset(g):
    h = _nx(g)
    for clique in nx.enumerate_all_cliques(h):
        if _disconnects(g, to_mask(clique)):
            return True
    return False


def brute_two_join(g):
    n = g.n
    for labels in product(range(6), repeat=n):
        parts = [to_mask(v for v in range(n) if labels[v] == k) for k in range(6)]
        a1, c1, b1, a2, c2, b2 = parts
        if not (a1 and b1 and a2 and b2) or labels[0] > 2:
            continue
        ok = True
        for u in range(n):
            for v in range(u + 1, n):
                lu, lv = labels[u], labels[v]
                if (lu < 3) == (lv < 3):
                    continue
                want = {lu % 3, lv % 3} in ({0}, {2}) and lu % 3 == lv % 3
                if g.has_edge(u, v) != want:
                    ok = False
        if not ok:
            continue
        for a, c, b in ((a1, c1, b1), (a2, c2, b2)):
            m = det.marker_path(g, a, c, b)
            if m is None or len(m) == (a | b | c).bit_count():
                ok = False
        if ok:
            return True
    return False


# --------------------------------------------------------------------------
# chordality and holes

def test_chordal_examples():
    assert det.is_chordal(clique_graph(4)) == (True, None)
    ok, hole = det.is_chordal(cycle_graph(4))
    assert not ok and sorted(hole.verts) == [0, 1, 2, 3]
    ok, hole = det.is_chordal(figure1_graph())
    assert not ok and len(hole) >= 4
    hole.validate(figure1_graph())


def test_find_hole_examples():
    assert len(det.find_hole(cycle_graph(6), "even")) == 6
    assert det.find_hole(figure1_graph(), "even") is None
    assert det.find_hole(cycle_graph(5), "even") is None
    assert det.find_hole(cycle_graph(7), min_len=8) is None
    assert det.find_hole(cycle_graph(7), avoid={3}) is None
    with pytest.raises(ValueError):
        det.find_hole(cycle_graph(5), "weird")


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=9))
def test_chordality_agrees_with_networkx(g):
    assert det.is_chordal_mask(g, g.full) == nx.is_chordal(_nx(g))
    assert (det.find_hole(g) is None) == nx.is_chordal(_nx(g))


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=8))
def test_holes_match_networkx_chordless_cycles(g):
    ours = sorted(sorted(h.verts) for h in det.iter_holes(g))
    theirs = sorted(sorted(c) for c in nx.chordless_cycles(_nx(g)) if len(c) >= 4)
    assert ours == theirs
    for h in det.iter_holes(g):
        h.validate(g)


# --------------------------------------------------------------------------
# wheels

def test_wheel_examples():
    f = figure1_graph()
    w = det.find_wheel(f, "sector")
    assert w is not None and w.kinds().sector
    w.validate(f)
    # the figure's twin wheel: H = y3-x-y5-z3-z2, centre y4
    h = Hole((3, 0, 5, 9, 8))
    tw = det.Wheel(h, 4, frozenset({3, 0, 8}))
    tw.validate(f)
    assert tw.kinds().twin and tw.kinds().sector
    u = det.find_wheel(wheel_graph(5), "universal")
    assert u is not None and u.center == 5
    assert det.find_wheel(cycle_graph(7)) is None


@pytest.mark.parametrize("k, spokes, kinds", [
    (6, {0, 1, 2, 3, 4, 5}, {"universal", "sector", "proper", "even"}),
    (7, {0, 1, 2}, {"twin", "sector"}),
    (7, {0, 1, 4}, {"short_pyramid"}),
    (7, {0, 2, 4}, {"proper"}),
    (8, {0, 2, 4, 6}, {"proper", "even"}),
    (6, {0, 1, 2, 3}, {"sector", "proper", "even"}),
])
def test_wheel_classification(k, spokes, kinds):
    got = det.classify_wheel(tuple(range(k)), frozenset(spokes))
    flags = {name for name in ("universal", "sector", "twin", "short_pyramid", "proper", "even")
             if getattr(got, name)}
    assert flags == kinds


def test_sectors_cover_the_hole():
    w = det.Wheel(Hole(tuple(range(7))), 7, frozenset({0, 2, 4}))
    secs = w.sectors()
    assert [s.verts for s in secs] == [(0, 1, 2), (2, 3, 4), (4, 5, 6, 0)]


# --------------------------------------------------------------------------
# cutsets

def test_cutset_examples():
    c = det.find_cutset(butterfly_graph(), "star")
    assert c.verts == {0} and c.centers == (0,)
    two_k4 = Graph(5, [(u, v) for u in range(4) for v in range(u + 1, 4)] +
                   [(1, 4), (2, 4), (3, 4)])
    q = det.find_cutset(two_k4, "clique")
    assert q.verts == {1, 2, 3}
    assert det.find_cutset(cycle_graph(6), "star") is None
    assert det.find_cutset(cycle_graph(6), "double_star") is None
    assert det.find_cutset(Graph(4, [(0, 1), (1, 2), (2, 3)]), "double_star").centers == (1, 2)
    assert det.find_cutset(wheel_graph(6), "full_star") is None


def test_figure1_has_a_star_cutset():
    # y2 hangs off {y1, x, z1}, all inside N[y1]
    f = figure1_graph()
    c = det.find_cutset(f, "star")
    assert c is not None
    c.validate(f)
    assert det.find_cutset(f, "star", centers=(1,)) is not None
    assert brute_star_cutset(f)


@settings(max_examples=60, deadline=None)
@given(graphs(min_n=2, max_n=8))
def test_cutset_searches_are_complete(g):
    if len(component_masks(g, g.full)) != 1:
        return
    assert det.has_star_cutset(g) == brute_star_cutset(g)
    assert (det.find_clique_cutset_mask(g, g.full) is not None) == brute_clique_cutset(g)
    for kind in det.CUTSET_KINDS:
        c = det.find_cutset(g, kind)
        if c is not None:
            c.validate(g)


def test_cutset_validation_rejects_non_cutsets():
    with pytest.raises(GraphError):
        det.Cutset("star", frozenset({0}), (0,)).validate(cycle_graph(5))


# --------------------------------------------------------------------------
# 2-joins

def test_two_join_example_is_found():
    g = two_join_example()
    want = det.TwoJoin(a1=to_mask([0]), c1=to_mask([1, 3]), b1=to_mask([2]), a2=to_mask([4]),
                       c2=to_mask([6]), b2=to_mask([5]), m1=(0, 1, 2), m2=(4, 5))
    want.validate(g)
    found = list(det.iter_two_joins(g))
    assert want in found
    tj = det.find_two_join(g)
    tj.validate(g)


def test_two_join_negative_examples():
    assert det.find_two_join(cycle_graph(7)) is None
    assert det.find_two_join(clique_graph(5)) is None


@settings(max_examples=25, deadline=None)
@given(graphs(min_n=4, max_n=6))
def test_two_join_search_is_complete(g):
    assert (det.find_two_join(g) is not None) == brute_two_join(g)


def test_two_join_blocks():
    g = named_graph("twojoin9")
    for tj in det.iter_two_joins(g):
        tj.validate(g)
        assert tj.swapped().swapped() == tj
        for i in (1, 2):
            assert tj.block(i).bit_count() < g.n
            assert not det.has_star_cutset(g, tj.block(i))


# --------------------------------------------------------------------------
# basic graphs, pyramids, nearly simplicial vertices

def test_recognize_basic_round_trip():
    t = parse_tree_spec("0-1,1-2,2-3,1-4")
    bt = build_bt(t)
    r = det.recognize_basic(bt.graph)
    assert r is not None
    r.validate(bt.graph)
    assert det.recognize_basic(cycle_graph(6)) is None
    assert det.recognize_basic(clique_graph(5)) is None


def test_recognize_basic_all_small_trees():
    from ehfcover.corpus import enumerate_trees
    for n in range(4, 9):
        for t in enumerate_trees(n):
            if t.is_nontrivial:
                g = build_bt(t).graph
                r = det.recognize_basic(g)
                assert r is not None, t.edges
                r.validate(g)


def test_pyramid_examples():
    g = gen_pyramid(1, 3, 3)
    w = det.is_pyramid(g)
    assert w is not None and w.apex == 0
    plus = Graph(g.n + 1, list(g.edges()))
    assert det.is_pyramid(plus) is None
    assert det.is_pyramid(clique_graph(4)) is None
    assert det.is_pyramid(gen_pyramid(2, 2, 3)) is not None


def test_nearly_simplicial_examples():
    bt = build_bt(parse_tree_spec("0-1,1-2,2-3,1-4"))
    g = bt.graph
    e01 = next(v for v in range(g.n) if g.label(v) == "e01")
    assert e01 in det.nearly_simplicial_vertices(g)
    claw = Graph(4, [(0, 1), (0, 2), (0, 3)])
    assert 0 not in det.nearly_simplicial_vertices(claw)
    assert {1, 2, 3} <= det.nearly_simplicial_vertices(claw)


# --------------------------------------------------------------------------
# decomposition and proper wheels

def test_decompose_examples():
    assert det.decompose(clique_graph(5)).kind == "clique"
    assert det.decompose(cycle_graph(7)).kind == "hole"
    assert det.decompose(gen_pyramid(1, 3, 3)).kind == "pyramid"
    assert det.decompose(build_bt(parse_tree_spec("0-1,1-2,2-3,1-4")).graph).kind == "basic"
    assert det.decompose(butterfly_graph()).kind == "clique_cutset"
    # this graph is basic and also has 2-joins; basic is probed first
    assert det.decompose(named_graph("twojoin9")).kind == "basic"
    assert det.find_two_join(named_graph("twojoin9")) is not None


def test_decompose_raises_when_nothing_applies():
    # the triangular prism (it has even holes, so this is no counterexample)
    prism = Graph(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)])
    with pytest.raises(det.NoCaseApplies):
        det.decompose(prism)
    assert det.find_hole(prism, "even") is not None


def test_proper_wheel_cutset(in_class, corpus):
    found = 0
    for s, g in corpus:
        if g.n < 8 or det.find_hole(g, "even") is not None:
            continue
        for w in det.iter_wheels(g, kind="proper"):
            if w.kinds().universal:
                continue
            for sec in w.sectors():
                if sec.length > 1:
                    wit = det.proper_wheel_cutset(g, w, sec)
                    wit.validate(g)
                    assert wit.separates
                    found += 1
    assert found >= 1


def test_proper_wheel_cutset_rejects_bad_input():
    f = figure1_graph()
    twin = det.Wheel(Hole((3, 0, 5, 9, 8)), 4, frozenset({3, 0, 8}))
    with pytest.raises(ValueError):
        det.proper_wheel_cutset(f, twin, InducedPath((8, 3)))
    w6 = wheel_graph(6)
    uni = det.find_wheel(w6, "universal")
    with pytest.raises(ValueError):
        det.proper_wheel_cutset(w6, uni, InducedPath((0, 1)))

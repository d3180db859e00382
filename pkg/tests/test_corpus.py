import io
import json

import networkx as nx
import pytest
from hypothesis import given, settings

from ehfcover import detectors as det
from ehfcover.corpus import (NAMED, CorpusRecord, Graph6Error, Tree, build_bt, clique_graph, cycle_graph,
                             enumerate_trees, gen_pyramid, load_corpus, named_graph, parse_graph6,
                             parse_tree_spec, to_dot, tree_canonical_form, write_graph6, write_ndjson)
from ehfcover.graph import GraphError

from conftest import graphs


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_graph6_small_examples():
    k4 = parse_graph6("C~")
    assert k4.n == 4 and k4.num_edges() == 6
    assert parse_graph6("@").n == 1
    c5 = parse_graph6("Dhc")
    assert all(c5.degree(v) == 2 for v in range(5))
    assert det.is_hole_graph(c5, c5.full) is not None


@pytest.mark.parametrize("bad", ["", "C~~", "C!", "Bx", "~?"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(Graph6Error):
        parse_graph6(bad)


@settings(max_examples=100, deadline=None)
@given(graphs(min_n=0, max_n=12))
def test_graph6_matches_networkx(g):
    s = write_graph6(g)
    assert s == nx.to_graph6_bytes(_nx(g), header=False).decode().strip()
    assert parse_graph6(s) == g


def test_large_size_header_roundtrip():
    g = cycle_graph(70)
    s = write_graph6(g)
    assert s[0] == "~" and parse_graph6(s) == g


def test_corpus_counts(corpus):
    # connected graphs on 1..8 vertices (OEIS A001349)
    by_n = {}
    for _, g in corpus:
        by_n[g.n] = by_n.get(g.n, 0) + 1
    assert by_n == {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
    assert len(load_corpus(max_n=5)) == 31


def test_bt_examples():
    path4 = build_bt(parse_tree_spec("0-1,1-2,2-3"))
    assert det.is_hole_graph(path4.graph, path4.graph.full) is not None
    assert path4.graph.n == 5 and not path4.nontrivial
    # a star's edges and x2 form a clique; x1 (no leaves on its side) hangs off x2
    star = build_bt(parse_tree_spec("0-1,0-2,0-3"))
    sg = star.graph
    assert det.is_clique_mask(sg, sg.full & ~(1 << star.x1))
    assert sg.degree(star.x1) == 1 and det.find_hole(sg) is None
    # t1..t4 path plus t5 on t2, written with ids 1..5 and an isolated-free relabel
    bt = build_bt(parse_tree_spec("0-1,1-2,2-3,1-4"))
    g = bt.graph
    names = {g.label(v): v for v in range(g.n)}
    expected = {("e01", "e12"), ("e01", "e14"), ("e12", "e14"), ("e12", "e23"),
                ("x1", "e01"), ("x1", "e14"), ("x2", "e23"), ("x1", "x2")}
    got = {tuple(sorted((g.label(u), g.label(v)))) for u, v in g.edges()}
    assert got == {tuple(sorted(e)) for e in expected}
    hole = [names[k] for k in ("x1", "e01", "e12", "e23", "x2")]
    det.Hole(tuple(hole)).validate(g)
    assert bt.nontrivial


def test_bt_vertex_count_for_all_trees():
    for n in range(2, 9):
        for t in enumerate_trees(n):
            assert build_bt(t).graph.n == n + 1


def test_tree_validation():
    with pytest.raises(GraphError):
        Tree(4, ((0, 1), (1, 2)))
    with pytest.raises(GraphError):
        Tree(4, ((0, 1), (1, 2), (2, 0)))
    t = parse_tree_spec("0-1,1-2,1-3")
    assert t.leaves == {0, 2, 3} and t.has_sibling_leaves()
    assert t.pendant_edge(0) == (0, 1)


def test_tree_counts_match_networkx():
    # unlabeled trees (OEIS A000055)
    assert [sum(1 for _ in enumerate_trees(n)) for n in range(1, 11)] == [1, 1, 1, 2, 3, 6, 11, 23, 47, 106]
    for n in range(1, 9):
        ours = {tree_canonical_form(t.n, t.edges) for t in enumerate_trees(n)}
        theirs = {tree_canonical_form(n, list(t.edges())) for t in nx.nonisomorphic_trees(n)} if n > 1 else ours
        assert ours == theirs


def test_pyramid_generator():
    g = gen_pyramid(1, 3, 3)
    assert g.n == 8 and g.num_edges() == 10
    assert det.find_hole(g, "even") is None
    assert det.find_hole(gen_pyramid(1, 2, 2), "even") is not None
    with pytest.raises(GraphError):
        gen_pyramid(1, 1, 4)


def test_named_registry():
    f = named_graph("figure1")
    assert (f.n, f.num_edges()) == (10, 18)
    assert f.label(0) == "x" and f.label(9) == "z3"
    assert named_graph("cycle(5)") == cycle_graph(5)
    assert named_graph("clique(4)") == clique_graph(4)
    assert named_graph("twojoin7").n == 7
    assert named_graph("twojoin9").n == 9
    for key in NAMED:
        arg = "(5)" if key in ("cycle", "clique", "path", "wheel") else ""
        named_graph(key + arg)
    with pytest.raises(KeyError):
        named_graph("nonesuch")
    with pytest.raises(KeyError):
        named_graph("cycle")


def test_corpus_record_roundtrip():
    flags = dict.fromkeys(("even_hole_free", "sector_wheel_free", "chordal", "has_star_cutset",
                           "has_clique_cutset", "has_two_join", "is_basic", "is_pyramid"), False)
    rec = CorpusRecord("C~", 4, flags, "covered", {"cover": {"steps": {"covered": 1}}})
    line = rec.to_json()
    assert CorpusRecord.from_json(line) == rec
    buf = io.StringIO()
    write_ndjson([rec, {"b": 1, "a": 2}], buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == line and json.loads(lines[1]) == {"a": 2, "b": 1}
    with pytest.raises(ValueError):
        CorpusRecord("C~", 4, flags, "bogus")


def test_dot_export():
    text = to_dot(cycle_graph(4), highlight={"red": [0]})
    assert text.startswith("graph G {") and "0 -- 1;" in text and 'fillcolor="red"' in text

import json
import random

import pytest

from ehfcover import audits as au
from ehfcover import detectors as det
from ehfcover.corpus import (CorpusRecord, cycle_graph, figure1_graph, load_corpus, named_graph, wheel_graph,
                             write_graph6)
from ehfcover.engine import ChordalCover
from ehfcover.plotting import write_sweep_plots

SMALL = [s for s, _ in load_corpus(max_n=6)]


def test_analyse_in_class_graph():
    rec = au.analyse_graph(write_graph6(cycle_graph(7)), au.SweepOptions(fpe_max_n=8))
    assert rec.cover_status == "covered"
    assert rec.audits["cover"]["verified"]
    assert rec.audits["oracle"]["checked"] == 1 and not rec.audits["oracle"]["violations"]
    assert rec.audits["weak_fpe"]["checked"] == 1
    assert rec.audits["order"]["checked"] > 0
    assert not au.record_problems(rec)


def test_analyse_out_of_class_graphs():
    rec = au.analyse_graph(write_graph6(cycle_graph(6)))
    assert rec.cover_status == "out_of_class" and not rec.flags["even_hole_free"]
    assert "even_wheel" not in rec.audits
    rec = au.analyse_graph(write_graph6(figure1_graph()))
    assert rec.cover_status == "out_of_class"
    assert rec.flags["even_hole_free"] and not rec.flags["sector_wheel_free"]
    assert rec.audits["even_wheel"]["checked"] > 0
    assert au.PROBE not in rec.audits  # n = 10 is above the default probe bound


def test_disconnected_in_class_graph_is_a_failure():
    rec = au.analyse_graph("A?")  # two isolated vertices
    assert rec.cover_status == "failed"


def test_audits_flag_planted_problems():
    even = au.audit_even_wheel(wheel_graph(4))
    assert even["checked"] and even["violations"]
    c7 = cycle_graph(7)
    bad = au.audit_oracle(c7, None)
    assert "engine failed where a cover exists" in bad["violations"]
    rec = CorpusRecord("F?", 7, {}, "fallback_used", {"order": {"checked": 1, "violations": ["x"]}})
    assert au.record_problems(rec) == ["cover fallback_used", "order: 1 violation(s)"]


def test_two_join_audits_on_fixture():
    g = named_graph("twojoin9")
    joins = list(det.iter_two_joins(g))
    assert joins
    a = au.audit_two_join_bounds(g, joins)
    assert a["checked"] > 0 and not a["violations"]
    b = au.audit_block_star(g, joins)
    assert b["checked"] == 2 * len(joins) and not b["violations"]


def test_sibling_leaves():
    a = au.audit_sibling_leaves(8)
    assert a["checked"] > 0 and not a["violations"]


def test_order_audit_is_seeded():
    g = cycle_graph(7)
    one = au.audit_order(g, random.Random("s"), 5)
    two = au.audit_order(g, random.Random("s"), 5)
    assert one == two and not one["violations"]


def test_sweep_is_deterministic_across_jobs():
    opts = au.SweepOptions(fpe_max_n=6, orders=4)
    serial = au.run_sweep(reversed(SMALL), opts, jobs=1)
    parallel = au.run_sweep(SMALL, opts, jobs=2)
    assert [r.to_json() for r in serial] == [r.to_json() for r in parallel]
    assert [r.graph6 for r in serial] == sorted(SMALL)


def test_summary_and_plots(tmp_path):
    records = au.run_sweep(SMALL, au.SweepOptions(fpe_max_n=6))
    summary = au.summarise(records)
    assert summary["graphs"] == len(SMALL)
    assert summary["cover_status"]["failed"] == 0 and summary["cover_status"]["fallback_used"] == 0
    assert summary["failures"] == [] and summary["flagged"] == []
    assert set(summary["audits"]) == set(au.BLOCKING_AUDITS) | {au.PROBE}
    json.dumps(summary)
    paths = write_sweep_plots(records, summary, tmp_path / "fig")
    assert all(p.exists() and p.stat().st_size > 0 for p in paths)

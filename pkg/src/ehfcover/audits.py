"""Per-graph analysis and corpus sweeps.

Each graph yields one :class:`CorpusRecord`: detector flags, the outcome
of the cover engine, and a set of structural audits.  An audit entry has
the shape ``{"checked": n, "violations": [...]}``; any violation in a
blocking audit makes the sweep fail.  The conjecture probe is reported
under ``"flagged"`` instead and never blocks.
"""

from __future__ import annotations

import logging
import random
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Iterable

from . import detectors as det
from .corpus import CorpusRecord, build_bt, enumerate_trees, parse_graph6
from .engine import (ChordalCover, ClassViolation, CoverFailure, PrecoverError, chordal_cover,
                     complete_precover_mask, verify_cover)
from .graph import (Graph, bits, closed_nbr_mask, component_masks, is_induced_path_mask,
                    iter_flat_paths, iter_induced_paths, to_mask)
from .oracle import MAX_ORACLE_N, brute_force_cover, brute_force_extend_mask, check_fpe

log = logging.getLogger(__name__)

BLOCKING_AUDITS = ("even_wheel", "decompose", "two_join_bounds", "block_star", "proper_wheel_cutset",
                   "short_pyramid", "clique_paths", "oracle", "weak_fpe", "order")
PROBE = "conjecture_probe"


@dataclass(frozen=True)
class SweepOptions:
    oracle: bool = True
    fpe_max_n: int = 0
    order_max_n: int = 7
    orders: int = 10
    seed: int = 0
    probe_max_n: int = 8


def _audit() -> dict:
    return {"checked": 0, "violations": []}


# --------------------------------------------------------------------------
# individual audits

def audit_even_wheel(g: Graph) -> dict:
    a = _audit()
    for w in det.iter_wheels(g):
        a["checked"] += 1
        if w.kinds().even:
            a["violations"].append({"hole": list(w.hole.verts), "center": w.center})
    return a


def audit_decompose(g: Graph) -> dict:
    a = _audit()
    a["checked"] = 1
    try:
        out = det.decompose(g)
        a["outcome"] = out.kind
    except det.NoCaseApplies:
        a["violations"].append("no decomposition outcome applies")
    return a


def _crossing_ok(q: int, x1: int, x2: int) -> bool:
    return not (q & x1 and q & x2) or (q & (x1 | x2)).bit_count() <= 3


def audit_two_join_bounds(g: Graph, joins: list[det.TwoJoin]) -> dict:
    """Holes and induced paths meet A1 + A2 (and B1 + B2) in at most three
    vertices when they meet both sides; flat paths then meet them in an edge."""
    a = _audit()
    holes = [h.mask for h in det.iter_holes(g)]
    paths = [to_mask(p) for p in iter_induced_paths(g)]
    flats = [p for p in iter_flat_paths(g) if len(p) >= 2]
    for tj in joins:
        for x1, x2, tag in ((tj.a1, tj.a2, "A"), (tj.b1, tj.b2, "B")):
            for q in holes + paths:
                a["checked"] += 1
                if not _crossing_ok(q, x1, x2):
                    a["violations"].append({"side": tag, "q": sorted(bits(q)), "join": tj.as_sets()})
            for p in flats:
                m = to_mask(p)
                if m & x1 and m & x2:
                    a["checked"] += 1
                    meet = m & (x1 | x2)
                    u, v = (list(bits(meet)) + [-1, -1])[:2]
                    is_edge = meet.bit_count() == 2 and g.has_edge(u, v)
                    if not is_edge:
                        a["violations"].append({"side": tag, "flat": list(p), "join": tj.as_sets()})
    return a


def audit_block_star(g: Graph, joins: list[det.TwoJoin]) -> dict:
    a = _audit()
    for tj in joins:
        for i in (1, 2):
            a["checked"] += 1
            block = tj.block(i)
            if det.has_star_cutset(g, block):
                a["violations"].append({"block": i, "verts": sorted(bits(block)), "join": tj.as_sets()})
    return a


def audit_proper_wheel_cutset(g: Graph) -> dict:
    a = _audit()
    for w in det.iter_wheels(g, kind="proper"):
        if w.kinds().universal:
            continue
        for s in w.sectors():
            if s.length <= 1:
                continue
            a["checked"] += 1
            try:
                det.proper_wheel_cutset(g, w, s)
            except det.TheoremAuditError as exc:
                a["violations"].append({"hole": list(w.hole.verts), "center": w.center,
                                        "sector": list(s.verts), "error": str(exc)})
    return a


def audit_short_pyramid(g: Graph) -> dict:
    """Without twin wheels, a wheel centre that is not a star-cutset centre
    must carry a short pyramid."""
    a = _audit()
    if det.find_wheel(g, "twin") is not None:
        return a
    centers: dict[int, bool] = {}
    for w in det.iter_wheels(g):
        c = w.center
        if c not in centers:
            centers[c] = det.star_cutset_center(g, g.full, c) is not None
        if centers[c]:
            continue
        a["checked"] += 1
        if not w.kinds().short_pyramid:
            a["violations"].append({"hole": list(w.hole.verts), "center": c})
    return a


def audit_clique_paths(g: Graph, q: int) -> dict:
    """Flat paths split by a clique cutset stay paths (or vanish) on each side."""
    a = _audit()
    flats = [to_mask(p) for p in iter_flat_paths(g)]
    for comp in component_masks(g, g.full & ~q):
        for piece in (comp | q, g.full & ~comp):
            for p in flats:
                part = p & piece
                if not part:
                    continue
                a["checked"] += 1
                if not _is_path_mask(g, part):
                    a["violations"].append({"cutset": sorted(bits(q)), "path": sorted(bits(p)),
                                            "piece": sorted(bits(piece))})
    return a


def _is_path_mask(g: Graph, mask: int) -> bool:
    verts = list(bits(mask))
    if len(verts) <= 2:
        return len(verts) == 1 or g.has_edge(*verts)
    degs = sorted((g.adj[v] & mask).bit_count() for v in verts)
    if degs[:2] != [1, 1] or degs[-1] > 2:
        return False
    return len(component_masks(g, mask)) == 1


def audit_oracle(g: Graph, cover: ChordalCover | None) -> dict:
    """Engine and exhaustive search must agree on existence and both verify."""
    a = _audit()
    if g.n > MAX_ORACLE_N:
        return a
    a["checked"] = 1
    nv = closed_nbr_mask(g, 1)
    if brute_force_extend_mask(g, g.full, 1, nv, 1) is None:
        a["violations"].append("oracle finds no extension of the starting precover")
    found = brute_force_cover(g)
    if found is None:
        if cover is not None:
            a["violations"].append("engine produced a cover the oracle refutes")
    elif not verify_cover(g, ChordalCover(*found))[0]:
        a["violations"].append("oracle cover does not verify")
    if cover is None and found is not None:
        a["violations"].append("engine failed where a cover exists")
    return a


def audit_weak_fpe(g: Graph) -> dict:
    a = _audit()
    a["checked"] = 1
    ok, wit = check_fpe(g, weak=True)
    if not ok:
        a["violations"].append({"path": list(wit.path), "w1": sorted(wit.w1), "w2": sorted(wit.w2)})
    return a


def precover_seeds(g: Graph, path: tuple[int, ...]) -> list[tuple[int, int]]:
    """Seeds for completion: ``P`` plus each chordal split of the common
    neighbours of the two ends."""
    p = to_mask(path)
    common = list(bits(g.adj[path[0]] & g.adj[path[-1]] & ~p))
    out = []
    for r in range(1 << len(common)):
        s1 = p | to_mask(v for i, v in enumerate(common) if r >> i & 1)
        s2 = p | to_mask(v for i, v in enumerate(common) if not r >> i & 1)
        if det.is_chordal_mask(g, s1) and det.is_chordal_mask(g, s2):
            out.append((s1, s2))
    return out


def audit_order(g: Graph, rng: random.Random, orders: int) -> dict:
    """Randomised processing orders of the precover completion.

    Every output must be a chordal partition of ``N[P]`` meeting in ``P``;
    instances that never hit a deferral cycle must agree exactly.
    """
    a = _audit()
    a["cycle_free"] = 0
    for path in iter_flat_paths(g):
        if len(path) < 2:
            continue
        p = to_mask(path)
        nbhd = closed_nbr_mask(g, p)
        for s1, s2 in precover_seeds(g, path):
            todo = sorted(bits(nbhd & ~(s1 | s2)))
            outputs = set()
            ties = False
            for _ in range(orders):
                order = todo[:]
                rng.shuffle(order)
                breaks: list[int] = []
                a["checked"] += 1
                try:
                    w1, w2 = complete_precover_mask(g, g.full, path, s1, s2, order, breaks)
                except (PrecoverError, ClassViolation) as exc:
                    a["violations"].append({"path": list(path), "order": order, "error": str(exc)})
                    continue
                ties |= bool(breaks)
                outputs.add((w1, w2))
                if w1 & w2 != p or w1 | w2 != nbhd or not (det.is_chordal_mask(g, w1)
                                                           and det.is_chordal_mask(g, w2)):
                    a["violations"].append({"path": list(path), "order": order,
                                            "w1": sorted(bits(w1)), "w2": sorted(bits(w2))})
            if not ties:
                a["cycle_free"] += 1
                if len(outputs) > 1:
                    a["violations"].append({"path": list(path), "seed": [sorted(bits(s1)), sorted(bits(s2))],
                                            "error": "cycle-free instance differs across orders"})
    return a


def probe_conjecture(g: Graph) -> dict:
    """Exhaustive cover search on an even-hole-free graph (sector wheels allowed)."""
    found = brute_force_cover(g)
    return {"checked": 1, "flagged": [] if found is not None else ["no chordal cover"]}


def audit_sibling_leaves(max_nodes: int = 10) -> dict:
    """Every nontrivial tree with two leaves on a common neighbour gives a
    ``B(T)`` with a star cutset."""
    a = _audit()
    for n in range(2, max_nodes + 1):
        for t in enumerate_trees(n):
            if not t.is_nontrivial or not t.has_sibling_leaves():
                continue
            a["checked"] += 1
            bt = build_bt(t)
            if not det.has_star_cutset(bt.graph):
                a["violations"].append(sorted(t.edges))
    return a


# --------------------------------------------------------------------------
# per-graph record

def graph_flags(g: Graph) -> dict[str, bool]:
    connected = len(component_masks(g, g.full)) == 1
    return {
        "even_hole_free": det.find_hole(g, "even") is None,
        "sector_wheel_free": det.find_wheel(g, "sector") is None,
        "chordal": det.find_hole(g) is None,
        "has_star_cutset": connected and det.has_star_cutset(g),
        "has_clique_cutset": connected and det.find_clique_cutset_mask(g, g.full) is not None,
        "has_two_join": det.find_two_join(g) is not None,
        "is_basic": det.recognize_basic(g) is not None,
        "is_pyramid": det.is_pyramid(g) is not None,
    }


def analyse_graph(g6: str, opts: SweepOptions = SweepOptions(), g: Graph | None = None) -> CorpusRecord:
    g = parse_graph6(g6) if g is None else g
    flags = graph_flags(g)
    audits: dict[str, object] = {}
    ehf = flags["even_hole_free"]
    in_class = ehf and flags["sector_wheel_free"]
    connected = len(component_masks(g, g.full)) == 1
    cover = None
    if in_class and connected:
        try:
            cover, trace = chordal_cover(g)
            ok, why = verify_cover(g, cover)
            steps = dict(sorted(Counter(s["step"] for s in trace.steps).items()))
            audits["cover"] = {"steps": steps, "verified": ok}
            status = "fallback_used" if trace.fallback_used else "covered"
            if not ok:
                status, cover = "failed", None
                audits["cover"]["error"] = why
        except (CoverFailure, ClassViolation, PrecoverError, AssertionError) as exc:
            status = "failed"
            audits["cover"] = {"error": f"{type(exc).__name__}: {exc}"}
    elif in_class:
        status = "failed"
        audits["cover"] = {"error": "graph is not connected"}
    else:
        status = "out_of_class"
    if ehf and connected:
        audits["even_wheel"] = audit_even_wheel(g)
        audits["decompose"] = audit_decompose(g)
        audits["proper_wheel_cutset"] = audit_proper_wheel_cutset(g)
        audits["short_pyramid"] = audit_short_pyramid(g)
        if flags["has_two_join"]:
            joins = list(det.iter_two_joins(g))
            audits["two_join_bounds"] = audit_two_join_bounds(g, joins)
            if in_class and not flags["has_star_cutset"]:
                audits["block_star"] = audit_block_star(g, joins)
        if g.n <= opts.probe_max_n and g.n <= MAX_ORACLE_N:
            audits[PROBE] = probe_conjecture(g)
    if flags["has_clique_cutset"]:
        audits["clique_paths"] = audit_clique_paths(g, det.find_clique_cutset_mask(g, g.full))
    if in_class and connected:
        if opts.oracle:
            audits["oracle"] = audit_oracle(g, cover)
        if g.n <= opts.fpe_max_n:
            audits["weak_fpe"] = audit_weak_fpe(g)
        if g.n <= opts.order_max_n and not flags["has_star_cutset"]:
            rng = random.Random(f"{opts.seed}:{g6}")
            audits["order"] = audit_order(g, rng, opts.orders)
    return CorpusRecord(g6, g.n, flags, status, audits)


def record_problems(rec: CorpusRecord) -> list[str]:
    """Blocking problems in one record: coverage failures, fallbacks, audit violations."""
    out = []
    if rec.cover_status in ("failed", "fallback_used"):
        out.append(f"cover {rec.cover_status}")
    for name in BLOCKING_AUDITS:
        a = rec.audits.get(name)
        if a and a["violations"]:
            out.append(f"{name}: {len(a['violations'])} violation(s)")
    return out


# --------------------------------------------------------------------------
# sweeps

def _work(args: tuple[str, SweepOptions]) -> str:
    g6, opts = args
    return analyse_graph(g6, opts).to_json()


def run_sweep(graph6_lines: Iterable[str], opts: SweepOptions = SweepOptions(),
              jobs: int = 1) -> list[CorpusRecord]:
    """Analyse every graph; records come back sorted by graph6 string."""
    keys = sorted(set(s.strip() for s in graph6_lines if s.strip()))
    tasks = [(s, opts) for s in keys]
    if jobs > 1:
        with Pool(jobs) as pool:
            lines = pool.map(_work, tasks, chunksize=max(1, len(tasks) // (jobs * 16)))
    else:
        lines = [_work(t) for t in tasks]
    return [CorpusRecord.from_json(line) for line in lines]


def summarise(records: list[CorpusRecord]) -> dict:
    status = Counter(r.cover_status for r in records)
    summary = {
        "graphs": len(records),
        "in_class": sum(1 for r in records if r.cover_status != "out_of_class"),
        "cover_status": {k: status.get(k, 0) for k in ("covered", "fallback_used", "failed", "out_of_class")},
        "audits": {},
        "flagged": [],
        "failures": [],
    }
    for name in BLOCKING_AUDITS + (PROBE,):
        checked = violations = 0
        graphs = 0
        for r in records:
            a = r.audits.get(name)
            if not a:
                continue
            graphs += 1
            checked += a["checked"]
            violations += len(a.get("violations", a.get("flagged", [])))
        summary["audits"][name] = {"graphs": graphs, "checked": checked, "violations": violations}
    for r in records:
        probe = r.audits.get(PROBE)
        if probe and probe["flagged"]:
            summary["flagged"].append(r.graph6)
        bad = record_problems(r)
        if bad:
            summary["failures"].append({"graph6": r.graph6, "problems": bad})
    steps = Counter()
    for r in records:
        steps.update(r.audits.get("cover", {}).get("steps", {}))
    summary["steps"] = dict(sorted(steps.items()))
    return summary

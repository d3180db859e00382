"""Constructive chordal covers for even-hole-free graphs with no sector wheel.

The engine is a recursion on induced subgraphs (``live`` bitmasks of the
host graph).  Every call receives a precover ``(P, W1, W2)`` whose sides
already cover ``N[P]`` and returns ``(X1, X2)`` with ``X1 & X2 = V(P)``,
``W1 <= X1``, ``W2 <= X2``.  Each case builds a candidate from smaller
sub-covers and the result is verified before it is accepted; a case that
does not produce a verified cover falls through to the next one, and the
exhaustive oracle is the logged last resort.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import detectors as det
from .detectors import TwoJoin, is_chordal_mask
from .graph import (Graph, GraphError, InducedPath, bits, closed_nbr_mask, component_masks,
                    is_clique_mask, is_connected_mask, lowest, to_mask)
from .oracle import brute_force_extend_mask

log = logging.getLogger(__name__)

STEP_NAMES = (
    "covered", "components", "peel-2.1", "universal", "base-clique", "base-hole", "base-pyramid",
    "clique-4.2", "star-5.6", "fullstar-5.7", "star-to-clique-5.9", "precover-3.6",
    "precover-search", "glue-3.4", "glue-3.5", "fallback-oracle",
)


class ClassViolation(Exception):
    """The input is not even-hole-free and sector-wheel-free; carries a witness."""

    def __init__(self, kind: str, witness):
        super().__init__(f"{kind}: {witness}")
        self.kind = kind
        self.witness = witness


class PrecoverError(ValueError):
    """A precover does not satisfy the preconditions of the requested operation."""


class CoverFailure(RuntimeError):
    """No extension was found, not even by exhaustive search."""


class GlueError(ValueError):
    """Gluing hypotheses failed; ``clause`` names the first violated one."""

    def __init__(self, clause: str):
        super().__init__(clause)
        self.clause = clause


# --------------------------------------------------------------------------
# value types

@dataclass(frozen=True)
class Precover:
    path: InducedPath
    w1: frozenset[int]
    w2: frozenset[int]

    @classmethod
    def of(cls, path: Sequence[int] | InducedPath, w1: Iterable[int], w2: Iterable[int]) -> "Precover":
        p = path if isinstance(path, InducedPath) else InducedPath(tuple(path))
        return cls(p, frozenset(w1), frozenset(w2))

    def is_complete(self, g: Graph) -> bool:
        return closed_nbr_mask(g, self.path.mask) == to_mask(self.w1 | self.w2)

    def problems(self, g: Graph) -> list[str]:
        """Violated invariants (empty when this is a valid partial precover)."""
        out = []
        try:
            self.path.validate(g)
        except GraphError as exc:
            return [str(exc)]
        w1, w2, p = to_mask(self.w1), to_mask(self.w2), self.path.mask
        g.check_mask(w1 | w2)
        if w1 & w2 != p:
            out.append("W1 & W2 != V(P)")
        if (w1 | w2) & ~closed_nbr_mask(g, p):
            out.append("W1 | W2 is not inside N[P]")
        if not is_chordal_mask(g, w1):
            out.append("G[W1] is not chordal")
        if not is_chordal_mask(g, w2):
            out.append("G[W2] is not chordal")
        return out


@dataclass(frozen=True)
class ChordalCover:
    x1: frozenset[int]
    x2: frozenset[int]

    @classmethod
    def of(cls, x1: Iterable[int], x2: Iterable[int]) -> "ChordalCover":
        return cls(frozenset(x1), frozenset(x2))

    def as_dict(self) -> dict:
        return {"x1": sorted(self.x1), "x2": sorted(self.x2)}


@dataclass
class CoverTrace:
    """Step records in completion order; the last depth-0 record holds the final cover."""

    steps: list[dict] = field(default_factory=list)

    def add(self, step: str, depth: int, live: int, path: Sequence[int], x1: int, x2: int, **extra) -> None:
        rec = {"step": step, "depth": depth, "live": sorted(bits(live)), "path": list(path),
               "x1": sorted(bits(x1)), "x2": sorted(bits(x2))}
        rec.update(extra)
        self.steps.append(rec)

    def count(self, step: str) -> int:
        return sum(1 for s in self.steps if s["step"] == step)

    @property
    def fallback_used(self) -> bool:
        return self.count("fallback-oracle") > 0

    def replay(self, g: Graph) -> ChordalCover:
        """Re-verify every recorded sub-cover and return the final one."""
        final = None
        for rec in self.steps:
            if rec["step"].startswith("precover"):
                continue
            live, x1, x2 = to_mask(rec["live"]), to_mask(rec["x1"]), to_mask(rec["x2"])
            if (x1 | x2) != live or not is_chordal_mask(g, x1) or not is_chordal_mask(g, x2):
                raise AssertionError(f"trace record does not verify: {rec}")
            if x1 & x2 != to_mask(rec["path"]):
                raise AssertionError(f"trace record breaks X1 & X2 = V(P): {rec}")
            if rec["depth"] == 0:
                final = ChordalCover.of(rec["x1"], rec["x2"])
        if final is None:
            raise AssertionError("trace has no top-level record")
        return final

    def to_ndjson(self) -> str:
        import json
        return "".join(json.dumps(s, sort_keys=True, separators=(",", ":")) + "\n" for s in self.steps)


# --------------------------------------------------------------------------
# verification

def _first_violation(g: Graph, live: int, x1: int, x2: int, p: int | None,
                     w1: int | None, w2: int | None) -> str | None:
    if (x1 | x2) != live:
        return "X1 | X2 != V(G)"
    if not is_chordal_mask(g, x1):
        return "G[X1] is not chordal"
    if not is_chordal_mask(g, x2):
        return "G[X2] is not chordal"
    if p is not None:
        if w1 & ~x1:
            return "W1 is not inside X1"
        if w2 & ~x2:
            return "W2 is not inside X2"
        if x1 & x2 != p:
            return "X1 & X2 != V(P)"
    return None


def verify_cover(g: Graph, c: ChordalCover, p: Precover | None = None) -> tuple[bool, str | None]:
    """``(True, None)`` or ``(False, first violated clause)``."""
    x1, x2 = to_mask(c.x1), to_mask(c.x2)
    try:
        g.check_mask(x1 | x2)
    except GraphError as exc:
        return False, str(exc)
    if p is None:
        bad = _first_violation(g, g.full, x1, x2, None, None, None)
    else:
        bad = _first_violation(g, g.full, x1, x2, p.path.mask, to_mask(p.w1), to_mask(p.w2))
    return bad is None, bad


# --------------------------------------------------------------------------
# precover completion

def _ordered_path_mask(g: Graph, mask: int) -> tuple[int, ...] | None:
    """The vertices of ``mask`` as an induced path, or ``None``."""
    verts = list(bits(mask))
    if not verts:
        return None
    if len(verts) == 1:
        return (verts[0],)
    ends = [v for v in verts if (g.adj[v] & mask).bit_count() == 1]
    if len(ends) != 2 or any((g.adj[v] & mask).bit_count() > 2 for v in verts):
        return None
    path = [min(ends)]
    prev = -1
    while len(path) < len(verts):
        nxt = [w for w in bits(g.adj[path[-1]] & mask) if w != prev]
        if len(nxt) != 1:
            return None
        prev = path[-1]
        path.append(nxt[0])
    if path[-1] != max(ends) or not is_connected_mask(g, mask):
        return None
    return tuple(path)


def complete_precover_mask(g: Graph, live: int, path: Sequence[int], w1: int, w2: int,
                           order: Sequence[int] | None = None,
                           tie_breaks: list[int] | None = None) -> tuple[int, int]:
    """Assign every vertex of ``N[P] - (W1 | W2)`` by the neighbour rules.

    A vertex ``v`` next to end ``p_i`` only is compared with the set ``O``
    of vertices next to the opposite end (for a one-edge path, minus the
    neighbours of ``p_i``): no neighbour in ``O`` sends ``v`` to ``W1'``,
    a neighbour already in ``W1'`` sends it to ``W2'``, a neighbour in
    ``W2'`` sends it to ``W1'``.  Vertices whose only neighbour in ``O`` is
    itself unassigned are deferred; a set of mutually deferred vertices is
    broken by sending the first one (``p_1`` side first, then smallest id)
    to ``W1'``.  ``order`` permutes the processing order; vertices placed by
    the tie-break are appended to ``tie_breaks`` when it is given.
    """
    pmask = to_mask(path)
    nbhd = closed_nbr_mask(g, pmask, live)
    todo = nbhd & ~(w1 | w2)
    if not todo:
        return w1, w2
    if len(path) == 1:
        raise PrecoverError("a one-vertex path needs N[P] covered already")
    p1, pk = path[0], path[-1]
    n1, nk = g.adj[p1] & live & ~pmask, g.adj[pk] & live & ~pmask
    opposite: dict[int, int] = {}
    side_of: dict[int, int] = {}
    for v in bits(todo):
        a, b = n1 >> v & 1, nk >> v & 1
        if a == b:
            why = "is a common neighbour of both ends" if a else "sees only the interior (P is not flat)"
            raise PrecoverError(f"unassigned vertex {v} {why}")
        side_of[v] = 1 if a else 2
        if len(path) == 2:
            opposite[v] = (nk & ~n1) if a else (n1 & ~nk)
        else:
            opposite[v] = nk if a else n1
    for v, o in opposite.items():
        if (g.adj[v] & o).bit_count() >= 2:
            raise ClassViolation("precover", f"vertex {v} has two neighbours across the path")
    pending = list(order) if order is not None else sorted(side_of)
    if sorted(pending) != sorted(side_of):
        raise ValueError("order must be a permutation of the unassigned vertices")
    a1, a2 = w1, w2
    while pending:
        progress = True
        while progress:
            progress = False
            rest = []
            for v in pending:
                nb = g.adj[v] & opposite[v]
                if not nb:
                    a1 |= 1 << v
                elif nb & a1:
                    a2 |= 1 << v
                elif nb & a2:
                    a1 |= 1 << v
                else:
                    rest.append(v)
                    continue
                progress = True
            pending = rest
        if pending:
            v = min(pending, key=lambda u: (side_of[u], u))
            if tie_breaks is not None:
                tie_breaks.append(v)
            a1 |= 1 << v
            pending.remove(v)
    return a1, a2


def complete_precover(g: Graph, pc: Precover, order: Sequence[int] | None = None,
                      check: bool = True) -> Precover:
    """Complete a partial precover on a flat path (see :func:`complete_precover_mask`).

    Raises :class:`PrecoverError` on violated preconditions and
    :class:`ClassViolation` when the output is not chordal or a vertex has
    two neighbours across the path (both impossible in-class).
    """
    bad = pc.problems(g)
    if bad:
        raise PrecoverError("; ".join(bad))
    path = pc.path.verts
    if check:
        if not all(g.degree(v) == 2 for v in pc.path.interior):
            raise PrecoverError("P is not flat")
        common = g.adj[path[0]] & g.adj[path[-1]] & ~pc.path.mask
        if len(path) > 1 and common & ~to_mask(pc.w1 | pc.w2):
            raise PrecoverError("N(p1) & N(pk) is not inside W1 | W2")
    w1, w2 = complete_precover_mask(g, g.full, path, to_mask(pc.w1), to_mask(pc.w2), order)
    for side, w in (("W1'", w1), ("W2'", w2)):
        if not is_chordal_mask(g, w):
            ok, hole = det.is_chordal(g, w)
            raise ClassViolation("precover", f"G[{side}] has hole {hole}")
    return Precover(pc.path, frozenset(bits(w1)), frozenset(bits(w2)))


# --------------------------------------------------------------------------
# gluing

def glue_across_clique_cutset(g: Graph, q: det.Cutset, covers: Sequence[ChordalCover]) -> ChordalCover:
    """Union piece covers side by side; pieces must agree on the cutset.

    ``covers[i]`` covers ``G[C_i + Q]`` for the components ``C_i`` of
    ``G - Q`` in :func:`components_after_removal` order.
    """
    qm = q.mask
    if q.kind != "clique" or not is_clique_mask(g, qm):
        raise GlueError("Q is not a clique")
    comps = component_masks(g, g.full & ~qm)
    if len(covers) != len(comps):
        raise GlueError("need one cover per component of G - Q")
    x1 = x2 = 0
    ref = None
    for comp, c in zip(comps, covers):
        c1, c2 = to_mask(c.x1), to_mask(c.x2)
        if (c1 | c2) != comp | qm:
            raise GlueError("a piece cover does not cover its piece")
        if ref is None:
            ref = (c1 & qm, c2 & qm)
        elif ref != (c1 & qm, c2 & qm):
            raise GlueError("piece covers disagree on Q")
        x1 |= c1
        x2 |= c2
    out = ChordalCover(frozenset(bits(x1)), frozenset(bits(x2)))
    ok, why = verify_cover(g, out)
    if not ok:
        raise GlueError(f"glued cover fails: {why}")
    return out


def reconcile_clique_piece(g: Graph, q: det.Cutset, comp: Iterable[int], outer: ChordalCover,
                           trace: CoverTrace | None = None) -> ChordalCover:
    """Re-cover ``G[C + Q]`` so that it agrees with ``outer`` on ``Q``.

    ``outer`` covers ``G - C``.  A vertex ``v`` of ``Q`` is used as a
    one-vertex path: its side in ``outer`` gets ``N(v) & C`` too, the other
    side gets ``v`` only, and ``v`` is dropped from that side afterwards.
    """
    eng = _Engine(g, trace if trace is not None else CoverTrace())
    cm = to_mask(comp)
    x1, x2 = eng.piece_from_clique(cm, q.mask, to_mask(outer.x1), to_mask(outer.x2), 0)
    return ChordalCover(frozenset(bits(x1)), frozenset(bits(x2)))


def glue_across_two_join(g: Graph, tj: TwoJoin, block_covers: tuple[ChordalCover, ChordalCover],
                         orientation: str = "lemma34") -> ChordalCover:
    """Combine block covers ``(X1', X2')`` of ``B(Z1)`` and ``(X1'', X2'')`` of ``B(Z2)``.

    ``"lemma34"`` needs ``M2`` inside both sides of the first cover and the
    ends of ``M1`` placed consistently; ``"lemma35"`` is the mirror image.
    """
    if orientation not in ("lemma34", "lemma35"):
        raise ValueError("orientation must be lemma34 or lemma35")
    tj.validate(g)
    first, second = block_covers
    f1, f2 = to_mask(first.x1), to_mask(first.x2)
    s1, s2 = to_mask(second.x1), to_mask(second.x2)
    if (f1 | f2) != tj.block(1):
        raise GlueError("first cover does not cover B(Z1)")
    if (s1 | s2) != tj.block(2):
        raise GlueError("second cover does not cover B(Z2)")
    if orientation == "lemma34":
        inner, (o1, o2), (t1, t2), ends = tj.m2, (f1, f2), (s1, s2), (tj.m1[0], tj.m1[-1])
        name = "M2 inside X1' & X2'"
    else:
        inner, (o1, o2), (t1, t2), ends = tj.m1, (s1, s2), (f1, f2), (tj.m2[0], tj.m2[-1])
        name = "M1 inside X1'' & X2''"
    m = to_mask(inner)
    if m & ~(o1 & o2):
        raise GlueError(name)
    e = to_mask(ends)
    if (e & o1) & ~t1 or (e & o2) & ~t2:
        raise GlueError("marker ends are not placed consistently in both covers")
    for side in ((f1, f2), (s1, s2)):
        if not is_chordal_mask(g, side[0]) or not is_chordal_mask(g, side[1]):
            raise GlueError("a block cover is not chordal")
    x1 = (f1 & tj.z1) | (s1 & tj.z2)
    x2 = (f2 & tj.z1) | (s2 & tj.z2)
    out = ChordalCover(frozenset(bits(x1)), frozenset(bits(x2)))
    ok, why = verify_cover(g, out)
    if not ok:
        raise GlueError(f"glued cover fails: {why}")
    return out


# --------------------------------------------------------------------------
# recursion

class _Engine:
    def __init__(self, g: Graph, trace: CoverTrace, allow_fallback: bool = True,
                 skip: frozenset[str] = frozenset()):
        self.g = g
        self.skip = skip
        self.adj = g.adj
        self.trace = trace
        self.allow_fallback = allow_fallback

    # small helpers -------------------------------------------------------

    def ok(self, live, x, p, w1, w2) -> bool:
        return x is not None and _first_violation(self.g, live, x[0], x[1], p, w1, w2) is None

    def record(self, step, depth, live, path, x, **extra):
        self.trace.add(step, depth, live, path, x[0], x[1], **extra)
        return x

    def nbhd(self, mask: int, live: int) -> int:
        return closed_nbr_mask(self.g, mask, live)

    # entry -----------------------------------------------------------------

    def extend(self, live: int, path: tuple[int, ...], w1: int, w2: int, depth: int = 0) -> tuple[int, int]:
        p = to_mask(path)
        if (w1 | w2) & ~live or w1 & w2 != p:
            raise PrecoverError("seeds do not form a precover inside the subgraph")
        unassigned = live & ~(w1 | w2)
        if not unassigned:
            return self.record("covered", depth, live, path, (w1, w2))
        comps = component_masks(self.g, live)
        if len(comps) > 1:
            return self.split_components(live, comps, path, w1, w2, depth)
        for name, attempt in (("peel", self.peel), ("base", self.base), ("clique", self.clique_cutset),
                              ("star", self.star_cases), ("two_join", self.two_join)):
            if name in self.skip:
                continue
            x = attempt(live, path, w1, w2, depth)
            if x is not None:
                return x
        return self.fallback(live, path, w1, w2, depth)

    def sub(self, live, path, w1, w2, depth, parent_live):
        if live.bit_count() >= parent_live.bit_count():
            raise AssertionError("recursion must shrink the vertex set")
        return self.extend(live, path, w1, w2, depth + 1)

    def fallback(self, live, path, w1, w2, depth):
        if not self.allow_fallback:
            raise CoverFailure(f"no case applies on {sorted(bits(live))} with P={list(path)}")
        log.warning("fallback to exhaustive search on %s, P=%s", sorted(bits(live)), list(path))
        x = brute_force_extend_mask(self.g, live, to_mask(path), w1, w2)
        if x is None:
            raise CoverFailure(f"no extension exists on {sorted(bits(live))} with P={list(path)}")
        return self.record("fallback-oracle", depth, live, path, x)

    # disconnected subgraphs --------------------------------------------

    def cover_free(self, comp: int, depth: int, parent_live: int) -> tuple[int, int]:
        """Disjoint chordal cover of a component that carries no seeds."""
        v = lowest(comp)
        nv = self.nbhd(1 << v, comp)
        if not is_chordal_mask(self.g, nv):
            ok, hole = det.is_chordal(self.g, nv)
            raise ClassViolation("sector wheel", det.Wheel(hole, v, frozenset(bits(self.adj[v] & hole.mask))))
        if comp == parent_live:
            x = self.extend(comp, (v,), nv, 1 << v, depth + 1)
        else:
            x = self.sub(comp, (v,), nv, 1 << v, depth, parent_live)
        return x[0], x[1] & ~(1 << v)

    def split_components(self, live, comps, path, w1, w2, depth):
        x1 = x2 = 0
        p = to_mask(path)
        for comp in comps:
            if comp & p:
                y = self.sub(comp, path, w1 & comp, w2 & comp, depth, live)
            elif comp & (w1 | w2):
                raise PrecoverError("seeds outside the component of P")
            else:
                y = self.cover_free(comp, depth, live)
            x1 |= y[0]
            x2 |= y[1]
        return self.record("components", depth, live, path, (x1, x2))

    # nearly simplicial peeling -----------------------------------------

    def peel(self, live, path, w1, w2, depth):
        for u in bits(live & ~(w1 | w2)):
            partner = det.nearly_simplicial_partner(self.g, live, u)
            if partner is None:
                continue
            x1, x2 = self.sub(live & ~(1 << u), path, w1, w2, depth, live)
            if partner >= 0 and x1 >> partner & 1:
                x = (x1, x2 | (1 << u))
            else:
                x = (x1 | (1 << u), x2)
            if self.ok(live, x, to_mask(path), w1, w2):
                return self.record("peel-2.1", depth, live, path, x, vertex=u)
        return None

    # base cases -------------------------------------------------------------

    def base(self, live, path, w1, w2, depth):
        g = self.g
        p = to_mask(path)
        free = live & ~(w1 | w2)
        if is_clique_mask(g, live):
            x = (live & ~(w2 & ~p), w2)
            if self.ok(live, x, p, w1, w2):
                return self.record("base-clique", depth, live, path, x)
        if det.is_hole_graph(g, live) is not None:
            x = (w1 | free, w2)
            if x[0] == live:
                u = lowest(free)
                x = (x[0] & ~(1 << u), w2 | (1 << u))
            if self.ok(live, x, p, w1, w2):
                return self.record("base-hole", depth, live, path, x)
        pw = det.is_pyramid(g, live)
        if pw is not None:
            x = self.pyramid_split(pw, free, w1, w2)
            if self.ok(live, x, p, w1, w2):
                return self.record("base-pyramid", depth, live, path, x)
        return None

    def pyramid_split(self, pw, free, w1, w2):
        """Give each of the pyramid's three holes a vertex private to each side.

        Greedy hitting set: repeatedly place the free vertex (on the side)
        that breaks the most holes still contained in the other side; the
        apex lies on all three holes and is usually taken first.
        """
        bodies = [to_mask(q[1:]) for q in pw.paths]
        holes = [(1 << pw.apex) | bodies[i] | bodies[j] for i, j in ((0, 1), (0, 2), (1, 2))]
        a1, a2 = w1, w2

        def open_pairs(a1, a2):
            # (hole, side) pairs where the side still has no private vertex on the hole
            return [(h, s) for h in holes for s, own in ((1, a1 & ~a2), (2, a2 & ~a1)) if not h & own]

        while free:
            best = None
            need = open_pairs(a1, a2)
            for v in bits(free):
                for side in (1, 2):
                    gain = sum(1 for h, s in need if s == side and h >> v & 1)
                    if gain and (best is None or gain > best[0]):
                        best = (gain, v, side)
            if best is None:
                break
            _, v, side = best
            if side == 1:
                a1 |= 1 << v
            else:
                a2 |= 1 << v
            free &= ~(1 << v)
        for v in bits(free):
            if is_chordal_mask(self.g, a1 | (1 << v)):
                a1 |= 1 << v
            else:
                a2 |= 1 << v
        return a1, a2

    # clique cutsets ---------------------------------------------------------

    def piece_from_clique(self, comp, q, x1, x2, depth, parent_live=None):
        """Cover ``G[comp + q]`` matching ``(x1, x2)`` on ``q``."""
        piece = comp | q
        parent_live = parent_live if parent_live is not None else piece | (1 << self.g.n)
        both = x1 & x2 & q
        if both:
            path = _ordered_path_mask(self.g, both)
            if path is None:
                return None
            return self.sub(piece, path, x1 & q, x2 & q, depth, parent_live)
        v = lowest(q)
        j1 = bool(x1 >> v & 1)
        extra = self.g.adj[v] & comp
        s1 = (x1 & q) | (1 << v) | (extra if j1 else 0)
        s2 = (x2 & q) | (1 << v) | (0 if j1 else extra)
        if not (is_chordal_mask(self.g, s1) and is_chordal_mask(self.g, s2)):
            return None
        y1, y2 = self.sub(piece, (v,), s1, s2, depth, parent_live)
        if j1:
            y2 &= ~(1 << v)
        else:
            y1 &= ~(1 << v)
        return y1, y2

    def clique_cutset(self, live, path, w1, w2, depth, q=None, step="clique-4.2"):
        g = self.g
        if q is None:
            q = det.find_clique_cutset_mask(g, live)
            if q is None:
                return None
        p = to_mask(path)
        comps = component_masks(g, live & ~q)
        seeded = w1 | w2
        lonely = [c for c in comps if not c & seeded]
        if lonely:
            c = lonely[0]
            outer = self.sub(live & ~c, path, w1, w2, depth, live)
            y = self.piece_from_clique(c, q, outer[0], outer[1], depth, live)
            if y is None:
                return None
            x = (outer[0] | y[0], outer[1] | y[1])
        else:
            x1 = x2 = 0
            for c in comps:
                piece = c | q
                sub_path = _ordered_path_mask(g, p & piece)
                if sub_path is None:
                    return None
                y = self.sub(piece, sub_path, w1 & piece, w2 & piece, depth, live)
                x1 |= y[0]
                x2 |= y[1]
            x = (x1, x2)
        if self.ok(live, x, p, w1, w2):
            return self.record(step, depth, live, path, x, cutset=sorted(bits(q)))
        return None

    # star cutsets -----------------------------------------------------------

    def star_cases(self, live, path, w1, w2, depth):
        if len(path) > 2:
            return self.star_helper_all(live, path, w1, w2, depth)
        for attempt in (self.universal, self.star_helper_all, self.full_star, self.star_to_clique):
            x = attempt(live, path, w1, w2, depth)
            if x is not None:
                return x
        return None

    def universal(self, live, path, w1, w2, depth):
        for v in bits(live & ~to_mask(path)):
            if (self.adj[v] | (1 << v)) & live == live:
                side = 1 if w1 >> v & 1 else 2
                bit = 1 << v
                x1, x2 = self.sub(live & ~bit, path, w1 & ~bit, w2 & ~bit, depth, live)
                x = (x1 | bit, x2) if side == 1 else (x1, x2 | bit)
                if self.ok(live, x, to_mask(path), w1, w2):
                    return self.record("universal", depth, live, path, x, vertex=v)
        return None

    def star_helper_all(self, live, path, w1, w2, depth):
        # star cutsets centred on one path vertex, then on the whole path
        cands = [(v,) for v in path]
        if len(path) == 2:
            cands.append(tuple(path))
        for centre in cands:
            x = self.star_helper(live, path, w1, w2, depth, centre)
            if x is not None:
                return x
        return None

    def star_helper(self, live, path, w1, w2, depth, centre):
        g = self.g
        x0 = to_mask(centre)
        around = self.nbhd(x0, live)
        outside = live & ~around
        if not outside:
            return None
        cut = det.star_split(g, live, x0, around & ~x0)
        if cut is None:
            return None
        # enlarge the cut so one component avoids N(centre)
        u = lowest(outside)
        comp_u = next(c for c in component_masks(g, live & ~cut) if c >> u & 1)
        cut |= around & comp_u
        comps = component_masks(g, live & ~cut)
        if len(comps) < 2:
            return None
        c1 = next(c for c in comps if c >> u & 1)
        p = to_mask(path)
        inner = cut | c1
        outer = live & ~c1
        ya = self.sub(inner, centre, w1 & inner, w2 & inner, depth, live) \
            if (w1 & w2 & inner) == x0 else None
        if ya is None:
            return None
        yb = self.sub(outer, path, w1 & outer, w2 & outer, depth, live)
        x = (ya[0] | yb[0], ya[1] | yb[1])
        if self.ok(live, x, p, w1, w2):
            return self.record("star-5.6", depth, live, path, x, cutset=sorted(bits(cut)),
                               centre=list(centre))
        return None

    def full_star(self, live, path, w1, w2, depth):
        g = self.g
        p = to_mask(path)
        for v in bits(live & ~p):
            closed = self.nbhd(1 << v, live)
            comps = component_masks(g, live & ~closed)
            if len(comps) < 2:
                continue
            bit = 1 << v
            if not closed & p:
                # P sits inside one component
                c1 = next(c for c in comps if c & p)
                first = c1 | closed
                x1, x2 = self.sub(first, path, w1 & first, w2 & first, depth, live)
                s1 = (x1 & closed) | bit
                s2 = (x2 & closed) | bit
                if not (is_chordal_mask(g, s1) and is_chordal_mask(g, s2)):
                    continue
                rest = live & ~c1
                y1, y2 = self.sub(rest, (v,), s1, s2, depth, live)
                x = (x1 | (y1 & ~bit), x2 | (y2 & ~bit))
                if self.ok(live, x, p, w1, w2):
                    return self.record("fullstar-5.7", depth, live, path, x, centre=v, variant="away")
                continue
            for w0 in bits(self.adj[v] & p):
                others = p & ~(1 << w0)
                for ci in comps:
                    if self.nbhd(others, live) & ci:
                        continue
                    x = self.full_star_near(live, path, w1, w2, depth, v, w0, ci, closed)
                    if x is not None:
                        return x
        return None

    def full_star_near(self, live, path, w1, w2, depth, v, w0, ci, closed):
        g = self.g
        p = to_mask(path)
        bit = 1 << v
        first = live & ~ci
        x1, x2 = self.sub(first, path, w1 & first, w2 & first, depth, live)
        second = ci | closed
        pair = bit | (1 << w0)
        n_w0 = self.nbhd(1 << w0, second)
        s1 = (closed & x1) | (w1 & n_w0) | pair
        s2 = (closed & x2) | (w2 & n_w0) | pair
        # other path vertices stay on one side here; they see nothing in ci
        extra = (s1 & s2) & ~pair
        s2 &= ~extra
        if not (is_chordal_mask(g, s1) and is_chordal_mask(g, s2)):
            return None
        if self.nbhd(pair, second) & ~(s1 | s2):
            return None
        ordered = (v, w0) if v < w0 else (w0, v)
        y1, y2 = self.sub(second, ordered, s1, s2, depth, live)
        x = (x1 | (y1 & ~bit), x2 | (y2 & ~bit))
        if self.ok(live, x, p, w1, w2):
            return self.record("fullstar-5.7", depth, live, path, x, centre=v, variant="near")
        return None

    def star_to_clique(self, live, path, w1, w2, depth):
        g = self.g
        for v in bits(live):
            closed = self.nbhd(1 << v, live)
            if len(component_masks(g, live & ~closed)) != 1:
                continue
            cut = det.star_split(g, live, 1 << v, g.adj[v] & live)
            if cut is None:
                continue
            c = component_masks(g, live & ~closed)[0]
            nc = self.nbhd(c, live) & ~c
            for a in component_masks(g, live & ~cut):
                if self.nbhd(a, live) & c:
                    continue
                around_a = self.nbhd(a, live) & ~a
                # {v} + B, and the attachment of A itself when that is a clique
                for q in ((1 << v) | (nc & around_a), around_a):
                    if not is_clique_mask(g, q) or len(component_masks(g, live & ~q)) < 2:
                        continue
                    x = self.clique_cutset(live, path, w1, w2, depth, q, "star-to-clique-5.9")
                    if x is not None:
                        return x
        return None

    # 2-joins --------------------------------------------------------------

    def two_join(self, live, path, w1, w2, depth):
        if live.bit_count() > det.MAX_SEARCH_N:
            return None
        for tj in det.iter_two_joins(self.g, live):
            for orient, t in (("glue-3.4", tj), ("glue-3.5", tj.swapped())):
                x = self.two_join_plan(live, path, w1, w2, depth, t)
                if x is not None:
                    return self.record(orient, depth, live, path, x)
        return None

    def block_seeds(self, block, bpath, s1, s2, depth):
        """Complete block seeds around ``bpath``; rules first, local search second."""
        g = self.g
        pm = to_mask(bpath)
        if s1 & s2 != pm or not (is_chordal_mask(g, s1) and is_chordal_mask(g, s2)):
            return None
        try:
            a1, a2 = complete_precover_mask(g, block, bpath, s1, s2)
            if is_chordal_mask(g, a1) and is_chordal_mask(g, a2):
                self.trace.add("precover-3.6", depth + 1, block, bpath, a1, a2)
                return a1, a2
        except (PrecoverError, ClassViolation):
            pass
        todo = self.nbhd(pm, block) & ~(s1 | s2)
        found = brute_force_extend_mask(g, block & (s1 | s2 | todo), pm, s1, s2)
        if found is not None:
            self.trace.add("precover-search", depth + 1, block, bpath, found[0], found[1])
        return found

    def two_join_plan(self, live, path, w1, w2, depth, tj: TwoJoin):
        """Cover ``B(Z1)`` first with ``M2`` inside both sides, then ``B(Z2)``."""
        g = self.g
        p = to_mask(path)
        z1, z2 = tj.z1, tj.z2
        g1, g2 = tj.block(1), tj.block(2)
        m1, m2 = to_mask(tj.m1), to_mask(tj.m2)
        path1 = _ordered_path_mask(g, (p & z1) | m2)
        if path1 is None:
            return None
        pm1 = to_mask(path1)
        seeds = self.block_seeds(g1, path1, (w1 & z1) | pm1, (w2 & z1) | pm1, depth)
        if seeds is None:
            return None
        x1a, x2a = self.sub(g1, path1, seeds[0], seeds[1], depth, live)
        ends = (1 << tj.m1[0]) | (1 << tj.m1[-1])
        options = []
        whole = _ordered_path_mask(g, (p & z2) | m1)
        if whole is not None:
            options.append(whole)
        core = (p & z2) | (ends & p)
        if core:
            mini = _ordered_path_mask(g, core)
            if mini is not None:
                options.append(mini)
        else:
            options.append(tj.m1)
        for path2 in options:
            pm2 = to_mask(path2)
            s1 = (w1 & z2) | (ends & x1a) | pm2
            s2 = (w2 & z2) | (ends & x2a) | pm2
            seeds2 = self.block_seeds(g2, path2, s1, s2, depth)
            if seeds2 is None:
                continue
            x1b, x2b = self.sub(g2, path2, seeds2[0], seeds2[1], depth, live)
            x = ((x1a & z1) | (x1b & z2), (x2a & z1) | (x2b & z2))
            if self.ok(live, x, p, w1, w2):
                return x
        return None


# --------------------------------------------------------------------------
# public entry points

def _check_class(g: Graph) -> None:
    hole = det.find_hole(g, "even")
    if hole is not None:
        raise ClassViolation("even hole", hole)
    wheel = det.find_wheel(g, "sector")
    if wheel is not None:
        raise ClassViolation("sector wheel", wheel)


def extend_cover(g: Graph, pc: Precover, mode: str = "weak", check_class: bool = True,
                 allow_fallback: bool = True, skip: Iterable[str] = ()) -> tuple[ChordalCover, CoverTrace]:
    """Extend a complete precover to a chordal cover with ``X1 & X2 = V(P)``.

    ``mode="weak"`` accepts paths on at most two vertices; ``mode="fpe"``
    accepts any flat path of a graph with no star cutset.  ``skip`` names
    dispatch cases to leave out (``peel``, ``base``, ``clique``, ``star``,
    ``two_join``); it exists so tests can exercise the later cases.
    """
    if mode not in ("weak", "fpe"):
        raise ValueError("mode must be weak or fpe")
    if not is_connected_mask(g, g.full):
        raise GraphError("extend_cover needs a connected graph")
    bad = pc.problems(g)
    if bad:
        raise PrecoverError("; ".join(bad))
    if not pc.is_complete(g):
        raise PrecoverError("precover does not cover N[P]")
    if mode == "weak" and len(pc.path) > 2:
        raise PrecoverError("weak mode takes paths with at most two vertices")
    if mode == "fpe":
        if not all(g.degree(v) == 2 for v in pc.path.interior):
            raise PrecoverError("P is not flat")
        if det.has_star_cutset(g):
            raise PrecoverError("fpe mode needs a graph with no star cutset")
    if check_class:
        _check_class(g)
    trace = CoverTrace()
    eng = _Engine(g, trace, allow_fallback, frozenset(skip))
    x1, x2 = eng.extend(g.full, pc.path.verts, to_mask(pc.w1), to_mask(pc.w2))
    cover = ChordalCover(frozenset(bits(x1)), frozenset(bits(x2)))
    ok, why = verify_cover(g, cover, pc)
    if not ok:  # pragma: no cover - every case verifies before returning
        raise CoverFailure(why)
    return cover, trace


def chordal_cover(g: Graph, allow_fallback: bool = True, skip: Iterable[str] = ()) -> tuple[ChordalCover, CoverTrace]:
    """Chordal cover of a connected even-hole-free graph with no sector wheel.

    Starts from the precover ``({v}, N[v], {v})`` for the smallest vertex
    ``v`` and extends it in weak mode.
    """
    if g.n == 0:
        return ChordalCover(frozenset(), frozenset()), CoverTrace()
    if not is_connected_mask(g, g.full):
        raise GraphError("chordal_cover needs a connected graph")
    _check_class(g)
    v = 0
    nv = closed_nbr_mask(g, 1 << v)
    if not is_chordal_mask(g, nv):  # pragma: no cover - excluded by the class check
        raise ClassViolation("sector wheel", det.is_chordal(g, nv)[1])
    pc = Precover(InducedPath((v,)), frozenset(bits(nv)), frozenset({v}))
    return extend_cover(g, pc, "weak", check_class=False, allow_fallback=allow_fallback, skip=skip)

"""Structure detectors for small graphs.

All searches are exhaustive and operate on an induced subgraph given as a
``live`` bitmask of the host graph (default: every vertex), so witnesses
always carry host vertex ids.  Every witness type has a ``validate``
method; the detectors call it before returning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

import networkx as nx

from .corpus import Tree, build_bt
from .graph import (Graph, GraphError, Hole, InducedPath, bits, component_masks,
                    is_clique_mask, is_connected_mask, is_induced_path_mask, lowest,
                    nbr_mask, to_mask)

MAX_SEARCH_N = 16


class NoCaseApplies(RuntimeError):
    """No outcome of the decomposition theorem was found (a theorem-audit failure)."""


class TheoremAuditError(AssertionError):
    """A property guaranteed in-class by a cited result did not hold."""


def _live(g: Graph, live: int | None) -> int:
    if live is None:
        return g.full
    g.check_mask(live)
    return live


def _check_size(live: int, what: str) -> None:
    if live.bit_count() > MAX_SEARCH_N:
        raise ValueError(f"{what} is a bounded search limited to n <= {MAX_SEARCH_N}")


# --------------------------------------------------------------------------
# chordality and holes

@lru_cache(maxsize=1 << 18)
def is_chordal_mask(g: Graph, live: int) -> bool:
    """Maximum cardinality search, then the Tarjan-Yannakakis elimination test."""
    adj = g.adj
    verts = list(bits(live))
    if len(verts) <= 3:
        return True
    weight = dict.fromkeys(verts, 0)
    pos = {}
    numbered = 0
    for i in range(len(verts)):
        v = max(weight, key=weight.__getitem__)
        del weight[v]
        pos[v] = i
        prev = adj[v] & numbered
        if prev:
            # the most recently numbered earlier neighbour must see all the others
            u = max(bits(prev), key=pos.__getitem__)
            if prev & ~(adj[u] | (1 << u)):
                return False
        numbered |= 1 << v
        for w in bits(adj[v] & live & ~numbered):
            weight[w] += 1
    return True


def iter_holes(g: Graph, live: int | None = None, parity: str = "any",
               min_len: int = 4, avoid: int = 0) -> Iterator[Hole]:
    """Each hole of ``g[live - avoid]`` once, starting at its minimum vertex."""
    if parity not in ("any", "even", "odd"):
        raise ValueError(f"parity must be any/even/odd, not {parity!r}")
    if min_len < 4:
        raise ValueError("holes have length >= 4")
    live = _live(g, live) & ~avoid
    adj = g.adj

    def want(k: int) -> bool:
        return k >= min_len and (parity == "any" or (k % 2 == 0) == (parity == "even"))

    def grow(path: list[int], blocked: int, allowed: int, s_nbrs: int):
        last = path[-1]
        for w in bits(adj[last] & allowed & ~blocked):
            if s_nbrs >> w & 1:
                if len(path) >= 3 and w > path[1] and want(len(path) + 1):
                    yield Hole(tuple(path) + (w,))
                continue
            path.append(w)
            yield from grow(path, blocked | (1 << w) | adj[last], allowed, s_nbrs)
            path.pop()

    for s in bits(live):
        allowed = live & ~((2 << s) - 1)
        s_nbrs = adj[s] & allowed
        for v1 in bits(s_nbrs):
            # v1 itself is a neighbour of s; later vertices adjacent to s close the cycle
            yield from grow([s, v1], (1 << s) | (1 << v1), allowed, s_nbrs & ~(1 << v1))


def find_hole(g: Graph, parity: str = "any", min_len: int = 4, avoid=(),
              live: int | None = None) -> Hole | None:
    avoid_mask = avoid if isinstance(avoid, int) else to_mask(avoid)
    for h in iter_holes(g, live, parity, min_len, avoid_mask):
        h.validate(g)
        return h
    return None


def is_chordal(g: Graph, live: int | None = None) -> tuple[bool, Hole | None]:
    """``(True, None)`` or ``(False, hole)``."""
    live = _live(g, live)
    if is_chordal_mask(g, live):
        return True, None
    hole = find_hole(g, live=live)
    if hole is None:  # pragma: no cover - the two tests are independent and must agree
        raise TheoremAuditError("elimination test and hole search disagree")
    return False, hole


def is_even_hole_free(g: Graph, live: int | None = None) -> bool:
    return find_hole(g, "even", live=live) is None


# --------------------------------------------------------------------------
# wheels

WHEEL_KINDS = ("any", "sector", "twin", "universal", "short_pyramid", "proper", "even")


@dataclass(frozen=True)
class WheelKinds:
    universal: bool
    sector: bool
    twin: bool
    short_pyramid: bool
    proper: bool
    even: bool

    def has(self, kind: str) -> bool:
        return True if kind == "any" else getattr(self, kind)


@dataclass(frozen=True)
class Wheel:
    hole: Hole
    center: int
    spokes: frozenset[int]

    def validate(self, g: Graph) -> None:
        self.hole.validate(g)
        if self.center in self.hole.verts:
            raise GraphError("wheel centre lies on its hole")
        spokes = frozenset(bits(g.adj[self.center] & self.hole.mask))
        if spokes != self.spokes or len(spokes) < 3:
            raise GraphError("wheel spokes must be N(center) on the hole, at least three")

    def kinds(self) -> WheelKinds:
        return classify_wheel(self.hole.verts, self.spokes)

    def sectors(self) -> list[InducedPath]:
        """Subpaths of the hole between cyclically consecutive spokes."""
        h = self.hole.verts
        k = len(h)
        idx = [i for i, v in enumerate(h) if v in self.spokes]
        out = []
        for j, i in enumerate(idx):
            nxt = idx[(j + 1) % len(idx)]
            span = (nxt - i) % k
            out.append(InducedPath(tuple(h[(i + t) % k] for t in range(span + 1))))
        return out


def classify_wheel(hole: tuple[int, ...], spokes: frozenset[int]) -> WheelKinds:
    k = len(hole)
    on = [v in spokes for v in hole]
    count = sum(on)
    universal = count == k
    runs = [] if universal else _runs(on)
    twin = len(runs) == 1 and count == 3
    short = count == 3 and sorted(runs) == [1, 2]
    return WheelKinds(
        universal=universal,
        sector=universal or len(runs) == 1,
        twin=twin,
        short_pyramid=short,
        proper=not twin and not short,
        even=count % 2 == 0,
    )


def _runs(on: list[bool]) -> list[int]:
    k = len(on)
    start = next(i for i in range(k) if on[i] and not on[i - 1])
    runs = []
    length = 0
    for t in range(k):
        if on[(start + t) % k]:
            length += 1
        elif length:
            runs.append(length)
            length = 0
    if length:
        runs.append(length)
    return runs


def iter_wheels(g: Graph, live: int | None = None, kind: str = "any") -> Iterator[Wheel]:
    if kind not in WHEEL_KINDS:
        raise ValueError(f"unknown wheel kind {kind!r}")
    live = _live(g, live)
    for hole in iter_holes(g, live):
        hm = hole.mask
        for c in bits(live & ~hm):
            sp = g.adj[c] & hm
            if sp.bit_count() >= 3:
                spokes = frozenset(bits(sp))
                if classify_wheel(hole.verts, spokes).has(kind):
                    yield Wheel(hole, c, spokes)


def find_wheel(g: Graph, kind: str = "any", live: int | None = None) -> Wheel | None:
    for w in iter_wheels(g, live, kind):
        w.validate(g)
        return w
    return None


def is_sector_wheel_free(g: Graph, live: int | None = None) -> bool:
    return find_wheel(g, "sector", live) is None


# --------------------------------------------------------------------------
# cutsets

CUTSET_KINDS = ("clique", "star", "full_star", "proper_star", "double_star")


@dataclass(frozen=True)
class Cutset:
    kind: str
    verts: frozenset[int]
    centers: tuple[int, ...] = ()

    @property
    def mask(self) -> int:
        return to_mask(self.verts)

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        c = self.mask
        if c & ~live:
            raise GraphError("cutset leaves the graph")
        if len(component_masks(g, live & ~c)) < 2:
            raise GraphError(f"{sorted(self.verts)} does not disconnect the graph")
        if self.kind == "clique":
            if not is_clique_mask(g, c):
                raise GraphError("clique cutset is not a clique")
            return
        if self.kind == "double_star":
            u, v = self.centers
            if not g.has_edge(u, v) or not {u, v} <= self.verts:
                raise GraphError("double star centres must be adjacent members")
            if c & ~((g.adj[u] | g.adj[v] | (1 << u) | (1 << v)) & live):
                raise GraphError("double star cutset exceeds N[{u, v}]")
            return
        (v,) = self.centers
        closed = (g.adj[v] | (1 << v)) & live
        if v not in self.verts or c & ~closed:
            raise GraphError("star cutset must contain its centre and lie in N[centre]")
        if self.kind == "full_star" and c != closed:
            raise GraphError("full star cutset must equal N[centre]")
        if self.kind == "proper_star" and is_clique_mask(g, c):
            raise GraphError("proper star cutset must not be a clique")


def star_split(g: Graph, live: int, forced: int, optional: int) -> int | None:
    """Find ``C = forced + S`` (``S`` within ``optional``) disconnecting ``g[live]``.

    Complete: with ``R = live - forced - optional``, either ``g[R]`` is
    already disconnected, or one component ``K`` remains and some optional
    vertex has no neighbour in ``K``, or ``R`` is empty and ``optional``
    has two non-adjacent members.
    """
    rest = live & ~forced & ~optional
    comps = component_masks(g, rest)
    if len(comps) >= 2:
        return forced | optional
    if len(comps) == 1:
        k = comps[0]
        for u in bits(optional):
            if not g.adj[u] & k:
                return forced | (optional & ~(1 << u))
        return None
    for u in bits(optional):
        non = optional & ~g.adj[u] & ~(1 << u)
        if non:
            return forced | (optional & ~(1 << u) & ~(1 << lowest(non)))
    return None


def _shrink(g: Graph, live: int, cut: int, keep: int) -> int:
    for v in bits(cut & ~keep):
        trial = cut & ~(1 << v)
        if len(component_masks(g, live & ~trial)) >= 2:
            cut = trial
    return cut


def iter_cliques(g: Graph, live: int) -> Iterator[int]:
    """All nonempty cliques of ``g[live]`` (as masks)."""
    def grow(clique: int, cand: int):
        for v in bits(cand):
            c = clique | (1 << v)
            yield c
            yield from grow(c, cand & g.adj[v] & ~((2 << v) - 1))
    yield from grow(0, live)


def find_clique_cutset_mask(g: Graph, live: int) -> int | None:
    best = None
    for q in iter_cliques(g, live):
        if best is not None and q.bit_count() > best.bit_count():
            continue
        if len(component_masks(g, live & ~q)) >= 2:
            if best is None or (q.bit_count(), sorted(bits(q))) < (best.bit_count(), sorted(bits(best))):
                best = q
    return best


def star_cutset_center(g: Graph, live: int, v: int) -> int | None:
    return star_split(g, live, 1 << v, g.adj[v] & live)


def has_star_cutset(g: Graph, live: int | None = None) -> bool:
    live = _live(g, live)
    return any(star_cutset_center(g, live, v) is not None for v in bits(live))


def find_cutset(g: Graph, kind: str = "star", centers: tuple[int, ...] | None = None,
                live: int | None = None) -> Cutset | None:
    """A cutset of the requested kind, or ``None``; the search is complete.

    ``centers`` restricts the centre (one vertex, or an edge for
    ``double_star``).  Returned cutsets are shrunk to inclusion-minimal
    ones of the same kind where the kind allows it.
    """
    if kind not in CUTSET_KINDS:
        raise ValueError(f"unknown cutset kind {kind!r}")
    live = _live(g, live)
    if not is_connected_mask(g, live):
        raise GraphError("cutset search needs a connected graph")
    found: Cutset | None = None
    if kind == "clique":
        q = find_clique_cutset_mask(g, live)
        found = None if q is None else Cutset("clique", frozenset(bits(q)))
    elif kind == "double_star":
        pairs = [tuple(centers)] if centers else [(u, v) for u in bits(live)
                                                  for v in bits(g.adj[u] & live) if u < v]
        for u, v in pairs:
            forced = (1 << u) | (1 << v)
            c = star_split(g, live, forced, (g.adj[u] | g.adj[v]) & live & ~forced)
            if c is not None:
                found = Cutset("double_star", frozenset(bits(_shrink(g, live, c, forced))), (u, v))
                break
    else:
        for v in ([centers[0]] if centers else bits(live)):
            nv = g.adj[v] & live
            if kind == "full_star":
                closed = nv | (1 << v)
                if closed != live and len(component_masks(g, live & ~closed)) >= 2:
                    found = Cutset("full_star", frozenset(bits(closed)), (v,))
            elif kind == "star":
                c = star_split(g, live, 1 << v, nv)
                if c is not None:
                    found = Cutset("star", frozenset(bits(_shrink(g, live, c, 1 << v))), (v,))
            else:
                for a, b in combinations(bits(nv), 2):
                    if g.has_edge(a, b):
                        continue
                    forced = (1 << v) | (1 << a) | (1 << b)
                    c = star_split(g, live, forced, nv & ~forced)
                    if c is not None:
                        found = Cutset("proper_star", frozenset(bits(_shrink(g, live, c, forced))), (v,))
                        break
            if found is not None:
                break
    if found is not None:
        found.validate(g, live)
    return found


# --------------------------------------------------------------------------
# 2-joins

@dataclass(frozen=True)
class TwoJoin:
    a1: int
    c1: int
    b1: int
    a2: int
    c2: int
    b2: int
    m1: tuple[int, ...]
    m2: tuple[int, ...]

    @property
    def z1(self) -> int:
        return self.a1 | self.c1 | self.b1

    @property
    def z2(self) -> int:
        return self.a2 | self.c2 | self.b2

    def side(self, i: int) -> tuple[int, int, int, tuple[int, ...]]:
        return (self.a1, self.c1, self.b1, self.m1) if i == 1 else (self.a2, self.c2, self.b2, self.m2)

    def block(self, i: int) -> int:
        """Vertex mask of the block of decomposition ``Z_i`` plus the opposite marker path."""
        return self.z1 | to_mask(self.m2) if i == 1 else self.z2 | to_mask(self.m1)

    def swapped(self) -> "TwoJoin":
        return TwoJoin(self.a2, self.c2, self.b2, self.a1, self.c1, self.b1, self.m2, self.m1)

    def as_sets(self) -> dict[str, list[int]]:
        return {k: sorted(bits(getattr(self, k))) for k in ("a1", "c1", "b1", "a2", "c2", "b2")} | {
            "m1": list(self.m1), "m2": list(self.m2)}

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        parts = (self.a1, self.c1, self.b1, self.a2, self.c2, self.b2)
        union = 0
        for p in parts:
            if p & union:
                raise GraphError("2-join blocks overlap")
            union |= p
        if union != live:
            raise GraphError("2-join blocks do not partition the vertex set")
        z1, z2 = self.z1, self.z2
        for v in bits(z1):
            cross = g.adj[v] & z2
            want = self.a2 if self.a1 >> v & 1 else self.b2 if self.b1 >> v & 1 else 0
            if cross != want:
                raise GraphError(f"vertex {v} has the wrong neighbours across the 2-join")
        for v in bits(z2):
            cross = g.adj[v] & z1
            want = self.a1 if self.a2 >> v & 1 else self.b1 if self.b2 >> v & 1 else 0
            if cross != want:
                raise GraphError(f"vertex {v} has the wrong neighbours across the 2-join")
        for a, c, b, m, z in ((self.a1, self.c1, self.b1, self.m1, z1),
                              (self.a2, self.c2, self.b2, self.m2, z2)):
            if len(m) < 2 or not is_induced_path_mask(g, m):
                raise GraphError("marker path is not an induced path")
            if not (a >> m[0] & 1 and b >> m[-1] & 1) or to_mask(m[1:-1]) & ~c:
                raise GraphError("marker path must run from A_i to B_i through C_i")
            if to_mask(m) == z:
                raise GraphError("Z_i is just its marker path")


def marker_path(g: Graph, a: int, c: int, b: int) -> tuple[int, ...] | None:
    """Shortest A-B path with interior in C, minimum ids first on ties."""
    parent: dict[int, int | None] = {v: None for v in bits(a)}
    frontier = a
    seen = a
    while frontier:
        hit = 0
        for v in bits(frontier):
            hit |= g.adj[v] & b
        if hit:
            end = lowest(hit)
            start = min(v for v in bits(frontier) if g.adj[v] >> end & 1)
            path = [end, start]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return tuple(reversed(path))
        nxt = 0
        for v in bits(frontier):
            for w in bits(g.adj[v] & c & ~seen & ~nxt):
                parent[w] = v
                nxt |= 1 << w
        seen |= nxt
        frontier = nxt
    return None


def _two_join_from_split(g: Graph, z1: int, z2: int) -> TwoJoin | None:
    groups: dict[int, int] = {}
    for v in bits(z1):
        cross = g.adj[v] & z2
        if cross:
            groups[cross] = groups.get(cross, 0) | (1 << v)
    if len(groups) != 2:
        return None
    (x, s1), (y, s2) = sorted(groups.items(), key=lambda kv: lowest(kv[1]))
    if x & y:
        return None
    for v in bits(x):
        if g.adj[v] & z1 != s1:
            return None
    for v in bits(y):
        if g.adj[v] & z1 != s2:
            return None
    a1, b1, a2, b2 = s1, s2, x, y
    c1 = z1 & ~a1 & ~b1
    c2 = z2 & ~a2 & ~b2
    m1 = marker_path(g, a1, c1, b1)
    m2 = marker_path(g, a2, c2, b2)
    if m1 is None or m2 is None:
        return None
    if to_mask(m1) == z1 or to_mask(m2) == z2:
        return None
    return TwoJoin(a1, c1, b1, a2, c2, b2, m1, m2)


def iter_two_joins(g: Graph, live: int | None = None) -> Iterator[TwoJoin]:
    """Every 2-join of ``g[live]``, one orientation per vertex bipartition."""
    live = _live(g, live)
    _check_size(live, "2-join detection")
    verts = list(bits(live))
    if len(verts) < 4:
        return
    first, rest = verts[0], verts[1:]
    for choice in range(1 << len(rest)):
        z1 = 1 << first
        for i, v in enumerate(rest):
            if choice >> i & 1:
                z1 |= 1 << v
        z2 = live & ~z1
        if z1.bit_count() < 2 or z2.bit_count() < 2:
            continue
        tj = _two_join_from_split(g, z1, z2)
        if tj is not None:
            yield tj


def find_two_join(g: Graph, live: int | None = None) -> TwoJoin | None:
    for tj in iter_two_joins(g, live):
        tj.validate(g, live)
        return tj
    return None


# --------------------------------------------------------------------------
# basic graphs

@dataclass(frozen=True)
class BasicRealization:
    tree: Tree
    vertex_map: dict[int, str] = field(compare=False)

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        bt = build_bt(self.tree)
        if not self.tree.is_nontrivial:
            raise GraphError("tree needs >= 3 leaves and >= 2 non-leaves")
        names = {}
        for i, e in enumerate(bt.edge_of):
            names[f"e{e[0]}-{e[1]}"] = i
        names["x1"], names["x2"] = bt.x1, bt.x2
        to_bt = {v: names[label] for v, label in self.vertex_map.items()}
        if set(to_bt) != set(bits(live)) or len(set(to_bt.values())) != bt.graph.n:
            raise GraphError("vertex map is not a bijection onto E(T) + {x1, x2}")
        for u in to_bt:
            for v in to_bt:
                if u < v and g.has_edge(u, v) != bt.graph.has_edge(to_bt[u], to_bt[v]):
                    raise GraphError("graph differs from B(T) under the vertex map")


def recognize_basic(g: Graph, live: int | None = None) -> BasicRealization | None:
    """Realise ``g[live]`` as an extended nontrivial basic graph, if possible.

    For each ordered adjacent pair ``(x1, x2)`` the rest must be the line
    graph of a tree; it is inverted (unique by Whitney's theorem once the
    triangle/claw ambiguity resolves to the claw, which is what a tree
    needs) and ``B(T)`` is rebuilt and compared edge by edge.
    """
    live = _live(g, live)
    _check_size(live, "basic-graph recognition")
    k = live.bit_count()
    if k < 6 or not is_connected_mask(g, live):
        return None
    for x1 in bits(live):
        for x2 in bits(g.adj[x1] & live):
            rest = live & ~(1 << x1) & ~(1 << x2)
            if not is_connected_mask(g, rest):
                continue
            found = _realize_with(g, live, rest, x1, x2)
            if found is not None:
                return found
    return None


@lru_cache(maxsize=4096)
def _inverse_line_tree(g: Graph, rest: int) -> tuple[int, tuple[tuple[int, int], ...], tuple[int, ...]] | None:
    h = nx.Graph()
    h.add_nodes_from(bits(rest))
    h.add_edges_from((u, v) for u in bits(rest) for v in bits(g.adj[u] & rest) if u < v)
    try:
        inv = nx.inverse_line_graph(h)
    except nx.NetworkXError:
        return None
    if inv.number_of_edges() != rest.bit_count() or not nx.is_tree(inv):
        return None
    nodes = sorted(inv.nodes, key=repr)
    index = {c: i for i, c in enumerate(nodes)}
    edges, owners = [], []
    for c1, c2 in inv.edges:
        shared = set(c1) & set(c2)
        if len(shared) != 1:
            return None
        edges.append((index[c1], index[c2]))
        owners.append(shared.pop())
    return len(nodes), tuple(edges), tuple(owners)


def _realize_with(g: Graph, live: int, rest: int, x1: int, x2: int) -> BasicRealization | None:
    inv = _inverse_line_tree(g, rest)
    if inv is None:
        return None
    n_nodes, edges, owners = inv
    tree = Tree(n_nodes, edges)
    if not tree.is_nontrivial:
        return None
    vertex_map = {owner: f"e{min(e)}-{max(e)}" for owner, e in zip(owners, edges)}
    vertex_map[x1], vertex_map[x2] = "x1", "x2"
    real = BasicRealization(tree, vertex_map)
    try:
        real.validate(g, live)
    except GraphError:
        return None
    return real


# --------------------------------------------------------------------------
# pyramids

@dataclass(frozen=True)
class PyramidWitness:
    apex: int
    base: tuple[int, int, int]
    paths: tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        a = self.apex
        union = 0
        ones = 0
        for p, b in zip(self.paths, self.base):
            if p[0] != a or p[-1] != b or len(p) < 2 or not is_induced_path_mask(g, p):
                raise GraphError("pyramid path must be an induced apex-base path")
            ones += len(p) == 2
            union |= to_mask(p)
        if ones > 1:
            raise GraphError("at most one pyramid path may have length one")
        if union != live:
            raise GraphError("pyramid does not span the graph")
        for i, j in ((0, 1), (0, 2), (1, 2)):
            pi, pj = to_mask(self.paths[i][1:]), to_mask(self.paths[j][1:])
            if pi & pj:
                raise GraphError("pyramid paths share a non-apex vertex")
            for u in bits(pi):
                cross = g.adj[u] & pj
                allowed = (1 << self.base[j]) if u == self.base[i] else 0
                if cross != allowed:
                    raise GraphError("edge between pyramid paths other than a base edge")


def is_pyramid(g: Graph, live: int | None = None) -> PyramidWitness | None:
    """Witness if ``g[live]`` is exactly a pyramid."""
    live = _live(g, live)
    k = live.bit_count()
    if k < 6 or g.num_edges() and _edge_count(g, live) != k + 2:
        return None
    adj = g.adj
    for b1 in bits(live):
        for b2 in bits(adj[b1] & live & ~((2 << b1) - 1)):
            for b3 in bits(adj[b1] & adj[b2] & live & ~((2 << b2) - 1)):
                base = (b1, b2, b3)
                bmask = (1 << b1) | (1 << b2) | (1 << b3)
                for a in bits(live & ~bmask):
                    w = _claw_paths(g, live, a, base, bmask)
                    if w is not None:
                        w.validate(g, live)
                        return w
    return None


def _edge_count(g: Graph, live: int) -> int:
    return sum((g.adj[v] & live).bit_count() for v in bits(live)) // 2


def _claw_paths(g: Graph, live: int, a: int, base: tuple[int, int, int], bmask: int) -> PyramidWitness | None:
    def nb(v: int) -> int:
        row = g.adj[v] & live
        if bmask >> v & 1:
            row &= ~bmask
        return row

    if nb(a).bit_count() != 3:
        return None
    paths = []
    seen = 1 << a
    for first in bits(nb(a)):
        path = [a, first]
        seen |= 1 << first
        while not bmask >> path[-1] & 1:
            nxt = nb(path[-1]) & ~seen
            if nb(path[-1]).bit_count() != 2 or nxt.bit_count() != 1:
                return None
            v = lowest(nxt)
            path.append(v)
            seen |= 1 << v
        if nb(path[-1]).bit_count() != 1:
            return None
        paths.append(tuple(path))
    if seen != live:
        return None
    ends = [p[-1] for p in paths]
    if sorted(ends) != sorted(base):
        return None
    paths.sort(key=lambda p: base.index(p[-1]))
    if sum(1 for p in paths if len(p) == 2) > 1:
        return None
    return PyramidWitness(a, base, tuple(paths))


# --------------------------------------------------------------------------
# nearly simplicial vertices

def nearly_simplicial_partner(g: Graph, live: int, v: int) -> int | None:
    """``-1`` if ``N(v)`` is a clique, else a vertex ``u`` with ``N(v) - u`` a clique, else ``None``."""
    nv = g.adj[v] & live
    if is_clique_mask(g, nv):
        return -1
    for u in bits(nv):
        if is_clique_mask(g, nv & ~(1 << u)):
            return u
    return None


def nearly_simplicial_vertices(g: Graph, live: int | None = None) -> frozenset[int]:
    """Vertices whose neighbourhood is a clique plus one vertex (simplicial vertices included)."""
    live = _live(g, live)
    return frozenset(v for v in bits(live) if nearly_simplicial_partner(g, live, v) is not None)


# --------------------------------------------------------------------------
# decomposition dispatcher

OUTCOME_KINDS = ("clique", "hole", "pyramid", "basic", "clique_cutset", "star_cutset", "two_join")


@dataclass(frozen=True)
class DecompositionOutcome:
    kind: str
    witness: object = None

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        if self.kind == "clique":
            if not is_clique_mask(g, live):
                raise GraphError("not a clique")
        elif self.kind == "hole":
            h: Hole = self.witness
            h.validate(g)
            if h.mask != live:
                raise GraphError("hole does not span the graph")
        else:
            self.witness.validate(g, live)


def is_hole_graph(g: Graph, live: int) -> Hole | None:
    k = live.bit_count()
    if k < 4 or any((g.adj[v] & live).bit_count() != 2 for v in bits(live)):
        return None
    if not is_connected_mask(g, live):
        return None
    start = lowest(live)
    order = [start]
    prev, cur = -1, start
    while True:
        nxt = [w for w in bits(g.adj[cur] & live) if w != prev]
        if nxt[0] == start and len(order) == k:
            break
        prev, cur = cur, nxt[0] if nxt[0] != start else nxt[-1]
        order.append(cur)
    return Hole(tuple(order))


def decompose(g: Graph, live: int | None = None, check_class: bool = False) -> DecompositionOutcome:
    """First applicable outcome in the order clique, hole, pyramid, basic,
    clique cutset, star cutset, 2-join.

    Raises :class:`NoCaseApplies` when nothing fires, which for a
    connected even-hole-free input would contradict the decomposition
    theorem.
    """
    live = _live(g, live)
    if not is_connected_mask(g, live):
        raise GraphError("decompose needs a connected graph")
    if check_class and not is_even_hole_free(g, live):
        raise GraphError("decompose needs an even-hole-free graph")
    out: DecompositionOutcome | None = None
    if is_clique_mask(g, live):
        out = DecompositionOutcome("clique")
    elif (h := is_hole_graph(g, live)) is not None:
        out = DecompositionOutcome("hole", h)
    elif (p := is_pyramid(g, live)) is not None:
        out = DecompositionOutcome("pyramid", p)
    elif (b := recognize_basic(g, live)) is not None:
        out = DecompositionOutcome("basic", b)
    elif (c := find_cutset(g, "clique", live=live)) is not None:
        out = DecompositionOutcome("clique_cutset", c)
    elif (c := find_cutset(g, "star", live=live)) is not None:
        out = DecompositionOutcome("star_cutset", c)
    elif (t := find_two_join(g, live)) is not None:
        out = DecompositionOutcome("two_join", t)
    if out is None:
        raise NoCaseApplies("no decomposition outcome applies")
    out.validate(g, live)
    return out


# --------------------------------------------------------------------------
# cutsets from proper wheels

@dataclass(frozen=True)
class SectorCutsetWitness:
    center: int
    hole: Hole
    sector: InducedPath
    w_set: frozenset[int]
    z_set: frozenset[int]
    n_prime: frozenset[int]
    cutset: frozenset[int]
    separates: bool

    def validate(self, g: Graph, live: int | None = None) -> None:
        live = _live(g, live)
        if self.cutset != self.n_prime | {self.center}:
            raise GraphError("cutset must be N' plus the centre")
        if not _separates(g, live, to_mask(self.cutset), to_mask(self.sector.interior),
                          to_mask(self.w_set | self.z_set)):
            raise GraphError("cutset does not separate the sector interior from W + Z")


def _separates(g: Graph, live: int, cut: int, left: int, right: int) -> bool:
    for comp in component_masks(g, live & ~cut):
        if comp & left and comp & right:
            return False
    return bool(left) and not (left | right) & cut


def proper_wheel_cutset(g: Graph, wheel: Wheel, sector: InducedPath,
                        live: int | None = None) -> SectorCutsetWitness:
    """Cutset ``N' + {x}`` around a long sector of a proper, non-universal wheel.

    ``W`` holds the spokes ``h`` for which the path from ``x2`` to ``h``
    in the hole minus ``x1`` sees an even number of spokes; ``Z`` is the
    hole outside the sector and ``N(x)``; ``N' = N(x) - W``.  Raises
    :class:`TheoremAuditError` if the separation fails.
    """
    live = _live(g, live)
    wheel.validate(g)
    kinds = wheel.kinds()
    if not kinds.proper or kinds.universal:
        raise ValueError("proper_wheel_cutset needs a proper, non-universal wheel")
    if sector not in wheel.sectors() and sector.reversed() not in wheel.sectors():
        raise ValueError("sector is not a sector of the wheel")
    if sector.length <= 1:
        raise ValueError("sector must be long (length > 1)")
    x = wheel.center
    h = wheel.hole.verts
    k = len(h)
    x1, x2 = sector.ends
    i1, i2 = h.index(x1), h.index(x2)
    # walk H - x1 from x2, away from the sector
    q_next = sector.verts[-2]
    step = 1 if h[(i2 + 1) % k] != q_next else -1
    w_set = set()
    count = 0
    j = i2
    while j != i1:
        v = h[j]
        if v in wheel.spokes:
            count += 1
            if count % 2 == 0:
                w_set.add(v)
        j = (j + step) % k
    sector_mask = sector.mask
    z_set = frozenset(v for v in h if not sector_mask >> v & 1 and not g.has_edge(x, v))
    n_prime = frozenset(bits(g.adj[x] & live)) - w_set
    cut = n_prime | {x}
    ok = _separates(g, live, to_mask(cut), to_mask(sector.interior), to_mask(w_set | z_set))
    wit = SectorCutsetWitness(x, wheel.hole, sector, frozenset(w_set), z_set, n_prime,
                              frozenset(cut), ok)
    if not ok:
        raise TheoremAuditError(f"N' + x fails to separate the sector interior: {wit}")
    return wit

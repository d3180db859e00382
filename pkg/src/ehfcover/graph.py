"""Immutable simple graphs on vertices ``0..n-1`` with bitmask adjacency.

Every vertex set handled internally is a Python ``int`` used as a bitset
(bit ``v`` set means vertex ``v`` is a member).  The public helpers accept
and return ``frozenset`` values; the ``*_mask`` variants are the fast paths
used by the detectors, the cover engine and the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graphs or vertex ids outside ``0..n-1``."""


def bits(mask: int) -> Iterator[int]:
    """Yield the members of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


class Graph:
    """Simple undirected graph.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of pairs
        Edge list over ``0..n-1``.  Self-loops are rejected, duplicates
        collapse.
    labels : sequence of str, optional
        Display names, one per vertex (used by DOT export and reports).
    """

    __slots__ = ("n", "adj", "labels", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (),
                 labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        if labels is not None and len(labels) != n:
            raise GraphError("labels must have one entry per vertex")
        self.n = n
        self.adj: tuple[int, ...] = tuple(adj)
        self.labels: tuple[str, ...] | None = tuple(labels) if labels is not None else None
        self._hash = hash((n, self.adj))

    @classmethod
    def from_adjacency(cls, adj: Sequence[int], labels: Sequence[str] | None = None) -> "Graph":
        n = len(adj)
        edges = [(u, v) for u in range(n) for v in bits(adj[u]) if u < v]
        g = cls(n, edges, labels)
        if g.adj != tuple(adj):
            raise GraphError("adjacency rows are not symmetric or contain loops")
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask >> self.n:
            raise GraphError(f"vertex set {sorted(bits(mask))} out of range for n={self.n}")

    def neighbors(self, v: int) -> frozenset[int]:
        self.check_vertex(v)
        return frozenset(bits(self.adj[v]))

    def degree(self, v: int, within: int | None = None) -> int:
        row = self.adj[v] if within is None else self.adj[v] & within
        return row.bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Return ``(subgraph, mapping)``; ``mapping[i]`` is the parent id of new vertex ``i``."""
        keep = tuple(sorted(set(vertices)))
        for v in keep:
            self.check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u in keep for v in bits(self.adj[u])
                 if v in index and u < v]
        labels = [self.label(v) for v in keep] if self.labels is not None else None
        return Graph(len(keep), edges, labels), keep

    def relabel(self, labels: Sequence[str]) -> "Graph":
        return Graph(self.n, self.edges(), labels)


# --------------------------------------------------------------------------
# mask primitives

def nbr_mask(g: Graph, mask: int) -> int:
    """Open neighbourhood of a set: vertices adjacent to some member (may overlap ``mask``)."""
    out = 0
    for v in bits(mask):
        out |= g.adj[v]
    return out


def closed_nbr_mask(g: Graph, mask: int, live: int | None = None) -> int:
    out = mask | nbr_mask(g, mask)
    return out if live is None else out & live


def component_masks(g: Graph, live: int) -> list[int]:
    """Connected components of ``g[live]``, ordered by minimum vertex id."""
    comps = []
    rest = live
    while rest:
        seed = rest & -rest
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.adj[v]
            grow &= rest & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(g: Graph, live: int) -> bool:
    if not live:
        return True
    seed = live & -live
    comp = frontier = seed
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= g.adj[v]
        grow &= live & ~comp
        comp |= grow
        frontier = grow
    return comp == live


def is_clique_mask(g: Graph, mask: int) -> bool:
    for v in bits(mask):
        if (g.adj[v] | (1 << v)) & mask != mask:
            return False
    return True


def is_induced_path_mask(g: Graph, verts: Sequence[int]) -> bool:
    if len(set(verts)) != len(verts):
        return False
    for i, u in enumerate(verts):
        for j in range(i + 1, len(verts)):
            if g.has_edge(u, verts[j]) != (j == i + 1):
                return False
    return True


# --------------------------------------------------------------------------
# domain values

@dataclass(frozen=True)
class InducedPath:
    """Ordered vertices of an induced path (a single vertex is a path of length 0)."""

    verts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "verts", tuple(self.verts))
        if not self.verts:
            raise GraphError("a path needs at least one vertex")

    def __len__(self) -> int:
        return len(self.verts)

    def __iter__(self):
        return iter(self.verts)

    @property
    def length(self) -> int:
        return len(self.verts) - 1

    @property
    def ends(self) -> tuple[int, int]:
        return self.verts[0], self.verts[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.verts[1:-1] if len(self.verts) > 2 else ()

    @property
    def mask(self) -> int:
        return to_mask(self.verts)

    def reversed(self) -> "InducedPath":
        return InducedPath(self.verts[::-1])

    def validate(self, g: Graph) -> None:
        for v in self.verts:
            g.check_vertex(v)
        if not is_induced_path_mask(g, self.verts):
            raise GraphError(f"{list(self.verts)} is not an induced path")


@dataclass(frozen=True)
class Hole:
    """Induced cycle on at least four vertices, in cyclic order."""

    verts: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "verts", tuple(self.verts))

    def __len__(self) -> int:
        return len(self.verts)

    @property
    def mask(self) -> int:
        return to_mask(self.verts)

    @property
    def is_even(self) -> bool:
        return len(self.verts) % 2 == 0

    def validate(self, g: Graph) -> None:
        k = len(self.verts)
        if k < 4 or len(set(self.verts)) != k:
            raise GraphError(f"{list(self.verts)} is too short or repeats vertices")
        for i in range(k):
            for j in range(i + 1, k):
                cyclic = j == i + 1 or (i == 0 and j == k - 1)
                if g.has_edge(self.verts[i], self.verts[j]) != cyclic:
                    raise GraphError(f"{list(self.verts)} is not an induced cycle")


# --------------------------------------------------------------------------
# public set-level operations

def _as_mask(g: Graph, s: Iterable[int]) -> int:
    m = to_mask(s)
    g.check_mask(m)
    return m


def closed_neighborhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """``s`` together with every vertex that has a neighbour in ``s``."""
    return frozenset(bits(closed_nbr_mask(g, _as_mask(g, s))))


def components_after_removal(g: Graph, removed: Iterable[int]) -> list[frozenset[int]]:
    live = g.full & ~_as_mask(g, removed)
    return [frozenset(bits(c)) for c in component_masks(g, live)]


def is_flat_path(g: Graph, p: InducedPath | Sequence[int], live: int | None = None) -> bool:
    """True iff every interior vertex of the induced path has degree two.

    Degrees are measured in ``g[live]`` when ``live`` is given.
    """
    p = p if isinstance(p, InducedPath) else InducedPath(tuple(p))
    p.validate(g)
    return all(g.degree(v, live) == 2 for v in p.interior)


def iter_induced_paths(g: Graph, live: int | None = None, max_len: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every induced path of ``g[live]`` exactly once (ends ordered ``first <= last``)."""
    live = g.full if live is None else live
    limit = g.n if max_len is None else max_len

    def grow(path: list[int], blocked: int):
        if len(path) == 1 or path[0] < path[-1]:
            yield tuple(path)
        if len(path) >= limit:
            return
        last = path[-1]
        for w in bits(g.adj[last] & live & ~blocked):
            path.append(w)
            yield from grow(path, blocked | (1 << w) | g.adj[last])
            path.pop()

    for s in bits(live):
        yield from grow([s], 1 << s)


def iter_flat_paths(g: Graph, live: int | None = None) -> Iterator[tuple[int, ...]]:
    """Induced paths whose interior vertices have degree 2 in ``g[live]``."""
    live = g.full if live is None else live
    deg2 = 0
    for v in bits(live):
        if (g.adj[v] & live).bit_count() == 2:
            deg2 |= 1 << v

    def grow(path: list[int], blocked: int):
        if len(path) == 1 or path[0] < path[-1]:
            yield tuple(path)
        last = path[-1]
        if len(path) > 1 and not deg2 >> last & 1:
            return
        for w in bits(g.adj[last] & live & ~blocked):
            path.append(w)
            yield from grow(path, blocked | (1 << w) | g.adj[last])
            path.pop()

    for s in bits(live):
        yield from grow([s], 1 << s)

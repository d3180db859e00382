"""graph6 codec, named graphs, generators and corpus streaming.

The graph6 encoder/decoder follows the nauty format description: a size
header, then the upper triangle of the adjacency matrix in column order
``(0,1), (0,2), (1,2), (0,3), ...`` packed six bits per character with an
offset of 63.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import IO, Iterable, Iterator

from .graph import Graph, GraphError, bits

CORPUS_DIR = Path(__file__).parent / "data"


class Graph6Error(ValueError):
    pass


# --------------------------------------------------------------------------
# graph6

def _decode_size(data: bytes) -> tuple[int, int]:
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte size header")
        n = 0
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte size header")
    n = 0
    for c in data[1:4]:
        n = (n << 6) | (c - 63)
    return n, 4


def parse_graph6(text: str | bytes) -> Graph:
    """Decode one graph6 line.  A leading ``>>graph6<<`` header is accepted."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    for c in data:
        if not 63 <= c <= 126:
            raise Graph6Error(f"character {chr(c)!r} outside graph6 range 63..126")
    n, start = _decode_size(data)
    body = data[start:]
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise Graph6Error(f"expected {need} data bytes for n={n}, got {len(body)}")
    value = 0
    for c in body:
        value = (value << 6) | (c - 63)
    pad = need * 6 - nbits
    if value & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    value >>= pad
    edges = []
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> k & 1:
                edges.append((i, j))
            k -= 1
    return Graph(n, edges)


def write_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = chr(n + 63)
    elif n < 258048:
        head = "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    else:
        head = "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    out = []
    acc = 0
    count = 0
    for j in range(1, n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            count += 1
            if count == 6:
                out.append(chr(acc + 63))
                acc = count = 0
    if count:
        out.append(chr((acc << (6 - count)) + 63))
    return head + "".join(out)


def read_graph6_lines(stream: Iterable[str]) -> Iterator[tuple[str, Graph]]:
    """Yield ``(line, graph)`` for each non-blank line of a graph6 stream."""
    for raw in stream:
        line = raw.strip()
        if line and not line.startswith("#"):
            yield line, parse_graph6(line)


def load_corpus(path: str | Path | None = None, max_n: int | None = None) -> list[tuple[str, Graph]]:
    """Read a graph6 file; by default the vendored connected-graph corpus (n <= 8)."""
    path = Path(path) if path is not None else CORPUS_DIR / "connected_n1-8.g6"
    with open(path, encoding="ascii") as fh:
        out = list(read_graph6_lines(fh))
    if max_n is not None:
        out = [(s, g) for s, g in out if g.n <= max_n]
    return out


# --------------------------------------------------------------------------
# DOT

def to_dot(g: Graph, name: str = "G", highlight: dict[str, Iterable[int]] | None = None) -> str:
    """Plain DOT text.  ``highlight`` maps a colour to vertices drawn filled in it."""
    colour = {}
    for col, vs in (highlight or {}).items():
        for v in vs:
            colour[v] = col
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        attrs = [f'label="{g.label(v)}"']
        if v in colour:
            attrs.append(f'style=filled fillcolor="{colour[v]}"')
        lines.append(f"  {v} [{' '.join(attrs)}];")
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# --------------------------------------------------------------------------
# ndjson records

COVER_STATUSES = ("covered", "fallback_used", "failed", "out_of_class")
FLAG_KEYS = ("even_hole_free", "sector_wheel_free", "chordal", "has_star_cutset",
             "has_clique_cutset", "has_two_join", "is_basic", "is_pyramid")


@dataclass
class CorpusRecord:
    graph6: str
    n: int
    flags: dict[str, bool]
    cover_status: str
    audits: dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.cover_status not in COVER_STATUSES:
            raise ValueError(f"unknown cover status {self.cover_status!r}")

    def to_json(self) -> str:
        body = {
            "graph6": self.graph6,
            "n": self.n,
            "flags": {k: bool(self.flags[k]) for k in FLAG_KEYS},
            "cover_status": self.cover_status,
            "audits": self.audits,
        }
        return json.dumps(body, sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> "CorpusRecord":
        d = json.loads(line)
        return cls(d["graph6"], d["n"], d["flags"], d["cover_status"], d.get("audits", {}))


def write_ndjson(records: Iterable[dict | CorpusRecord], fh: IO[str]) -> None:
    for r in records:
        fh.write(r.to_json() if isinstance(r, CorpusRecord)
                 else json.dumps(r, sort_keys=True, separators=(",", ":")))
        fh.write("\n")


# --------------------------------------------------------------------------
# trees

@dataclass(frozen=True)
class Tree:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((min(u, v), max(u, v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        if self.n < 1 or len(edges) != self.n - 1 or len(set(edges)) != len(edges):
            raise GraphError("not a tree: need n >= 1 and exactly n-1 distinct edges")
        g = Graph(self.n, edges)
        from .graph import is_connected_mask
        if not is_connected_mask(g, g.full):
            raise GraphError("not a tree: disconnected")

    @cached_property
    def graph(self) -> Graph:
        return Graph(self.n, self.edges)

    @cached_property
    def sides(self) -> tuple[frozenset[int], frozenset[int]]:
        """Bipartition ``(V1, V2)`` with node 0 in ``V1``."""
        colour = {0: 0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in bits(self.graph.adj[u]):
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    stack.append(w)
        return (frozenset(v for v, c in colour.items() if c == 0),
                frozenset(v for v, c in colour.items() if c == 1))

    @cached_property
    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self.graph.degree(v) == 1)

    @property
    def leaves_by_side(self) -> tuple[frozenset[int], frozenset[int]]:
        v1, v2 = self.sides
        return self.leaves & v1, self.leaves & v2

    def pendant_edge(self, leaf: int) -> tuple[int, int]:
        if leaf not in self.leaves:
            raise GraphError(f"{leaf} is not a leaf")
        (w,) = bits(self.graph.adj[leaf])
        return (min(leaf, w), max(leaf, w))

    def has_sibling_leaves(self) -> bool:
        seen = set()
        for leaf in self.leaves:
            (w,) = bits(self.graph.adj[leaf])
            if w in seen:
                return True
            seen.add(w)
        return False

    @property
    def is_nontrivial(self) -> bool:
        """At least three leaves and at least two non-leaves."""
        return len(self.leaves) >= 3 and self.n - len(self.leaves) >= 2


def _rooted_code(adj: list[list[int]], root: int, parent: int) -> str:
    return "(" + "".join(sorted(_rooted_code(adj, c, root) for c in adj[root] if c != parent)) + ")"


def tree_canonical_form(n: int, edges: Iterable[tuple[int, int]]) -> str:
    """AHU encoding rooted at the centre (the smaller code for bicentral trees)."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    if n <= 2:
        return "(" * n + ")" * n
    deg = [len(a) for a in adj]
    layer = [v for v in range(n) if deg[v] == 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return min(_rooted_code(adj, c, -1) for c in layer)


def enumerate_trees(n: int) -> Iterator[Tree]:
    """All trees on ``n`` nodes up to isomorphism, in a fixed order.

    Each tree on ``k`` nodes is grown from every tree on ``k-1`` nodes by
    attaching a leaf; duplicates are rejected on the centre-rooted AHU code.
    """
    if not 1 <= n <= 12:
        raise ValueError("enumerate_trees supports 1 <= n <= 12")
    level: list[tuple[tuple[int, int], ...]] = [()]
    for k in range(2, n + 1):
        seen: dict[str, tuple[tuple[int, int], ...]] = {}
        for edges in level:
            for attach in range(k - 1):
                grown = edges + ((attach, k - 1),)
                code = tree_canonical_form(k, grown)
                if code not in seen:
                    seen[code] = grown
        level = [seen[c] for c in sorted(seen)]
    for edges in level:
        yield Tree(n, edges)


def parse_tree_spec(spec: str) -> Tree:
    """``"0-1,1-2,2-3"`` style edge list."""
    edges = []
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", part)
        if not m:
            raise GraphError(f"bad tree edge {part!r}")
        edges.append((int(m.group(1)), int(m.group(2))))
    n = 1 + max((max(e) for e in edges), default=0)
    return Tree(n, tuple(edges))


# --------------------------------------------------------------------------
# B(T)

@dataclass(frozen=True)
class BasicGraph:
    graph: Graph
    tree: Tree
    edge_of: tuple[tuple[int, int], ...]   # tree edge for vertices 0..m-1
    x1: int
    x2: int

    @property
    def nontrivial(self) -> bool:
        return self.tree.is_nontrivial


def build_bt(t: Tree) -> BasicGraph:
    """The graph on ``E(T) + {x1, x2}``.

    Tree edges sharing an endpoint are adjacent, ``x_i`` sees the pendant
    edge of every leaf on side ``V_i``, and ``x1 x2`` is an edge.
    """
    m = len(t.edges)
    x1, x2 = m, m + 1
    index = {e: i for i, e in enumerate(t.edges)}
    edges = []
    for i, (a, b) in enumerate(t.edges):
        for j in range(i + 1, m):
            c, d = t.edges[j]
            if {a, b} & {c, d}:
                edges.append((i, j))
    l1, l2 = t.leaves_by_side
    for x, side in ((x1, l1), (x2, l2)):
        for leaf in sorted(side):
            edges.append((x, index[t.pendant_edge(leaf)]))
    edges.append((x1, x2))
    labels = [f"e{a}{b}" if t.n <= 10 else f"e{a}_{b}" for a, b in t.edges] + ["x1", "x2"]
    return BasicGraph(Graph(m + 2, edges, labels), t, t.edges, x1, x2)


# --------------------------------------------------------------------------
# named graphs and generators

def cycle_graph(k: int) -> Graph:
    if k < 3:
        raise GraphError("cycle needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def clique_graph(k: int) -> Graph:
    return Graph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


FIGURE1_LABELS = ("x", "y1", "y2", "y3", "y4", "y5", "y6", "z1", "z2", "z3")


def figure1_graph() -> Graph:
    """Ten-vertex even-hole-free graph that is not flat path extendable."""
    ix = {name: i for i, name in enumerate(FIGURE1_LABELS)}
    pairs = [("x", f"y{i}") for i in range(1, 7)]
    pairs += [("y1", "y2"), ("y3", "y4"), ("y5", "y6")]
    pairs += [("z1", "y1"), ("z1", "y2"), ("z2", "y3"), ("z2", "y4"), ("z3", "y5"), ("z3", "y6")]
    pairs += [("z1", "z2"), ("z2", "z3"), ("z1", "z3")]
    return Graph(10, [(ix[a], ix[b]) for a, b in pairs], FIGURE1_LABELS)


def gen_pyramid(l1: int, l2: int, l3: int) -> Graph:
    """Apex 0, three paths of the given lengths ending in a base triangle."""
    lengths = (l1, l2, l3)
    if min(lengths) < 1:
        raise GraphError("pyramid paths need length >= 1")
    if sum(1 for x in lengths if x == 1) > 1:
        raise GraphError("at most one pyramid path may have length one")
    edges = []
    labels = ["a"]
    base = []
    nxt = 1
    for i, length in enumerate(lengths, start=1):
        prev = 0
        for step in range(1, length + 1):
            v = nxt
            nxt += 1
            labels.append(f"b{i}" if step == length else f"p{i}_{step}")
            edges.append((prev, v))
            prev = v
        base.append(prev)
    edges += [(base[0], base[1]), (base[1], base[2]), (base[0], base[2])]
    return Graph(nxt, edges, labels)


def butterfly_graph() -> Graph:
    return Graph(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def two_join_example() -> Graph:
    """Seven vertices u1..u4, v1..v3 joined by u1v1 and u3v2."""
    labels = ("u1", "u2", "u3", "u4", "v1", "v2", "v3")
    ix = {s: i for i, s in enumerate(labels)}
    pairs = [("u1", "u2"), ("u2", "u3"), ("u1", "u4"), ("u2", "u4"), ("u3", "u4"),
             ("v1", "v2"), ("v1", "v3"), ("v2", "v3"), ("u1", "v1"), ("u3", "v2")]
    return Graph(7, [(ix[a], ix[b]) for a, b in pairs], labels)


def two_join_nine() -> Graph:
    """Nine vertices, even-hole-free, no sector wheel and no star cutset, with 2-joins."""
    return parse_graph6("HwMV?dO")


def wheel_graph(k: int) -> Graph:
    """A hole of length ``k`` plus a centre (vertex ``k``) complete to it."""
    return Graph(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)])


def _sized(builder):
    return lambda arg: builder(int(arg))


NAMED = {
    "figure1": lambda arg: figure1_graph(),
    "butterfly": lambda arg: butterfly_graph(),
    "twojoin7": lambda arg: two_join_example(),
    "twojoin9": lambda arg: two_join_nine(),
    "cycle": _sized(cycle_graph),
    "clique": _sized(clique_graph),
    "path": _sized(path_graph),
    "wheel": _sized(wheel_graph),
}


def named_graph(name: str) -> Graph:
    """Look up ``figure1``, ``butterfly``, ``twojoin7``, ``twojoin9``, ``cycle(k)``, ``clique(k)``, ``path(k)``, ``wheel(k)``."""
    m = re.fullmatch(r"\s*([a-z0-9]+?)\s*(?:[(:]\s*(\d+)\s*\)?)?\s*", name)
    if not m or m.group(1) not in NAMED:
        raise KeyError(f"unknown graph name {name!r}; known: {', '.join(sorted(NAMED))}")
    key, arg = m.group(1), m.group(2)
    if key in ("cycle", "clique", "path", "wheel") and arg is None:
        raise KeyError(f"{key} needs a size, e.g. {key}(5)")
    return NAMED[key](arg)

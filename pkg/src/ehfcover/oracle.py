"""Exhaustive ground truth for chordal covers on small graphs.

Nothing here shares code with the cover engine beyond the graph
primitives and the chordality test, so agreement between the two is
meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .detectors import is_chordal_mask
from .graph import Graph, InducedPath, bits, closed_nbr_mask, iter_flat_paths, to_mask

MAX_ORACLE_N = 12
MAX_FPE_N = 10


class OracleSizeError(ValueError):
    pass


def _size(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise OracleSizeError(f"exhaustive search limited to n <= {limit} (got {g.n})")


def _two_way(g: Graph, free: list[int], x1: int, x2: int) -> tuple[int, int] | None:
    """Place every vertex of ``free`` on exactly one side, keeping both sides chordal."""
    if not (is_chordal_mask(g, x1) and is_chordal_mask(g, x2)):
        return None
    stack = [(0, x1, x2)]
    # iterative DFS; each step tries side 1 first
    while stack:
        i, a, b = stack.pop()
        if i == len(free):
            return a, b
        v = 1 << free[i]
        for na, nb in ((a, b | v), (a | v, b)):  # pushed in reverse so side 1 pops first
            grown = na if na != a else nb
            if is_chordal_mask(g, grown):
                stack.append((i + 1, na, nb))
    return None


def _degree_order(g: Graph, mask: int) -> list[int]:
    return sorted(bits(mask), key=lambda v: (-g.degree(v), v))


def brute_force_cover(g: Graph) -> tuple[frozenset[int], frozenset[int]] | None:
    """Some chordal cover ``(X1, X2)`` of ``g``, or ``None`` if there is none.

    Any chordal cover shrinks to a partition (chordality is hereditary),
    so searching two-way assignments is complete.  A chordal graph is
    returned as ``(V, {})``.
    """
    _size(g, MAX_ORACLE_N)
    if is_chordal_mask(g, g.full):
        return frozenset(range(g.n)), frozenset()
    order = _degree_order(g, g.full)
    first, rest = order[0], order[1:]
    found = _two_way(g, rest, 1 << first, 0)
    if found is None:
        return None
    return frozenset(bits(found[0])), frozenset(bits(found[1]))


def brute_force_extend_mask(g: Graph, live: int, p: int, w1: int, w2: int) -> tuple[int, int] | None:
    """Mask-level extension search inside ``g[live]``."""
    if w1 & w2 != p or (w1 | w2) & ~live:
        return None
    free = [v for v in _degree_order(g, live & ~(w1 | w2))]
    return _two_way(g, free, w1, w2)


def brute_force_extend(g: Graph, path, w1, w2) -> tuple[frozenset[int], frozenset[int]] | None:
    """Chordal cover ``X1 >= W1``, ``X2 >= W2`` with ``X1 & X2 = V(P)``, or ``None``.

    ``path`` may be an :class:`InducedPath` or a vertex sequence; the
    precover does not have to be complete (every unassigned vertex,
    inside ``N[P]`` or not, is searched over both sides).
    """
    _size(g, MAX_ORACLE_N)
    verts = path.verts if isinstance(path, InducedPath) else tuple(path)
    found = brute_force_extend_mask(g, g.full, to_mask(verts), to_mask(w1), to_mask(w2))
    if found is None:
        return None
    return frozenset(bits(found[0])), frozenset(bits(found[1]))


@dataclass(frozen=True)
class FPEWitness:
    path: tuple[int, ...]
    w1: frozenset[int]
    w2: frozenset[int]


def iter_precovers(g: Graph, path: tuple[int, ...], live: int | None = None):
    """Every complete precover ``(W1, W2)`` on ``path`` (as masks)."""
    live = g.full if live is None else live
    p = to_mask(path)
    rest = list(bits(closed_nbr_mask(g, p, live) & ~p))
    for r in range(len(rest) + 1):
        for chosen in combinations(rest, r):
            s1 = to_mask(chosen)
            w1 = p | s1
            w2 = p | (to_mask(rest) & ~s1)
            if is_chordal_mask(g, w1) and is_chordal_mask(g, w2):
                yield w1, w2


def check_fpe(g: Graph, weak: bool = False) -> tuple[bool, FPEWitness | None]:
    """Whether every complete precover on every flat path (weak: every path
    on at most two vertices) extends; returns a witness path and sets otherwise."""
    _size(g, MAX_FPE_N)
    if weak:
        paths = [(v,) for v in range(g.n)] + [e for e in g.edges()]
    else:
        paths = list(iter_flat_paths(g))
    for path in paths:
        p = to_mask(path)
        for w1, w2 in iter_precovers(g, path):
            if brute_force_extend_mask(g, g.full, p, w1, w2) is None:
                return False, FPEWitness(tuple(path), frozenset(bits(w1)), frozenset(bits(w2)))
    return True, None

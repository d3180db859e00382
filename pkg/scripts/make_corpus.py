"""Regenerate the vendored corpus of connected graphs (n <= 8).

Connected graphs on n vertices are grown from connected graphs on n-1
vertices by adding a vertex with a nonempty neighbourhood (every connected
graph has a non-cut vertex).  Isomorph rejection and canonical labelling
use nauty through pynauty, which is only needed for this script.

    python scripts/make_corpus.py --max-n 8 > src/ehfcover/data/connected_n1-8.g6
"""

import argparse
import sys

import pynauty

sys.path.insert(0, "src")
from ehfcover.corpus import write_graph6  # noqa: E402
from ehfcover.graph import Graph, bits  # noqa: E402


def canonical(n, adj):
    pg = pynauty.Graph(n, adjacency_dict={v: list(bits(adj[v])) for v in range(n)})
    lab = pynauty.canon_label(pg)
    pos = {old: new for new, old in enumerate(lab)}
    edges = [(pos[u], pos[v]) for u in range(n) for v in bits(adj[u]) if u < v]
    return Graph(n, edges)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()
    level = [Graph(1)]
    out = list(level)
    for n in range(2, args.max_n + 1):
        seen = {}
        for g in level:
            for nb in range(1, 1 << (n - 1)):
                adj = list(g.adj) + [nb]
                for v in bits(nb):
                    adj[v] |= 1 << (n - 1)
                c = canonical(n, adj)
                seen.setdefault(write_graph6(c), c)
        level = [seen[k] for k in sorted(seen)]
        print(f"n={n}: {len(level)}", file=sys.stderr)
        out += level
    for g in out:
        print(write_graph6(g))


if __name__ == "__main__":
    main()

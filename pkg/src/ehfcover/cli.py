"""Command line interface.

Exit codes: 0 success, 1 a check failed (``verify`` rejects, ``sweep``
found a problem), 2 class violation, 3 cover failure, 64 usage error,
65 input parse error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
import time
from contextlib import nullcontext
from pathlib import Path

from . import detectors as det
from .audits import SweepOptions, audit_sibling_leaves, run_sweep, summarise
from .corpus import (CORPUS_DIR, Graph6Error, gen_pyramid, named_graph, parse_graph6, parse_tree_spec,
                     build_bt, to_dot, write_graph6, write_ndjson)
from .engine import ChordalCover, ClassViolation, CoverFailure, Precover, PrecoverError, chordal_cover, \
    verify_cover
from .graph import Graph, GraphError, InducedPath, Hole, bits, component_masks
from .oracle import OracleSizeError, brute_force_cover, brute_force_extend

EXIT_OK, EXIT_CHECK, EXIT_CLASS, EXIT_FAILURE, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3, 64, 65

DETECT_KINDS = ("hole", "even-hole", "sector-wheel", "two-join", "star-cutset", "clique-cutset",
                "basic", "pyramid")

log = logging.getLogger("ehfcover")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


# --------------------------------------------------------------------------
# helpers

def to_jsonable(obj):
    """Witness objects as plain JSON values (vertex ids throughout)."""
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, (InducedPath, Hole)):
        return list(obj.verts)
    if isinstance(obj, det.TwoJoin):
        return obj.as_sets()
    if isinstance(obj, det.BasicRealization):
        return {"tree_edges": [list(e) for e in obj.tree.edges],
                "vertex_map": {str(k): v for k, v in sorted(obj.vertex_map.items())}}
    if isinstance(obj, (frozenset, set)):
        return sorted(obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def _dump(obj) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, separators=(",", ":"))


def _ids(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise InputError(f"vertex list must be comma-separated integers: {text!r}")


def _read_graph(args) -> tuple[str, Graph]:
    if args.graph6 and args.file:
        raise UsageError("give a graph6 string or --file, not both")
    if args.graph6:
        text = args.graph6
    else:
        try:
            fh = nullcontext(sys.stdin) if args.file in (None, "-") else open(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read graph file: {exc}")
        with fh as stream:
            text = next((line for line in stream if line.strip()), "")
    text = text.strip()
    if not text:
        raise InputError("no graph6 input")
    try:
        return text, parse_graph6(text)
    except (Graph6Error, GraphError) as exc:
        raise InputError(str(exc))


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cover_components(g: Graph) -> tuple[ChordalCover, list]:
    """Cover each component separately; the union is a cover of ``g``."""
    comps = component_masks(g, g.full)
    if len(comps) <= 1:
        cover, trace = chordal_cover(g)
        return cover, [trace]
    x1, x2, traces = set(), set(), []
    for comp in comps:
        sub, verts = g.induced(bits(comp))
        cover, trace = chordal_cover(sub)
        x1 |= {verts[v] for v in cover.x1}
        x2 |= {verts[v] for v in cover.x2}
        traces.append(trace)
    return ChordalCover(frozenset(x1), frozenset(x2)), traces


# --------------------------------------------------------------------------
# subcommands

def _detect_one(g: Graph, kind: str):
    connected = len(component_masks(g, g.full)) == 1
    if kind == "hole":
        return det.find_hole(g)
    if kind == "even-hole":
        return det.find_hole(g, "even")
    if kind == "sector-wheel":
        return det.find_wheel(g, "sector")
    if kind == "two-join":
        return det.find_two_join(g)
    if kind in ("star-cutset", "clique-cutset"):
        return det.find_cutset(g, kind.split("-")[0]) if connected else None
    if kind == "basic":
        return det.recognize_basic(g)
    return det.is_pyramid(g)


def cmd_detect(args) -> int:
    _, g = _read_graph(args)
    if g.n > det.MAX_SEARCH_N and args.kind in ("two-join", "basic"):
        raise UsageError(f"{args.kind} search is limited to n <= {det.MAX_SEARCH_N}")
    if args.kind:
        print(_dump(_detect_one(g, args.kind)))
    else:
        for kind in DETECT_KINDS:
            print(_dump({"kind": kind, "witness": _detect_one(g, kind)}))
    return EXIT_OK


def cmd_cover(args) -> int:
    _, g = _read_graph(args)
    try:
        cover, traces = _cover_components(g)
    except ClassViolation as exc:
        print(_dump({"class_violation": exc.kind, "witness": exc.witness}))
        return EXIT_CLASS
    except (CoverFailure, PrecoverError) as exc:
        print(_dump({"failure": str(exc)}))
        return EXIT_FAILURE
    ok, why = verify_cover(g, cover)
    print(_dump({"x1": sorted(cover.x1), "x2": sorted(cover.x2), "verified": ok, "violation": why,
                 "fallback_used": any(t.fallback_used for t in traces)}))
    if args.trace:
        _write_text(args.trace, "".join(t.to_ndjson() for t in traces))
    if args.dot:
        both = cover.x1 & cover.x2
        _write_text(args.dot, to_dot(g, highlight={"lightblue": cover.x1 - both, "salmon": cover.x2 - both,
                                                   "plum": both}))
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_verify(args) -> int:
    _, g = _read_graph(args)
    x1, x2 = _ids(args.x1), _ids(args.x2)
    pc = None
    if args.path is not None:
        try:
            pc = Precover.of(_ids(args.path), _ids(args.w1), _ids(args.w2))
        except GraphError as exc:
            raise InputError(str(exc))
    elif args.w1 is not None or args.w2 is not None:
        raise UsageError("--w1/--w2 need --path")
    ok, why = verify_cover(g, ChordalCover.of(x1, x2), pc)
    print(_dump({"verified": ok, "violation": why}))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_oracle(args) -> int:
    _, g = _read_graph(args)
    try:
        if args.precover:
            try:
                spec = json.loads(Path(args.precover).read_text())
                path, w1, w2 = spec["path"], spec["w1"], spec["w2"]
                Precover.of(path, w1, w2).path.validate(g)
            except (OSError, ValueError, KeyError, TypeError, GraphError) as exc:
                raise InputError(f"bad precover spec: {exc}")
            found = brute_force_extend(g, path, w1, w2)
            key = "extendable"
        else:
            found = brute_force_cover(g)
            key = "cover_exists"
    except OracleSizeError as exc:
        raise UsageError(str(exc))
    out = {key: found is not None}
    if found is not None:
        out["x1"], out["x2"] = sorted(found[0]), sorted(found[1])
    print(_dump(out))
    return EXIT_OK


def cmd_sweep(args) -> int:
    corpus = Path(args.corpus) if args.corpus else CORPUS_DIR / "connected_n1-8.g6"
    try:
        lines = corpus.read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read corpus: {exc}")
    keep = []
    for line in lines:
        s = line.strip()
        if not s or s.startswith(">>"):
            continue
        try:
            n = parse_graph6(s).n
        except (Graph6Error, GraphError) as exc:
            raise InputError(f"{s!r}: {exc}")
        if args.max_n is None or n <= args.max_n:
            keep.append(s)
    opts = SweepOptions(oracle=not args.no_oracle, fpe_max_n=args.fpe_max_n, order_max_n=args.order_max_n,
                        orders=args.orders, seed=args.seed)
    t0 = time.time()
    records = run_sweep(keep, opts, max(1, args.jobs))
    summary = summarise(records)
    if args.tree_max_nodes:
        trees = audit_sibling_leaves(args.tree_max_nodes)
        summary["trees"] = {"checked": trees["checked"], "violations": len(trees["violations"])}
        if trees["violations"]:
            summary["failures"].append({"trees": trees["violations"]})
    summary["seconds"] = round(time.time() - t0, 2)
    if args.report == "-":
        write_ndjson(records, sys.stdout)
    else:
        with open(args.report, "w") as fh:
            write_ndjson(records, fh)
    if args.plot_dir:
        from .plotting import write_sweep_plots
        write_sweep_plots(records, summary, args.plot_dir)
    print(json.dumps(summary, sort_keys=True, indent=1), file=sys.stderr)
    return EXIT_CHECK if summary["failures"] else EXIT_OK


def cmd_gen(args) -> int:
    try:
        if args.bt:
            g = build_bt(parse_tree_spec(args.bt)).graph
        elif args.pyramid:
            parts = [int(t) for t in args.pyramid.split(",")]
            if len(parts) != 3:
                raise UsageError("--pyramid takes three lengths l1,l2,l3")
            g = gen_pyramid(*parts)
        else:
            g = named_graph(args.named)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    except (GraphError, ValueError) as exc:
        raise InputError(str(exc))
    print(write_graph6(g))
    if args.dot:
        _write_text(args.dot, to_dot(g))
    return EXIT_OK


# --------------------------------------------------------------------------
# parser

def _graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("graph6", nargs="?", help="graph6 string (default: first line of --file or stdin)")
    p.add_argument("--file", help="file holding a graph6 line ('-' for stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ehfcover", description="Chordal covers of even-hole-free graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log engine fallbacks and progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="search for a structure, print its witness or null")
    _graph_args(p)
    p.add_argument("--kind", choices=DETECT_KINDS, help="one structure (default: all, one line each)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("cover", help="compute and verify a chordal cover")
    _graph_args(p)
    p.add_argument("--trace", help="write the engine trace as ndjson")
    p.add_argument("--dot", help="write DOT with the two sides coloured")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("verify", help="check a candidate cover (and precover)")
    _graph_args(p)
    p.add_argument("--x1", required=True, help="comma-separated vertex ids")
    p.add_argument("--x2", required=True, help="comma-separated vertex ids")
    p.add_argument("--path", help="precover path, in order")
    p.add_argument("--w1")
    p.add_argument("--w2")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="exhaustive cover / extension search")
    _graph_args(p)
    p.add_argument("--precover", help='JSON file {"path": [...], "w1": [...], "w2": [...]}')
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("sweep", help="analyse a graph6 corpus, write CorpusRecord ndjson")
    p.add_argument("--corpus", help="graph6 file (default: the bundled n <= 8 corpus)")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--report", required=True, help="ndjson output ('-' for stdout)")
    p.add_argument("--seed", type=int, default=0, help="seed for the order-robustness probe")
    p.add_argument("--orders", type=int, default=10, help="random orders per precover in the probe")
    p.add_argument("--fpe-max-n", type=int, default=8, help="weak FPE check up to this order (0: off)")
    p.add_argument("--order-max-n", type=int, default=7, help="order probe up to this order (0: off)")
    p.add_argument("--tree-max-nodes", type=int, default=10, help="sibling-leaf tree audit size (0: off)")
    p.add_argument("--no-oracle", action="store_true", help="skip the oracle agreement audit")
    p.add_argument("--plot-dir", help="write summary figures here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("gen", help="print a generated graph as graph6")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--bt", help="B(T) for a tree given as '0-1,1-2,...'")
    which.add_argument("--pyramid", help="pyramid path lengths l1,l2,l3")
    which.add_argument("--named", help="registry name, e.g. figure1 or cycle(7)")
    p.add_argument("--dot", help="also write DOT")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # argparse usage errors and --help
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ehfcover: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"ehfcover: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Chordal covers of even-hole-free graphs with no sector wheel.

Submodules: :mod:`graph` (bitmask graphs), :mod:`corpus` (graph6, named
graphs, generators, ndjson records), :mod:`detectors` (holes, wheels,
cutsets, 2-joins, basic graphs, pyramids), :mod:`engine` (the recursive
cover construction), :mod:`oracle` (exhaustive ground truth),
:mod:`audits` (corpus sweeps) and :mod:`cli`.
"""

from .corpus import (CorpusRecord, Tree, build_bt, gen_pyramid, load_corpus, named_graph, parse_graph6,
                     to_dot, write_graph6)
from .detectors import (Cutset, TwoJoin, Wheel, decompose, find_cutset, find_hole, find_two_join,
                        find_wheel, is_chordal, is_pyramid, proper_wheel_cutset, recognize_basic)
from .engine import (ChordalCover, ClassViolation, CoverTrace, Precover, chordal_cover, complete_precover,
                     extend_cover, glue_across_clique_cutset, glue_across_two_join, verify_cover)
from .graph import Graph, GraphError, Hole, InducedPath
from .oracle import brute_force_cover, brute_force_extend, check_fpe

__version__ = "0.1.0"

__all__ = [
    "ChordalCover", "ClassViolation", "CorpusRecord", "CoverTrace", "Cutset", "Graph", "GraphError", "Hole",
    "InducedPath", "Precover", "Tree", "TwoJoin", "Wheel", "brute_force_cover", "brute_force_extend",
    "build_bt", "check_fpe", "chordal_cover", "complete_precover", "decompose", "extend_cover", "find_cutset",
    "find_hole", "find_two_join", "find_wheel", "gen_pyramid", "glue_across_clique_cutset",
    "glue_across_two_join", "is_chordal", "is_pyramid", "load_corpus", "named_graph", "parse_graph6",
    "proper_wheel_cutset", "recognize_basic", "to_dot", "verify_cover", "write_graph6",
]

"""Exact minimum-flip supertree toolkit.

Thin Python surface over the C++ core: bipartite draft graphs, M-free
recognition, exact edition solvers, the triplet-inconsistency reduction and
the Newick supertree pipeline.
"""

from minflip._core import (
    BipartiteGraph,
    CapExceededError,
    DraftGraph,
    InfeasibleError,
    ParseError,
    Phylogeny,
    ValidationError,
    build_mrf_matrix,
    classify_range,
    delta,
    enumerate_phylogenies,
    exact_min_edit,
    fits,
    fpt_edit,
    is_perfect_phylogeny,
    min_rti_bruteforce,
    parse_newick_forest,
    reduce_rti_to_edit,
    rti_cost,
    supertree,
    supertree_of,
    verify_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "CapExceededError",
    "DraftGraph",
    "InfeasibleError",
    "ParseError",
    "Phylogeny",
    "ValidationError",
    "build_mrf_matrix",
    "classify_range",
    "delta",
    "enumerate_phylogenies",
    "exact_min_edit",
    "fits",
    "fpt_edit",
    "is_perfect_phylogeny",
    "min_rti_bruteforce",
    "parse_newick_forest",
    "reduce_rti_to_edit",
    "rti_cost",
    "supertree",
    "supertree_of",
    "verify_reduction",
]

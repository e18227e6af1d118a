"""Reconfiguration of circular (p, q)-colourings."""
from .chromatic_cycles import (
    FailureWitness,
    NoAcyclicPermutation,
    colour_sparse_cycles,
    count_cycles_mod_k,
    extend_colouring,
)
from .circular import CircularColouring, CircularParams, is_colouring, verify_colouring
from .errors import RecolourError
from .graph import Cycle, Digraph, Graph, parse_graph
from .hardness import build_reduction, check_forbidding_property, lift_sequence, project_sequence
from .labelling import EdgeLabelling, induced_labelling
from .oracle import components_summary, configuration_graph, oracle_decide
from .recolour import Verdict, check_sequence, recolour

__all__ = [
    "CircularColouring",
    "CircularParams",
    "Cycle",
    "Digraph",
    "EdgeLabelling",
    "FailureWitness",
    "Graph",
    "NoAcyclicPermutation",
    "RecolourError",
    "Verdict",
    "build_reduction",
    "check_forbidding_property",
    "check_sequence",
    "colour_sparse_cycles",
    "components_summary",
    "configuration_graph",
    "count_cycles_mod_k",
    "extend_colouring",
    "induced_labelling",
    "is_colouring",
    "lift_sequence",
    "oracle_decide",
    "parse_graph",
    "project_sequence",
    "recolour",
    "verify_colouring",
]

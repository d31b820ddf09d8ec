"""List coloring, [f,k]-choosability deciders, structural recognizers and
reduction gadgets for small graphs."""

from ._jit import JIT_ENABLED
from .choosability import (
    BudgetExceeded,
    ChoosabilityVerdict,
    CriticalityReport,
    decide_23_3_CH_bipartite,
    enumerate_assignments,
    is_critical,
    is_fk_choosable,
    recognize_2_choosable,
    recognize_23_choosable,
    verify_gadget_properties,
)
from .graph import Graph, GridGraph, build_named, graph_from_json, graph_to_json, parse_descriptor
from .listcolor import ListAssignment, count_colorings, solve
from .structure import block_decomposition, classify_core_component, compute_core

__version__ = "0.1.0"

__all__ = [
    "JIT_ENABLED",
    "BudgetExceeded",
    "ChoosabilityVerdict",
    "CriticalityReport",
    "Graph",
    "GridGraph",
    "ListAssignment",
    "block_decomposition",
    "build_named",
    "classify_core_component",
    "compute_core",
    "count_colorings",
    "decide_23_3_CH_bipartite",
    "enumerate_assignments",
    "graph_from_json",
    "graph_to_json",
    "is_critical",
    "is_fk_choosable",
    "parse_descriptor",
    "recognize_2_choosable",
    "recognize_23_choosable",
    "solve",
    "verify_gadget_properties",
]

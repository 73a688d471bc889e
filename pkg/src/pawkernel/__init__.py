"""Polynomial kernels and exact solvers for paw-free edge editing, deletion and addition."""

from .errors import (
    GenerationError,
    InvalidEditError,
    KernelInvariantError,
    PackingNotMaximalError,
    ParseError,
    PawKernelError,
    RulePreconditionError,
)
from .exact import Mode, is_yes, solve, solve_exhaustive, verify_solution
from .generator import GenSpec, SplitMix64, generate
from .graph import Graph, Instance, apply_edits, parse_edge_list, format_edge_list
from .kernel import (
    DEFAULT_DEPTH,
    KernelResult,
    kernelize,
    kernelize_addition,
    kernelize_deletion,
    kernelize_editing,
    replay,
    size_certificate,
)
from .packing import PawPacking, greedy_paw_packing
from .recognition import Paw, classify_component, find_paw, is_paw_free, is_paw_free_structural

__all__ = [
    "DEFAULT_DEPTH",
    "GenSpec",
    "GenerationError",
    "Graph",
    "Instance",
    "InvalidEditError",
    "KernelInvariantError",
    "KernelResult",
    "Mode",
    "PackingNotMaximalError",
    "ParseError",
    "Paw",
    "PawKernelError",
    "PawPacking",
    "RulePreconditionError",
    "SplitMix64",
    "apply_edits",
    "classify_component",
    "find_paw",
    "format_edge_list",
    "generate",
    "greedy_paw_packing",
    "is_paw_free",
    "is_paw_free_structural",
    "is_yes",
    "kernelize",
    "kernelize_addition",
    "kernelize_deletion",
    "kernelize_editing",
    "parse_edge_list",
    "replay",
    "size_certificate",
    "solve",
    "solve_exhaustive",
    "verify_solution",
]

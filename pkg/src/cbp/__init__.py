"""Bin packing with conflict graphs: solvers, oracles, benchmark harness."""

from .bis import BisProblem, bis_fptas_split, bis_ptas, knapsack_fptas
from .bpc import (
    AssignConfig,
    AssignmentLp,
    LpSolution,
    abs_bpb,
    approx_bpc,
    assign,
    build_assignment_lp,
    color_sets,
    matching_pack,
    max_solve,
    multipartite_pack,
    round_assignment,
    solve_assignment_lp,
    split_approx,
)
from .errors import CapabilityError, ParameterError, SolverError
from .graphs import (
    GraphClassInfo,
    Matching,
    max_weight_independent_set,
    maximum_matching_general,
    minimum_coloring,
    recognize,
    restrict_class_info,
)
from .harness import GeneratorSpec, RunReport, RunRow, generate, generate_b3dm, run_suite
from .maxsize import MaxSizeConfig, MaxSizeResult, max_size, round_config_lp, solve_config_lp
from .model import (
    ConflictInstance,
    ItemClasses,
    Packing,
    ValidationReport,
    classify_items,
    concat_packings,
    restrict_instance,
    union_packings,
    validate_packing,
)
from .oracle import bis_brute, maxsize_brute, opt_bpc_exact
from .packing_classic import asymptotic_bp, ffd

__all__ = [
    "AssignConfig",
    "AssignmentLp",
    "BisProblem",
    "CapabilityError",
    "ConflictInstance",
    "GeneratorSpec",
    "GraphClassInfo",
    "ItemClasses",
    "LpSolution",
    "Matching",
    "MaxSizeConfig",
    "MaxSizeResult",
    "Packing",
    "ParameterError",
    "RunReport",
    "RunRow",
    "SolverError",
    "ValidationReport",
    "abs_bpb",
    "approx_bpc",
    "assign",
    "asymptotic_bp",
    "bis_brute",
    "bis_fptas_split",
    "bis_ptas",
    "build_assignment_lp",
    "classify_items",
    "color_sets",
    "concat_packings",
    "ffd",
    "generate",
    "generate_b3dm",
    "knapsack_fptas",
    "matching_pack",
    "max_size",
    "max_solve",
    "max_weight_independent_set",
    "maximum_matching_general",
    "maxsize_brute",
    "minimum_coloring",
    "multipartite_pack",
    "opt_bpc_exact",
    "recognize",
    "restrict_class_info",
    "restrict_instance",
    "round_assignment",
    "round_config_lp",
    "run_suite",
    "solve_assignment_lp",
    "solve_config_lp",
    "split_approx",
    "union_packings",
    "validate_packing",
]
__version__ = "0.1.0"

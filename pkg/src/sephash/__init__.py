"""Separating hash family toolkit.

Exact verification oracles, hypergraph rainbow-cycle machinery, cover-free
family transforms, a capacity bound engine, and small-instance exact search.
"""

from .bounds import (
    BoundResult,
    SimplexMax,
    all_distinct_probability,
    applicable_upper_bounds,
    balanced_grouping_bound,
    best_upper_bound,
    blackburn_bound,
    equal_weight_max_rate,
    grouping_composition_bound,
    johnson_recursive_bound,
    johnson_step,
    max_separation_rate,
    niu_cao_bound,
    perfect_hash_upper_bound,
    prob_lower_bound,
    separation_rate,
    small_alphabet_bound,
    trung_bound,
)
from .coverfree import (
    ThresholdBounds,
    cff_derived,
    cff_is_shf_check,
    cover_free_threshold_lower,
    frameproof_threshold_bounds,
    is_cff,
    shf_to_cff_double,
)
from .hypergraph import (
    PartiteHypergraph,
    RainbowCycle,
    ShadowGraph,
    cycle_to_violation,
    find_rainbow_cycle,
    hypergraph_to_matrix,
    is_linear_hypergraph,
    matrix_to_hypergraph,
    shadow_graph,
)
from .matrix import (
    Matrix,
    MatrixFormatError,
    SeparationType,
    group_rows,
    parse_matrix,
    symbol_frequencies,
    write_matrix,
)
from .search import (
    CapacityResult,
    RainbowFreeResult,
    cyclic_overlap_matrix,
    exact_capacity,
    identity_construction,
    rainbow_free_extremal_search,
    random_shf_alteration,
    reed_solomon_frameproof,
)
from .verification import (
    PreconditionError,
    SpecialColumnReport,
    ViolationWitness,
    extract_linear_subfamily,
    extract_nonspecial_subfamily,
    find_violation,
    is_linear_shf,
    row_separates,
    special_columns,
)

__version__ = "0.1.0"

__all__ = [
    "BoundResult",
    "CapacityResult",
    "Matrix",
    "MatrixFormatError",
    "PartiteHypergraph",
    "PreconditionError",
    "RainbowCycle",
    "RainbowFreeResult",
    "SeparationType",
    "ShadowGraph",
    "SimplexMax",
    "SpecialColumnReport",
    "ThresholdBounds",
    "ViolationWitness",
    "all_distinct_probability",
    "applicable_upper_bounds",
    "balanced_grouping_bound",
    "best_upper_bound",
    "blackburn_bound",
    "cff_derived",
    "cff_is_shf_check",
    "cover_free_threshold_lower",
    "cycle_to_violation",
    "cyclic_overlap_matrix",
    "equal_weight_max_rate",
    "exact_capacity",
    "extract_linear_subfamily",
    "extract_nonspecial_subfamily",
    "find_rainbow_cycle",
    "find_violation",
    "frameproof_threshold_bounds",
    "group_rows",
    "grouping_composition_bound",
    "hypergraph_to_matrix",
    "identity_construction",
    "is_cff",
    "is_linear_hypergraph",
    "is_linear_shf",
    "johnson_recursive_bound",
    "johnson_step",
    "matrix_to_hypergraph",
    "max_separation_rate",
    "niu_cao_bound",
    "parse_matrix",
    "perfect_hash_upper_bound",
    "prob_lower_bound",
    "rainbow_free_extremal_search",
    "random_shf_alteration",
    "reed_solomon_frameproof",
    "row_separates",
    "separation_rate",
    "shadow_graph",
    "shf_to_cff_double",
    "small_alphabet_bound",
    "special_columns",
    "symbol_frequencies",
    "trung_bound",
    "write_matrix",
    "__version__",
]

"""Minimum-impurity partitioning of probability-weighted data.

Partition M data points, each carrying a joint distribution over N classes,
into K groups minimizing a concave impurity (entropy, Gini, or a custom
concave f), with closed-form bounds certifying the gap to the optimum and an
exhaustive oracle for verification at small sizes.
"""

from .algorithms import (
    DEFAULT_MASK_BUDGET,
    DEFAULT_ORACLE_CAP,
    AlgoResult,
    exhaustive_oracle,
    greedy_merge,
    greedy_split,
    iterative_refine,
    max_likelihood_partition,
    projection_masks,
)
from .bounds import (
    BoundsReport,
    approximation_ratio,
    binary_entropy,
    bounds_report,
    boyd_chiang_bound,
    fano_bound,
    lower_bound,
    n_min,
    s_value,
    upper_bound,
)
from .cli import RunConfig, main, run
from .errors import (
    ConcavityViolation,
    DimensionMismatch,
    EmptyStart,
    EOutOfRange,
    ImpurityPartError,
    IngestWarning,
    InstanceTooLarge,
    InvalidDistribution,
    KNotGreaterThanN,
    KNotLessThanN,
    KTooSmall,
    LabelOutOfRange,
    MaskBudgetExceeded,
    MissingL,
    NegativeEntry,
    NotAChannel,
    ParseError,
    ZeroRow,
    ZeroTotal,
)
from .impurity import ImpuritySpec, custom_spec, entropy_spec, gini_spec
from .ingestion import emit, ingest
from .prob import (
    JointDistribution,
    Partition,
    PartitionStats,
    build_joint,
    compute_stats,
)

__version__ = "0.1.0"

__all__ = [
    "AlgoResult",
    "BoundsReport",
    "ConcavityViolation",
    "DEFAULT_MASK_BUDGET",
    "DEFAULT_ORACLE_CAP",
    "DimensionMismatch",
    "EOutOfRange",
    "EmptyStart",
    "ImpurityPartError",
    "ImpuritySpec",
    "IngestWarning",
    "InstanceTooLarge",
    "InvalidDistribution",
    "JointDistribution",
    "KNotGreaterThanN",
    "KNotLessThanN",
    "KTooSmall",
    "LabelOutOfRange",
    "MaskBudgetExceeded",
    "MissingL",
    "NegativeEntry",
    "NotAChannel",
    "ParseError",
    "Partition",
    "PartitionStats",
    "RunConfig",
    "ZeroRow",
    "ZeroTotal",
    "approximation_ratio",
    "binary_entropy",
    "bounds_report",
    "boyd_chiang_bound",
    "build_joint",
    "compute_stats",
    "custom_spec",
    "emit",
    "entropy_spec",
    "exhaustive_oracle",
    "fano_bound",
    "gini_spec",
    "greedy_merge",
    "greedy_split",
    "ingest",
    "iterative_refine",
    "lower_bound",
    "main",
    "max_likelihood_partition",
    "n_min",
    "projection_masks",
    "run",
    "s_value",
    "upper_bound",
]

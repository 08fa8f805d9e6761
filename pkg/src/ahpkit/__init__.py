"""Decision analysis with pairwise comparisons that need not be reciprocal."""

from .consistency import (
    ApproxConsistencyResult,
    NotApproximatelyConsistent,
    Permutation,
    RankVector,
    apply_permutation,
    canonical_permutation,
    induced_ranking,
    is_approx_consistent,
    is_consistent,
    rank_vector,
    ranking_labels,
)
from .hierarchy import (
    AddAlternative,
    AddCriterion,
    DeleteAlternative,
    DeleteCriterion,
    HierarchyModel,
    WeightTable,
    WhatIfReport,
    add_alternative,
    add_criterion,
    analyze_matrix,
    apply_action,
    delete_alternative,
    delete_criterion,
    evaluate,
    ratio_model_from_weights,
    synthesize,
    weight_table,
    what_if,
)
from .kendall import (
    RankMatrix,
    ReversalWeights,
    default_reversal_weights,
    kendall_single,
    kendall_w,
    pd_global,
    pd_single,
    pd_weights,
    rank_matrix,
)
from .pcm import (
    AdmissibilityError,
    AdmissibilityReport,
    HomogeneityReport,
    IntervalMatrix,
    PairwiseMatrix,
    ThetaMatrix,
    check,
    from_interval,
    homogeneity_check,
    is_reciprocal,
    mirror_normalize,
    sbd,
    theta,
    to_interval,
    uncertainty_index,
    validate,
)
from .priorities import (
    PriorityVector,
    order_by_weight,
    principal_eigen,
    rank_alternatives,
    rsb_decomposition,
)
from .report import AnalysisReport, HierarchySection, MatrixSection

__version__ = "0.1.0"

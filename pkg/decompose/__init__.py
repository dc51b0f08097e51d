"""
Subgroup decomposition and covariate-binned skew analysis
"""

from .bins import BinMismatch, BinSpec, BinSummary, binned_analysis, partition_by_bins, skew_vs_covariate
from .groups import (
    EmptyGroup,
    GroupedDistribution,
    atkinson_reconcile,
    gini_reconcile,
    subgroup_metrics,
)
from .profile import covariate_profile

__all__ = [
    'BinMismatch',
    'BinSpec',
    'BinSummary',
    'binned_analysis',
    'partition_by_bins',
    'skew_vs_covariate',
    'EmptyGroup',
    'GroupedDistribution',
    'atkinson_reconcile',
    'gini_reconcile',
    'subgroup_metrics',
    'covariate_profile',
]

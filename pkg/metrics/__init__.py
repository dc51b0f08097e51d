"""
Distributional inequality metrics over per-member outcome counts
"""

from .degenerate import Degenerate, Reason, is_degenerate
from .distribution import AtkinsonParams, Distribution, PercentileSpec, make_distribution
from .entropy import atkinson, gini, pairwise_gini
from .equivalence import equivalent_to_top, percent_of_equal_share
from .lorenz import LorenzCurve, lorenz_curve, lorenz_downsample
from .ratio import percentile_ratio, percentile_value, share_ratio
from .report import MetricConfig, MetricReport, full_report
from .selector import MetricSpec
from .tail_share import bottom_share, top_share

__all__ = [
    'Degenerate',
    'Reason',
    'is_degenerate',
    'AtkinsonParams',
    'Distribution',
    'PercentileSpec',
    'make_distribution',
    'atkinson',
    'gini',
    'pairwise_gini',
    'equivalent_to_top',
    'percent_of_equal_share',
    'LorenzCurve',
    'lorenz_curve',
    'lorenz_downsample',
    'percentile_ratio',
    'percentile_value',
    'share_ratio',
    'MetricConfig',
    'MetricReport',
    'full_report',
    'MetricSpec',
    'bottom_share',
    'top_share',
]

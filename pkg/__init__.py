"""
Engagement Skew Toolkit
Distributional inequality metrics for engagement and exposure counts
"""

__version__ = "0.1.0"

from .metrics import MetricConfig, MetricSpec, full_report, make_distribution
from .pipeline import SkewPipeline

__all__ = [
    'MetricConfig',
    'MetricSpec',
    'full_report',
    'make_distribution',
    'SkewPipeline'
]

"""
Outcome table ingestion, aggregation policies and synthetic populations
"""

from .errors import ConflictingCovariate, EmptyAfterFilter, IngestError, MalformedRow, NegativeCount, UnknownDimension
from .synthetic import SyntheticSpec, generate_synthetic, synthetic_table
from .table import AggregationPolicy, RecordTable, TableLoader, load_table, member_frame, to_distribution

__all__ = [
    'ConflictingCovariate',
    'EmptyAfterFilter',
    'IngestError',
    'MalformedRow',
    'NegativeCount',
    'UnknownDimension',
    'SyntheticSpec',
    'generate_synthetic',
    'synthetic_table',
    'AggregationPolicy',
    'RecordTable',
    'TableLoader',
    'load_table',
    'member_frame',
    'to_distribution',
]

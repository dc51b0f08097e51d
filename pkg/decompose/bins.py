"""
Covariate-binned skew analysis: within-bin metrics per covariate bin, and
side-by-side comparison of channels over the same bins.
"""

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd

from config.logging_config import setup_logging
from decompose.groups import GroupedDistribution
from metrics.distribution import AtkinsonParams, make_distribution
from metrics.entropy import atkinson, gini
from metrics.errors import InvalidParameter, SkewError
from metrics.tail_share import top_share

logger = setup_logging(__name__)

EDGES = 'edges'
QUANTILES = 'quantiles'
LOG = 'log'


class BinMismatch(SkewError):
    pass


@dataclass(frozen=True)
class BinSpec:
    """
    How to bin a covariate: explicit half-open edges (last bin closed),
    equal-count quantile bins, or powers of a log base spanning the data.
    """

    mode: str = LOG
    edges: Tuple[float, ...] = ()
    n_bins: int = 0
    base: float = 10.0
    covariate: str = 'follower_count'

    def __post_init__(self):
        if self.mode == EDGES:
            if len(self.edges) < 2 or any(b <= a for a, b in zip(self.edges, self.edges[1:])):
                raise InvalidParameter(f"bin edges must be at least two strictly increasing values, got {self.edges}")
        elif self.mode == QUANTILES:
            if self.n_bins < 2:
                raise InvalidParameter(f"n_bins must be at least 2, got {self.n_bins}")
        elif self.mode == LOG:
            if self.base <= 1:
                raise InvalidParameter(f"log base must exceed 1, got {self.base}")
        else:
            raise InvalidParameter(f"unknown bin mode {self.mode!r}")

    @classmethod
    def parse(cls, text, covariate='follower_count'):
        """'log10' | 'edges:1,10,100' | 'quantiles:5'"""
        text = text.strip()
        try:
            if text.startswith('edges:'):
                edges = tuple(float(v) for v in text[len('edges:'):].split(','))
                return cls(EDGES, edges=edges, covariate=covariate)
            if text.startswith('quantiles:'):
                return cls(QUANTILES, n_bins=int(text[len('quantiles:'):]), covariate=covariate)
            if text.startswith('log'):
                return cls(LOG, base=float(text[len('log'):] or 10), covariate=covariate)
        except ValueError as e:
            raise InvalidParameter(f"bad bin spec {text!r}") from e
        raise InvalidParameter(f"bad bin spec {text!r}; expected logN, edges:... or quantiles:N")

    def resolve_edges(self, covariates):
        if self.mode == EDGES:
            return np.asarray(self.edges, dtype=np.float64)
        positive = covariates[covariates > 0]
        if positive.size == 0:
            return np.asarray([0.0, 1.0])
        low = math.floor(math.log(positive.min(), self.base) + 1e-12)
        high = math.floor(math.log(positive.max(), self.base) + 1e-12) + 1
        edges = self.base ** np.arange(low, high + 1, dtype=np.float64)
        # float powers can land a hair off the data's extremes
        edges[0] = min(edges[0], positive.min())
        edges[-1] = max(edges[-1], np.nextafter(positive.max(), np.inf))
        if positive.size < covariates.size:
            edges = np.concatenate(([0.0], edges))
        return edges


@dataclass
class BinRow:
    index: int
    low: float
    high: float
    count: int
    mean_covariate: Optional[float] = None
    mean_outcome: Optional[float] = None
    gini: Optional[float] = None
    atkinson: Optional[float] = None
    top_share_1: Optional[float] = None
    flag: Optional[str] = None

    @property
    def bounds(self):
        return self.low, self.high


@dataclass
class BinSummary:
    covariate: str
    epsilon: float
    rows: List[BinRow] = field(default_factory=list)
    dropped: int = 0

    @property
    def bounds(self):
        return [row.bounds for row in self.rows]

    @property
    def member_count(self):
        return sum(row.count for row in self.rows)

    def to_frame(self):
        return pd.DataFrame([vars(row) for row in self.rows])


def _split_records(records, covariate):
    if isinstance(records, pd.DataFrame):
        return (records[covariate].to_numpy(dtype=np.float64),
                records['value'].to_numpy(dtype=np.float64))
    pairs = np.asarray(records, dtype=np.float64).reshape(-1, 2)
    return pairs[:, 0], pairs[:, 1]


def assign_bins(covariates, spec):
    """
    Bin index per record plus (low, high) per bin. Records outside explicit
    edges get index -1.
    """
    if spec.mode == QUANTILES:
        order = np.argsort(covariates, kind='stable')
        labels = np.empty(covariates.size, dtype=np.int64)
        bounds = []
        for index, chunk in enumerate(np.array_split(order, spec.n_bins)):
            labels[chunk] = index
            values = covariates[chunk]
            bounds.append((float(values.min()), float(values.max())) if chunk.size else (math.nan, math.nan))
        return labels, bounds

    edges = spec.resolve_edges(covariates)
    n_bins = edges.size - 1
    labels = np.searchsorted(edges, covariates, side='right') - 1
    labels[covariates == edges[-1]] = n_bins - 1
    labels[(labels < 0) | (labels >= n_bins)] = -1
    bounds = [(float(edges[i]), float(edges[i + 1])) for i in range(n_bins)]
    return labels, bounds


def _bin_row(index, bounds, covariates, outcomes, params):
    low, high = bounds
    row = BinRow(index=index, low=low, high=high, count=int(outcomes.size))
    if outcomes.size == 0:
        row.flag = 'empty'
        logger.warning("Bin %d [%g, %g) is empty", index, low, high)
        return row
    row.mean_covariate = float(covariates.mean())
    row.mean_outcome = float(outcomes.mean())
    d = make_distribution(outcomes)
    if d.is_degenerate:
        row.flag = 'zero_total'
        logger.warning("Bin %d [%g, %g) has zero total outcome", index, low, high)
        return row
    row.gini = gini(d)
    row.atkinson = atkinson(d, params)
    row.top_share_1 = top_share(d, 1)
    return row


def binned_analysis(records, spec, epsilon=0.5):
    """Within-bin metrics for (covariate, outcome) records."""
    covariates, outcomes = _split_records(records, spec.covariate)
    params = AtkinsonParams(epsilon)
    labels, bounds = assign_bins(covariates, spec)

    dropped = int((labels < 0).sum())
    if dropped:
        logger.warning("%d records fall outside the bin edges and were dropped", dropped)

    summary = BinSummary(covariate=spec.covariate, epsilon=epsilon, dropped=dropped)
    for index, bin_bounds in enumerate(bounds):
        mask = labels == index
        summary.rows.append(_bin_row(index, bin_bounds, covariates[mask], outcomes[mask], params))
    logger.info("Binned %d records on %s into %d bins", covariates.size, spec.covariate, len(bounds))
    return summary


def partition_by_bins(records, spec):
    """Covariate bins as a member partition, for subgroup reconciliation."""
    covariates, outcomes = _split_records(records, spec.covariate)
    labels, bounds = assign_bins(covariates, spec)
    groups = {}
    for index, (low, high) in enumerate(bounds):
        mask = labels == index
        if mask.any():
            groups[f"{index:03d} [{low:g}, {high:g})"] = outcomes[mask]
    return GroupedDistribution.from_values(groups)


def skew_vs_covariate(summaries):
    """
    Align per-channel bin summaries into one table: per-bin Gini and mean
    outcome for each channel, and each channel's Gini delta against the first.
    """
    if not summaries:
        raise InvalidParameter("at least one channel summary is required")
    channels = list(summaries)
    reference = summaries[channels[0]]
    for channel in channels[1:]:
        bounds = summaries[channel].bounds
        if len(bounds) != len(reference.bounds) or not np.array_equal(
                np.asarray(bounds, dtype=np.float64), np.asarray(reference.bounds, dtype=np.float64), equal_nan=True):
            raise BinMismatch(f"channel {channel!r} uses different bins from {channels[0]!r}")

    table = pd.DataFrame({
        'bin': [row.index for row in reference.rows],
        'low': [row.low for row in reference.rows],
        'high': [row.high for row in reference.rows],
    })
    for channel in channels:
        rows = summaries[channel].rows
        table[f"{channel}:members"] = [row.count for row in rows]
        table[f"{channel}:mean_covariate"] = [row.mean_covariate for row in rows]
        table[f"{channel}:mean_outcome"] = [row.mean_outcome for row in rows]
        table[f"{channel}:gini"] = [row.gini for row in rows]
    base = table[f"{channels[0]}:gini"].astype(float)
    for channel in channels[1:]:
        table[f"{channel}:gini_delta"] = table[f"{channel}:gini"].astype(float) - base
    return table

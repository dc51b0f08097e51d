"""
Subgroup metrics and pooled-versus-subgroup reconciliation for Gini and
Atkinson.

Neither identity is assumed: both sides are computed and the gap is
reported as a residual.
"""

import math
from dataclasses import dataclass, field
from typing import Dict, List

import numpy as np

from config.logging_config import setup_logging
from metrics.distribution import AtkinsonParams, make_distribution
from metrics.entropy import atkinson, gini, log_generalized_mean
from metrics.errors import InvalidParameter, SkewError
from metrics.report import MetricReport, full_report

logger = setup_logging(__name__)


class EmptyGroup(SkewError):
    def __init__(self, key):
        self.key = key
        super().__init__(f"group {key!r} has no members")


@dataclass(frozen=True, eq=False)
class GroupedDistribution:
    groups: Dict[str, object]
    pooled: object

    @classmethod
    def from_values(cls, groups):
        """Build from a mapping of group key -> raw values; keys are kept in sorted order."""
        if not groups:
            raise InvalidParameter("at least one group is required")
        built = {}
        for key in sorted(groups):
            values = np.asarray(groups[key], dtype=np.float64)
            if values.size == 0:
                raise EmptyGroup(key)
            built[key] = make_distribution(values)
        pooled = make_distribution(np.concatenate([d.values for d in built.values()]))
        return cls(built, pooled)

    @property
    def weights(self):
        """Population fraction of each group."""
        return {key: d.size / self.pooled.size for key, d in self.groups.items()}


@dataclass
class SubgroupReport:
    groups: Dict[str, MetricReport]
    pooled: MetricReport


def _report_or_undefined(d, config, label):
    if d.is_degenerate:
        logger.warning("Group %s has zero total; metrics undefined", label)
        return MetricReport.undefined(label, d)
    return full_report(d, config, label)


def subgroup_metrics(g, config=None):
    """Full report per group and for the pooled population."""
    groups = {key: _report_or_undefined(d, config, key) for key, d in g.groups.items()}
    return SubgroupReport(groups, _report_or_undefined(g.pooled, config, 'pooled'))


@dataclass
class GiniReconciliation:
    pooled_gini: float
    weighted_subgroup_gini: float
    residual: float
    between_gini: float
    overlap: float
    weights: Dict[str, float]
    group_ginis: Dict[str, float]
    degenerate_groups: List[str] = field(default_factory=list)


def _degenerate_keys(g):
    keys = [key for key, d in g.groups.items() if d.is_degenerate]
    for key in keys:
        logger.warning("Group %s has zero total; excluded from reconciliation", key)
    return keys


def gini_reconcile(g):
    """
    Pooled Gini against the population-weighted mean of subgroup Ginis. The
    residual is split into the Gini of group means (between) and the rest
    (overlap between group value ranges).
    """
    pooled = gini(g.pooled)
    degenerate = _degenerate_keys(g)
    weights = g.weights
    group_ginis = {key: gini(d) for key, d in g.groups.items() if key not in degenerate}
    weighted = sum(weights[key] * value for key, value in group_ginis.items())

    means = np.repeat([d.mean for d in g.groups.values()], [d.size for d in g.groups.values()])
    between = gini(make_distribution(means))
    residual = pooled - weighted
    logger.info("Gini reconciliation: pooled=%.6f weighted=%.6f residual=%.6f", pooled, weighted, residual)
    return GiniReconciliation(
        pooled_gini=pooled,
        weighted_subgroup_gini=weighted,
        residual=residual,
        between_gini=between,
        overlap=residual - between,
        weights=weights,
        group_ginis=group_ginis,
        degenerate_groups=degenerate,
    )


@dataclass
class AtkinsonReconciliation:
    epsilon: float
    pooled: float
    within_component: float
    between_component: float
    residual: float
    additive_residual: float
    group_indices: Dict[str, float]
    degenerate_groups: List[str] = field(default_factory=list)


def atkinson_reconcile(g, epsilon=0.5):
    """
    Within/between split through equally-distributed-equivalent (EDE) values.

    between = 1 - M(group means) / mean and within = 1 - M(group EDEs) /
    M(group means), every M a population-weighted power mean of order
    1 - epsilon. The product form (1 - within)(1 - between) = 1 - pooled
    leaves `residual` at rounding level; `additive_residual` is what remains
    when the two components are simply summed. Zero-total groups enter the
    power means with mean and EDE 0 but get no group index.
    """
    params = AtkinsonParams(epsilon)
    pooled = atkinson(g.pooled, params)
    degenerate = _degenerate_keys(g)
    group_indices = {key: atkinson(d, params) for key, d in g.groups.items() if key not in degenerate}

    if epsilon == 0:
        within = between = 0.0
    else:
        order = 1.0 - epsilon
        sizes = np.asarray([d.size for d in g.groups.values()], dtype=np.float64)
        means = np.asarray([d.mean for d in g.groups.values()])
        edes = np.asarray([math.exp(log_generalized_mean(d.values, order)) for d in g.groups.values()])
        log_mean = math.log(np.dot(sizes, means) / sizes.sum())
        log_means_ede = log_generalized_mean(means, order, sizes)
        log_within_ede = log_generalized_mean(edes, order, sizes)
        between = -math.expm1(log_means_ede - log_mean)
        within = 1.0 if log_within_ede == -math.inf else -math.expm1(log_within_ede - log_means_ede)

    residual = pooled - (within + between - within * between)
    logger.info("Atkinson(%g) reconciliation: pooled=%.6f within=%.6f between=%.6f",
                epsilon, pooled, within, between)
    return AtkinsonReconciliation(
        epsilon=epsilon,
        pooled=pooled,
        within_component=within,
        between_component=between,
        residual=residual,
        additive_residual=pooled - (within + between),
        group_indices=group_indices,
        degenerate_groups=degenerate,
    )

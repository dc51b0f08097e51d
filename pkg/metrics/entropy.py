"""
Entropy-family metrics: Gini and Atkinson.
"""

import math

import numpy as np
from scipy.special import logsumexp

from metrics.distribution import AtkinsonParams


def gini(d):
    """
    Gini index from the sorted-rank identity.

    Uses sum((2i - K - 1) * V_i) / (K * total) with 1-based ascending ranks,
    which equals the mean absolute pairwise difference over twice the mean.
    """
    d.require_total('gini')
    k = d.size
    weights = 2.0 * np.arange(1, k + 1, dtype=np.float64) - (k + 1)
    value = float(np.dot(weights, d.values)) / (k * d.total)
    return min(max(value, 0.0), 1.0)


def pairwise_gini(values):
    """O(K^2) pairwise Gini; an oracle for small inputs only."""
    values = np.asarray(values, dtype=np.float64)
    total = values.sum()
    if total == 0:
        return float('nan')
    diffs = np.abs(values[:, None] - values[None, :]).sum()
    return float(diffs / (2.0 * values.size * total))


def log_generalized_mean(values, order, weights=None):
    """
    Natural log of the (weighted) power mean of order `order`.

    Returns -inf when the mean is zero: all values zero, or any zero value
    with a non-positive order.
    """
    values = np.asarray(values, dtype=np.float64)
    if weights is None:
        weights = np.ones_like(values)
    else:
        weights = np.asarray(weights, dtype=np.float64)
    keep = weights > 0
    values, weights = values[keep], weights[keep]
    log_total_weight = math.log(weights.sum())

    positive = values > 0
    if not positive.any():
        return -math.inf
    if order <= 0 and not positive.all():
        return -math.inf

    logs = np.log(values[positive])
    w = weights[positive]
    if order == 0:
        return float(np.dot(w, logs) / weights.sum())
    # zeros contribute nothing to the power sum when order > 0
    return float((logsumexp(order * logs, b=w) - log_total_weight) / order)


def generalized_mean(values, order, weights=None):
    return math.exp(log_generalized_mean(values, order, weights))


def atkinson_from_log_means(log_ede, mean):
    """1 - EDE/mean, with the ratio kept in log space."""
    if log_ede == -math.inf:
        return 1.0
    value = -math.expm1(log_ede - math.log(mean))
    return min(max(value, 0.0), 1.0)


def atkinson(d, params=None):
    """
    Atkinson index 1 - M_{1-eps}(V) / mean(V).

    epsilon = 1 uses the geometric mean; any zero value then drives the index
    to 1, as it does for every epsilon > 1.
    """
    params = params or AtkinsonParams()
    d.require_total('atkinson')
    if params.epsilon == 0:
        return 0.0
    log_ede = log_generalized_mean(d.values, 1.0 - params.epsilon)
    return atkinson_from_log_means(log_ede, d.mean)

"""
Ratio-family metrics: percentile ratio and share ratio.

Both return a Degenerate value instead of raising when the low side is zero;
on zero-heavy engagement data that is a finding, not a failure.
"""

from config.logging_config import setup_logging
from metrics.degenerate import Degenerate, Reason

logger = setup_logging(__name__)


def percentile_value(d, spec):
    """Nearest-rank value: values[ceil(p/100 * K) - 1]."""
    return float(d.values[spec.rank(d.size) - 1])


def percentile_ratio(d, high, low):
    d.require_total('percentile_ratio')
    denominator = percentile_value(d, low)
    if denominator == 0:
        logger.debug("Percentile ratio %g/%g undefined: zero low percentile", high.p, low.p)
        return Degenerate(Reason.ZERO_DENOMINATOR, 'zero low percentile')
    return percentile_value(d, high) / denominator


def share_ratio(d, high, low):
    """
    Sum strictly above the high rank boundary over the sum at or below the
    low rank boundary.
    """
    d.require_total('share_ratio')
    bottom = d.sum_of_bottom(low.rank(d.size))
    if bottom == 0:
        logger.debug("Share ratio %g/%g undefined: zero bottom share", high.p, low.p)
        return Degenerate(Reason.ZERO_DENOMINATOR, 'zero bottom share')
    top = d.sum_of_top(d.size - high.rank(d.size))
    return top / bottom

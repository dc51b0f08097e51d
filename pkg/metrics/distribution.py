"""
The Distribution type every metric consumes, and its parameter types.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from config.logging_config import setup_logging
from metrics.errors import DegenerateTotal, EmptyInput, InvalidParameter, NegativeValue, NonFiniteValue

logger = setup_logging(__name__)


def _readonly(array):
    array.flags.writeable = False
    return array


class Distribution:
    """
    Ascending-sorted, non-negative outcome values with prefix sums.

    Instances are immutable once built, so one Distribution can be read from
    any number of threads.
    """

    __slots__ = ('values', 'prefix_sums', 'total')

    def __init__(self, sorted_values):
        self.values = _readonly(sorted_values)
        # ascending accumulation keeps small values from being swamped
        self.prefix_sums = _readonly(np.cumsum(sorted_values, dtype=np.float64))
        self.total = float(self.prefix_sums[-1])

    @classmethod
    def from_sorted(cls, sorted_values):
        """Wrap values already known to be sorted, finite and non-negative."""
        return cls(np.asarray(sorted_values, dtype=np.float64))

    @property
    def size(self):
        return int(self.values.size)

    @property
    def mean(self):
        return self.total / self.size

    @property
    def is_degenerate(self):
        return self.total == 0.0

    def require_total(self, metric=None):
        if self.total == 0.0:
            raise DegenerateTotal(metric)

    def share_below(self, count):
        """Fraction of the total held by the `count` smallest members."""
        if count <= 0:
            return 0.0
        return float(self.prefix_sums[count - 1]) / self.total

    def sum_of_bottom(self, count):
        if count <= 0:
            return 0.0
        return float(self.prefix_sums[count - 1])

    def sum_of_top(self, count):
        if count <= 0:
            return 0.0
        if count >= self.size:
            return self.total
        return self.total - float(self.prefix_sums[self.size - count - 1])

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"Distribution(size={self.size}, total={self.total:g})"


def make_distribution(raw_values):
    """Validate, sort and wrap raw outcome values."""
    values = np.asarray(list(raw_values) if not hasattr(raw_values, '__len__') else raw_values,
                        dtype=np.float64).ravel()
    if values.size == 0:
        raise EmptyInput()

    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        raise NonFiniteValue(int(bad[0]))
    negative = np.flatnonzero(values < 0)
    if negative.size:
        raise NegativeValue(int(negative[0]))

    distribution = Distribution(np.sort(values, kind='stable'))
    if distribution.is_degenerate:
        logger.debug("Built all-zero distribution of size %d", distribution.size)
    return distribution


@dataclass(frozen=True)
class PercentileSpec:
    """A percentile in (0, 100) resolved with the nearest-rank rule."""

    p: float

    def __post_init__(self):
        if not 0 < self.p < 100:
            raise InvalidParameter(f"percentile must lie in (0, 100), got {self.p}")

    def rank(self, size):
        """1-based nearest rank ceil(p/100 * K), computed on the decimal value of p."""
        return rank_for_fraction(self.p, size)


def rank_for_fraction(percent, size):
    exact = Fraction(repr(float(percent))) * size / 100
    return min(max(math.ceil(exact), 1), size)


@dataclass(frozen=True)
class AtkinsonParams:
    epsilon: float = 0.5

    def __post_init__(self):
        if not (self.epsilon >= 0 and math.isfinite(self.epsilon)):
            raise InvalidParameter(f"epsilon must be a finite value >= 0, got {self.epsilon}")

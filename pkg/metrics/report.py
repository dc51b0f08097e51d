"""
Full metric report for one distribution.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from config.logging_config import setup_logging
from metrics.degenerate import Degenerate, Reason, is_degenerate
from metrics.distribution import AtkinsonParams, PercentileSpec
from metrics.entropy import atkinson, gini
from metrics.equivalence import equivalent_to_top, percent_of_equal_share
from metrics.errors import InvalidParameter
from metrics.lorenz import lorenz_curve
from metrics.ratio import percentile_ratio, share_ratio
from metrics.selector import MetricSpec, parse_ratio_pair
from metrics.tail_share import bottom_share, top_share

logger = setup_logging(__name__)

# documented value ranges, (low, high, low_inclusive, high_inclusive)
RANGES = {
    'gini': (0.0, 1.0, True, False),
    'atkinson': (0.0, 1.0, True, True),
    'percentile_ratio': (0.0, float('inf'), True, False),
    'share_ratio': (0.0, float('inf'), True, False),
    'top_share': (0.0, 100.0, False, True),
    'bottom_share': (0.0, 100.0, True, True),
    'equal_share': (0.0, 100.0, False, False),
    'equivalent_to_top': (0.0, 100.0, False, True),
}


def in_range(metric, value):
    low, high, low_inclusive, high_inclusive = RANGES[metric]
    above = value >= low if low_inclusive else value > low
    below = value <= high if high_inclusive else value < high
    return above and below


def _tuple_of_floats(values):
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class MetricConfig:
    """Which metrics a report evaluates, and with what parameters."""

    epsilons: Tuple[float, ...] = (0.5,)
    top_x: Tuple[float, ...] = (1.0, 10.0)
    bottom_x: Tuple[float, ...] = (10.0,)
    ratio_pairs: Tuple[Tuple[float, float], ...] = ((80.0, 20.0), (90.0, 10.0))
    equivalent_x: Tuple[float, ...] = (10.0,)

    def __post_init__(self):
        for epsilon in self.epsilons:
            AtkinsonParams(epsilon)
        for high, low in self.ratio_pairs:
            PercentileSpec(high), PercentileSpec(low)
        for x in self.top_x + self.bottom_x:
            if not 0 < x <= 100:
                raise InvalidParameter(f"share percentage must lie in (0, 100], got {x}")
        for x in self.equivalent_x:
            if not 0 < x < 100:
                raise InvalidParameter(f"top percentage must lie in (0, 100), got {x}")

    @classmethod
    def from_settings(cls, metrics):
        return cls(
            epsilons=_tuple_of_floats(metrics.get('epsilon', [0.5])),
            top_x=_tuple_of_floats(metrics.get('top_x', [1, 10])),
            bottom_x=_tuple_of_floats(metrics.get('bottom_x', [10])),
            ratio_pairs=tuple(parse_ratio_pair(str(r)) for r in metrics.get('ratios', ['80/20'])),
            equivalent_x=_tuple_of_floats(metrics.get('equivalent_x', [10])),
        )

    def to_specs(self):
        specs = [MetricSpec('gini')]
        specs += [MetricSpec('atkinson', e) for e in self.epsilons]
        specs += [MetricSpec('top_share', x) for x in self.top_x]
        specs += [MetricSpec('bottom_share', x) for x in self.bottom_x]
        specs += [MetricSpec('percentile_ratio', pair) for pair in self.ratio_pairs]
        specs += [MetricSpec('share_ratio', pair) for pair in self.ratio_pairs]
        specs += [MetricSpec('equal_share')]
        specs += [MetricSpec('equivalent_to_top', x) for x in self.equivalent_x]
        return specs


@dataclass
class MetricReport:
    label: str
    size: int
    total: float
    gini: Optional[float] = None
    atkinson: List[Tuple[float, float]] = field(default_factory=list)
    top_shares: List[Tuple[float, float]] = field(default_factory=list)
    bottom_shares: List[Tuple[float, float]] = field(default_factory=list)
    percentile_ratios: List[Tuple[Tuple[float, float], object]] = field(default_factory=list)
    share_ratios: List[Tuple[Tuple[float, float], object]] = field(default_factory=list)
    equal_share_pct: Optional[float] = None
    equivalent_to_top: List[Tuple[float, object]] = field(default_factory=list)
    degeneracies: List[Tuple[str, str]] = field(default_factory=list)

    @classmethod
    def undefined(cls, label, d):
        """Report for a zero-total distribution: every metric undefined."""
        return cls(label=label, size=d.size, total=d.total,
                   degeneracies=[('all', Reason.ZERO_TOTAL.value)])

    @property
    def is_undefined(self):
        return self.gini is None

    @property
    def ratio_results(self):
        results = {}
        for (high, low), value in self.percentile_ratios:
            results[MetricSpec('percentile_ratio', (high, low)).label] = value
        for (high, low), value in self.share_ratios:
            results[MetricSpec('share_ratio', (high, low)).label] = value
        return results

    def values(self):
        """Ordered (metric label, value) pairs; values are floats, Degenerate or None."""
        pairs = [('gini', self.gini)]
        pairs += [(MetricSpec('atkinson', e).label, v) for e, v in self.atkinson]
        pairs += [(MetricSpec('top_share', x).label, v) for x, v in self.top_shares]
        pairs += [(MetricSpec('bottom_share', x).label, v) for x, v in self.bottom_shares]
        pairs += list(self.ratio_results.items())
        pairs += [('equal_share', self.equal_share_pct)]
        pairs += [(MetricSpec('equivalent_to_top', x).label, v) for x, v in self.equivalent_to_top]
        return pairs

    def to_row(self, inverted=False):
        """
        Flat mapping for output. With `inverted`, equivalence metrics are shown
        as 100 - value under a `100-` prefixed column.
        """
        row = {'slice': self.label, 'size': self.size, 'total': self.total}
        for name, value in self.values():
            if inverted and name.split(':')[0] in ('equal_share', 'equivalent_to_top'):
                name = f"100-{name}"
                if value is not None and not is_degenerate(value):
                    value = 100.0 - value
            row[name] = value
        return row

    def range_violations(self):
        violations = []
        for name, value in self.values():
            if value is None or is_degenerate(value):
                continue
            if not in_range(name.split(':')[0], value):
                violations.append((name, value))
        return violations


def full_report(d, config=None, label='all'):
    """
    Evaluate every configured metric once. Ratio and equivalence degeneracies
    are recorded in the report; only DegenerateTotal propagates.
    """
    config = config or MetricConfig()
    report = MetricReport(label=label, size=d.size, total=d.total)
    report.gini = gini(d)
    report.atkinson = [(e, atkinson(d, AtkinsonParams(e))) for e in config.epsilons]
    report.top_shares = [(x, top_share(d, x)) for x in config.top_x]
    report.bottom_shares = [(x, bottom_share(d, x)) for x in config.bottom_x]

    for high, low in config.ratio_pairs:
        high_spec, low_spec = PercentileSpec(high), PercentileSpec(low)
        report.percentile_ratios.append(((high, low), percentile_ratio(d, high_spec, low_spec)))
        report.share_ratios.append(((high, low), share_ratio(d, high_spec, low_spec)))

    curve = lorenz_curve(d)
    report.equal_share_pct = percent_of_equal_share(d, curve)
    report.equivalent_to_top = [(x, equivalent_to_top(d, x, curve)) for x in config.equivalent_x]

    for name, value in report.values():
        if isinstance(value, Degenerate):
            report.degeneracies.append((name, value.reason.value))
    if report.degeneracies:
        logger.warning("Slice %s: %d undefined metric(s): %s", label, len(report.degeneracies),
                       ', '.join(name for name, _ in report.degeneracies))
    logger.info("Computed report for slice %s (K=%d, gini=%.6f)", label, d.size, report.gini)
    return report

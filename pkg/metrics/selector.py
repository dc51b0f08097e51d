"""
Metric selectors: a name plus parameters, parsed from `name[:param]` strings.
"""

from dataclasses import dataclass

from metrics.distribution import AtkinsonParams, PercentileSpec
from metrics.entropy import atkinson, gini
from metrics.equivalence import equivalent_to_top, percent_of_equal_share
from metrics.errors import InvalidParameter
from metrics.ratio import percentile_ratio, share_ratio
from metrics.tail_share import bottom_share, top_share

FAMILIES = {
    'gini': 'entropy',
    'atkinson': 'entropy',
    'percentile_ratio': 'ratio',
    'share_ratio': 'ratio',
    'top_share': 'tail_share',
    'bottom_share': 'tail_share',
    'equal_share': 'equivalence',
    'equivalent_to_top': 'equivalence',
}

_NO_PARAM = {'gini', 'equal_share'}
_PAIR_PARAM = {'percentile_ratio', 'share_ratio'}


def parse_ratio_pair(text):
    """'80/20' -> (80.0, 20.0)"""
    try:
        high, low = (float(part) for part in text.split('/'))
    except ValueError as e:
        raise InvalidParameter(f"ratio must look like HI/LO, got {text!r}") from e
    if high <= low:
        raise InvalidParameter(f"ratio high percentile must exceed low, got {text!r}")
    PercentileSpec(high), PercentileSpec(low)
    return high, low


def _format_number(value):
    return f"{value:g}"


@dataclass(frozen=True)
class MetricSpec:
    name: str
    param: object = None

    def __post_init__(self):
        if self.name not in FAMILIES:
            raise InvalidParameter(f"unknown metric {self.name!r}; expected one of {sorted(FAMILIES)}")
        if self.name in _NO_PARAM and self.param is not None:
            raise InvalidParameter(f"metric {self.name!r} takes no parameter")
        if self.name not in _NO_PARAM and self.param is None:
            raise InvalidParameter(f"metric {self.name!r} needs a parameter")

    @classmethod
    def parse(cls, text):
        name, _, raw = text.strip().partition(':')
        name = name.strip()
        if name not in FAMILIES:
            raise InvalidParameter(f"unknown metric {name!r}; expected one of {sorted(FAMILIES)}")
        if not raw:
            return cls(name)
        if name in _PAIR_PARAM:
            return cls(name, parse_ratio_pair(raw))
        try:
            return cls(name, float(raw))
        except ValueError as e:
            raise InvalidParameter(f"bad parameter for {name}: {raw!r}") from e

    @property
    def family(self):
        return FAMILIES[self.name]

    @property
    def label(self):
        if self.param is None:
            return self.name
        if self.name in _PAIR_PARAM:
            high, low = self.param
            return f"{self.name}:{_format_number(high)}/{_format_number(low)}"
        return f"{self.name}:{_format_number(self.param)}"

    def evaluate(self, d):
        """Metric value on `d`: a float or a Degenerate. Raises DegenerateTotal."""
        if self.name == 'gini':
            return gini(d)
        if self.name == 'atkinson':
            return atkinson(d, AtkinsonParams(self.param))
        if self.name == 'top_share':
            return top_share(d, self.param)
        if self.name == 'bottom_share':
            return bottom_share(d, self.param)
        if self.name == 'equal_share':
            return percent_of_equal_share(d)
        if self.name == 'equivalent_to_top':
            return equivalent_to_top(d, self.param)
        high, low = self.param
        if self.name == 'percentile_ratio':
            return percentile_ratio(d, PercentileSpec(high), PercentileSpec(low))
        return share_ratio(d, PercentileSpec(high), PercentileSpec(low))

    def __str__(self):
        return self.label

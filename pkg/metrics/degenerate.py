from dataclasses import dataclass
from enum import Enum


class Reason(str, Enum):
    ZERO_DENOMINATOR = 'zero_denominator'
    NO_SOLUTION = 'no_solution'
    ZERO_TOTAL = 'zero_total'


@dataclass(frozen=True)
class Degenerate:
    """A metric value that is undefined for the distribution it was asked of."""

    reason: Reason
    detail: str = ''

    def describe(self):
        return f"undefined ({self.detail or self.reason.value.replace('_', ' ')})"


def is_degenerate(value):
    return isinstance(value, Degenerate)

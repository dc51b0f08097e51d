"""
Equivalence-family metrics, read off the interpolated Lorenz curve.
"""

from metrics.degenerate import Degenerate, Reason
from metrics.distribution import rank_for_fraction
from metrics.errors import InvalidParameter
from metrics.lorenz import lorenz_curve


def percent_of_equal_share(d, curve=None):
    """Population percentage whose bottom share is exactly half the total."""
    curve = curve or lorenz_curve(d)
    return 100.0 * curve.invert(0.5)


def equivalent_to_top(d, x_percent, curve=None):
    """
    Bottom population percentage holding as much as the top x%.

    Degenerate when everyone outside the top x% holds nothing, since the
    bottom side then only catches up at the full population.
    """
    if not 0 < x_percent < 100:
        raise InvalidParameter(f"top percentage must lie in (0, 100), got {x_percent}")
    curve = curve or lorenz_curve(d)
    top_count = rank_for_fraction(x_percent, d.size)
    rest = d.sum_of_bottom(d.size - top_count)
    if rest == 0:
        return Degenerate(Reason.NO_SOLUTION, 'no bottom share to match')
    target = d.sum_of_top(top_count) / d.total
    return 100.0 * curve.invert(target)

from metrics.distribution import rank_for_fraction
from metrics.errors import InvalidParameter


def _member_count(x_percent, size):
    if not 0 < x_percent <= 100:
        raise InvalidParameter(f"share percentage must lie in (0, 100], got {x_percent}")
    return rank_for_fraction(x_percent, size)


def top_share(d, x_percent):
    """Percentage of the total held by the top ceil(x/100 * K) members."""
    d.require_total('top_share')
    count = _member_count(x_percent, d.size)
    return 100.0 * d.sum_of_top(count) / d.total


def bottom_share(d, x_percent):
    """Percentage of the total held by the bottom ceil(x/100 * K) members."""
    d.require_total('bottom_share')
    count = _member_count(x_percent, d.size)
    return 100.0 * d.sum_of_bottom(count) / d.total

import numpy as np
import pytest

from metrics.degenerate import Degenerate, Reason, is_degenerate
from metrics.distribution import PercentileSpec, make_distribution
from metrics.errors import DegenerateTotal, InvalidParameter
from metrics.ratio import percentile_ratio, percentile_value, share_ratio
from metrics.tail_share import bottom_share, top_share

P80, P20 = PercentileSpec(80), PercentileSpec(20)


class TestPercentileRatio:
    def test_nearest_rank_values(self):
        d = make_distribution(range(1, 11))
        assert percentile_value(d, PercentileSpec(90)) == 9.0
        assert percentile_ratio(d, PercentileSpec(90), PercentileSpec(10)) == pytest.approx(9.0)

    def test_zero_low_percentile_is_degenerate(self):
        value = percentile_ratio(make_distribution([0, 0, 0, 0, 10]), P80, P20)
        assert isinstance(value, Degenerate)
        assert value.reason is Reason.ZERO_DENOMINATOR
        assert value.describe() == 'undefined (zero low percentile)'

    def test_zero_total_raises(self):
        with pytest.raises(DegenerateTotal):
            percentile_ratio(make_distribution([0, 0]), P80, P20)


class TestShareRatio:
    def test_top_over_bottom(self):
        # top 2 members hold 19, bottom 2 hold 3
        assert share_ratio(make_distribution(range(1, 11)), P80, P20) == pytest.approx(19 / 3)

    def test_equal_values(self):
        assert share_ratio(make_distribution([4] * 10), P80, P20) == pytest.approx(1.0)

    def test_zero_bottom_share_is_degenerate(self):
        value = share_ratio(make_distribution([0, 0, 0, 0, 10]), P80, P20)
        assert is_degenerate(value)
        assert value.describe() == 'undefined (zero bottom share)'

    def test_symmetric_pair_is_at_least_one(self, corpus):
        rng = np.random.default_rng(5)
        for values in corpus:
            k = 5 * int(rng.integers(1, 40))
            d = make_distribution(rng.choice(values, size=k))
            if d.is_degenerate:
                continue
            value = share_ratio(d, P80, P20)
            if not is_degenerate(value):
                assert value >= 1.0 - 1e-12


class TestDegeneracyReproduction:
    def test_degenerate_exactly_when_bottom_fifth_is_empty(self):
        rng = np.random.default_rng(77)
        seen = {True: 0, False: 0}
        for _ in range(500):
            k = int(rng.integers(5, 300))
            zero_fraction = rng.uniform(0.0, 0.5)
            values = np.where(rng.random(k) < zero_fraction, 0.0, rng.lognormal(0.0, 2.0, k))
            if values.sum() == 0:
                values[0] = 1.0
            d = make_distribution(values)
            empty_bottom = d.sum_of_bottom(P20.rank(d.size)) == 0
            seen[empty_bottom] += 1
            assert is_degenerate(share_ratio(d, P80, P20)) == empty_bottom
            assert is_degenerate(percentile_ratio(d, P80, P20)) == empty_bottom
        assert seen[True] and seen[False]


class TestTailShares:
    def test_top_share_of_equal_population(self):
        assert top_share(make_distribution([1] * 100), 1) == pytest.approx(1.0)

    def test_single_holder(self):
        d = make_distribution([0, 0, 0, 0, 10])
        assert top_share(d, 20) == pytest.approx(100.0)
        assert bottom_share(d, 80) == pytest.approx(0.0)

    def test_bottom_share_of_equal_population(self):
        assert bottom_share(make_distribution([3] * 10), 80) == pytest.approx(80.0)

    def test_full_population(self):
        d = make_distribution([1, 2, 3])
        assert top_share(d, 100) == pytest.approx(100.0)
        assert bottom_share(d, 100) == pytest.approx(100.0)

    @pytest.mark.parametrize('x', [0, -1, 100.5])
    def test_invalid_percentage(self, x):
        with pytest.raises(InvalidParameter):
            top_share(make_distribution([1, 2]), x)

    def test_rounds_member_count_up(self):
        # 10% of 15 members is 1.5, so the top 2 members count
        d = make_distribution(range(1, 16))
        assert top_share(d, 10) == pytest.approx(100.0 * 29 / 120)

    def test_scale_invariance(self, corpus):
        for values in corpus:
            d = make_distribution(values)
            assert top_share(make_distribution(values * 1e-6), 10) == pytest.approx(top_share(d, 10), abs=1e-9)
            assert top_share(make_distribution(values * 1e9), 10) == pytest.approx(top_share(d, 10), abs=1e-9)

    @pytest.mark.parametrize('copies', [2, 3, 7])
    def test_replication_invariance(self, copies):
        # holds whenever x% of K is a whole number of members
        rng = np.random.default_rng(11)
        for _ in range(50):
            values = rng.lognormal(0.0, 2.0, 10 * int(rng.integers(1, 20)))
            d, replicated = make_distribution(values), make_distribution(np.tile(values, copies))
            assert top_share(replicated, 10) == pytest.approx(top_share(d, 10), abs=1e-9)

import numpy as np
import pytest

from metrics.degenerate import Reason, is_degenerate
from metrics.distribution import make_distribution
from metrics.equivalence import equivalent_to_top, percent_of_equal_share
from metrics.errors import DegenerateTotal, InvalidParameter
from metrics.lorenz import lorenz_curve


class TestPercentOfEqualShare:
    def test_crossing_on_vertex(self):
        assert percent_of_equal_share(make_distribution([1, 1, 2])) == pytest.approx(200 / 3)

    def test_equal_population(self):
        assert percent_of_equal_share(make_distribution([5] * 10)) == pytest.approx(50.0)

    def test_single_holder(self):
        # crossing interpolated on the last segment, from (0.75, 0) to (1, 1)
        assert percent_of_equal_share(make_distribution([0, 0, 0, 1])) == pytest.approx(87.5)

    def test_reuses_curve(self):
        d = make_distribution([3, 1, 4, 1, 5])
        assert percent_of_equal_share(d, lorenz_curve(d)) == percent_of_equal_share(d)

    def test_replication_invariance(self, corpus):
        for values in corpus:
            base = percent_of_equal_share(make_distribution(values))
            for copies in (2, 3, 7):
                replicated = percent_of_equal_share(make_distribution(np.tile(values, copies)))
                assert replicated == pytest.approx(base, abs=1e-9)

    def test_zero_total_raises(self):
        with pytest.raises(DegenerateTotal):
            percent_of_equal_share(make_distribution([0, 0]))


class TestEquivalentToTop:
    def test_interpolated_on_last_segment(self):
        # top member holds 0.6; reached between (0.8, 0.4) and (1, 1)
        assert equivalent_to_top(make_distribution([1, 1, 1, 1, 6]), 20) == pytest.approx(260 / 3)

    def test_equal_population(self):
        assert equivalent_to_top(make_distribution([1] * 10), 10) == pytest.approx(10.0)

    def test_no_bottom_share_is_degenerate(self):
        value = equivalent_to_top(make_distribution([0, 0, 0, 0, 10]), 20)
        assert is_degenerate(value)
        assert value.reason is Reason.NO_SOLUTION

    @pytest.mark.parametrize('x', [0, 100, 120])
    def test_invalid_percentage(self, x):
        with pytest.raises(InvalidParameter):
            equivalent_to_top(make_distribution([1, 2, 3]), x)

    @pytest.mark.parametrize('copies', [2, 3, 7])
    def test_replication_invariance(self, copies):
        # the top x% must be a whole number of members
        rng = np.random.default_rng(13)
        for _ in range(50):
            k = 10 * int(rng.integers(1, 20))
            values = np.where(rng.random(k) < 0.5, 0.0, rng.lognormal(0.0, 2.0, k))
            values[-1] += 1.0
            base = equivalent_to_top(make_distribution(values), 10)
            replicated = equivalent_to_top(make_distribution(np.tile(values, copies)), 10)
            if is_degenerate(base):
                assert is_degenerate(replicated)
            else:
                assert replicated == pytest.approx(base, abs=1e-9)

    def test_range(self, corpus):
        for values in corpus:
            value = equivalent_to_top(make_distribution(values), 10)
            if not is_degenerate(value):
                assert 0.0 < value <= 100.0

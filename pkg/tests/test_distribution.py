import math

import numpy as np
import pytest

from metrics.distribution import AtkinsonParams, PercentileSpec, make_distribution, rank_for_fraction
from metrics.errors import DegenerateTotal, EmptyInput, InvalidParameter, NegativeValue, NonFiniteValue


class TestMakeDistribution:
    def test_sorts_and_accumulates(self):
        d = make_distribution([3, 1, 2])
        assert d.values.tolist() == [1.0, 2.0, 3.0]
        assert d.prefix_sums.tolist() == [1.0, 3.0, 6.0]
        assert d.total == 6.0
        assert d.size == 3
        assert d.mean == pytest.approx(2.0)

    def test_accepts_iterators(self):
        assert make_distribution(iter([2, 1])).values.tolist() == [1.0, 2.0]

    def test_empty_input(self):
        with pytest.raises(EmptyInput):
            make_distribution([])

    def test_negative_value_reports_index(self):
        with pytest.raises(NegativeValue) as excinfo:
            make_distribution([1, -2, 3])
        assert excinfo.value.index == 1

    @pytest.mark.parametrize('bad', [math.nan, math.inf, -math.inf])
    def test_non_finite_value_reports_index(self, bad):
        with pytest.raises(NonFiniteValue) as excinfo:
            make_distribution([1, 2, bad])
        assert excinfo.value.index == 2

    def test_arrays_are_read_only(self):
        d = make_distribution([1, 2])
        with pytest.raises(ValueError):
            d.values[0] = 5.0

    def test_all_zero_is_degenerate(self):
        d = make_distribution([0, 0, 0])
        assert d.is_degenerate
        with pytest.raises(DegenerateTotal):
            d.require_total('gini')

    def test_tail_sums(self):
        d = make_distribution([1, 2, 3, 4])
        assert d.sum_of_bottom(0) == 0.0
        assert d.sum_of_bottom(2) == 3.0
        assert d.sum_of_top(1) == 4.0
        assert d.sum_of_top(3) == 9.0
        assert d.sum_of_top(10) == 10.0
        assert d.share_below(2) == pytest.approx(0.3)


class TestPercentileSpec:
    @pytest.mark.parametrize('p', [0, 100, -5, 120])
    def test_out_of_range(self, p):
        with pytest.raises(InvalidParameter):
            PercentileSpec(p)

    @pytest.mark.parametrize('p, size, rank', [
        (70, 10, 7),
        (80, 5, 4),
        (20, 5, 1),
        (1, 5, 1),
        (99.9, 1000, 999),
        (50, 1, 1),
    ])
    def test_nearest_rank(self, p, size, rank):
        assert PercentileSpec(p).rank(size) == rank

    def test_rank_for_full_population(self):
        assert rank_for_fraction(100, 7) == 7


class TestAtkinsonParams:
    @pytest.mark.parametrize('epsilon', [-0.1, math.inf, math.nan])
    def test_rejects_invalid_epsilon(self, epsilon):
        with pytest.raises(InvalidParameter):
            AtkinsonParams(epsilon)

    def test_default(self):
        assert AtkinsonParams().epsilon == 0.5


def test_distribution_is_shareable_between_threads():
    from concurrent.futures import ThreadPoolExecutor

    d = make_distribution(np.arange(100))
    with ThreadPoolExecutor(max_workers=4) as pool:
        totals = list(pool.map(lambda _: d.sum_of_top(10), range(8)))
    assert totals == [945.0] * 8

"""
Bootstrap resampling of the member population.

Each resample draws its own generator from (seed, resample index), so results
do not depend on how resamples are scheduled across workers.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from config.logging_config import setup_logging
from metrics.degenerate import is_degenerate
from metrics.distribution import Distribution
from metrics.errors import DegenerateTotal, InvalidParameter, SkewError

logger = setup_logging(__name__)

_MAX_SEED = 2 ** 64


class AllResamplesDegenerate(SkewError):
    def __init__(self, metric, count):
        self.metric = metric
        super().__init__(f"all {count} resamples left {metric} undefined")


@dataclass(frozen=True)
class BootstrapConfig:
    n_resamples: int = 200
    confidence_level: float = 0.95
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.n_resamples < 2:
            raise InvalidParameter(f"n_resamples must be at least 2, got {self.n_resamples}")
        if not 0 < self.confidence_level < 1:
            raise InvalidParameter(f"confidence_level must lie in (0, 1), got {self.confidence_level}")
        if not 0 <= self.seed < _MAX_SEED:
            raise InvalidParameter(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise InvalidParameter(f"workers must be positive, got {self.workers}")

    @classmethod
    def from_settings(cls, bootstrap):
        return cls(
            n_resamples=int(bootstrap.get('resamples', 200)),
            confidence_level=float(bootstrap.get('confidence', 0.95)),
            seed=int(bootstrap.get('seed', 0)),
            workers=int(bootstrap.get('workers', 1)),
        )


@dataclass
class BootstrapResult:
    metric: str
    point_estimate: Optional[float]
    mean: float
    std_error: float
    quantiles: Dict[float, float]
    ci_low: float
    ci_high: float
    seed: int
    n_resamples: int
    confidence_level: float
    degenerate_resample_count: int
    distinguishable: Optional[bool] = None
    resample_values: np.ndarray = field(default=None, repr=False)

    @property
    def ci_width(self):
        return self.ci_high - self.ci_low


def resample_generator(seed, index):
    return np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))


def resample(d, rng):
    """K draws with replacement; the multiplicities keep the values sorted."""
    counts = np.bincount(rng.integers(0, d.size, size=d.size), minlength=d.size)
    return Distribution.from_sorted(np.repeat(d.values, counts))


def _evaluate(metric, d):
    try:
        value = metric.evaluate(d)
    except DegenerateTotal:
        return None
    return None if is_degenerate(value) else float(value)


def _point(metric, *distributions):
    values = [_evaluate(metric, d) for d in distributions]
    if any(v is None for v in values):
        return None
    return values[0] if len(values) == 1 else values[0] - values[1]


def _run(draw, config):
    indices = range(config.n_resamples)
    if config.workers == 1:
        return list(map(draw, indices))
    with ThreadPoolExecutor(max_workers=config.workers) as pool:
        # map yields in index order whatever the completion order
        return list(pool.map(draw, indices))


def _summarize(metric, point, draws, config):
    valid = np.asarray([v for v in draws if v is not None], dtype=np.float64)
    degenerate = len(draws) - valid.size
    if valid.size == 0:
        logger.error("Every resample left %s undefined", metric)
        raise AllResamplesDegenerate(metric, len(draws))
    if degenerate:
        logger.warning("%d of %d resamples left %s undefined; excluded from quantiles",
                       degenerate, len(draws), metric)

    alpha = 1.0 - config.confidence_level
    levels = (alpha / 2, 0.25, 0.5, 0.75, 1 - alpha / 2)
    quantiles = np.quantile(valid, levels)
    std_error = float(np.std(valid, ddof=1)) if valid.size > 1 else 0.0
    return BootstrapResult(
        metric=metric,
        point_estimate=point,
        mean=float(valid.mean()),
        std_error=std_error,
        quantiles={float(level): float(q) for level, q in zip(levels, quantiles)},
        ci_low=float(quantiles[0]),
        ci_high=float(quantiles[-1]),
        seed=config.seed,
        n_resamples=config.n_resamples,
        confidence_level=config.confidence_level,
        degenerate_resample_count=degenerate,
        resample_values=valid,
    )


def bootstrap_metric(d, metric, config=None):
    """Percentile-method confidence interval for `metric` on `d`."""
    config = config or BootstrapConfig()
    d.require_total(metric.label)
    logger.info("Bootstrapping %s over K=%d with %d resamples (seed=%d, workers=%d)",
                metric.label, d.size, config.n_resamples, config.seed, config.workers)

    def draw(index):
        return _evaluate(metric, resample(d, resample_generator(config.seed, index)))

    result = _summarize(metric.label, _point(metric, d), _run(draw, config), config)
    logger.debug("Bootstrap %s: CI [%g, %g]", metric.label, result.ci_low, result.ci_high)
    return result


def bootstrap_difference(d1, d2, metric, config=None):
    """
    Confidence interval on metric(d1) - metric(d2), resampling both
    populations independently per iteration. `distinguishable` is set when the
    interval excludes zero.
    """
    config = config or BootstrapConfig()
    d1.require_total(metric.label)
    d2.require_total(metric.label)
    logger.info("Bootstrapping %s difference (K1=%d, K2=%d, %d resamples)",
                metric.label, d1.size, d2.size, config.n_resamples)

    def draw(index):
        rng = resample_generator(config.seed, index)
        first = _evaluate(metric, resample(d1, rng))
        second = _evaluate(metric, resample(d2, rng))
        if first is None or second is None:
            return None
        return first - second

    result = _summarize(metric.label, _point(metric, d1, d2), _run(draw, config), config)
    result.distinguishable = bool(result.ci_low > 0 or result.ci_high < 0)
    return result

"""
Seeded synthetic populations: Poisson mixtures and zero-inflated lognormals.
"""

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

import numpy as np
import pandas as pd

from config.logging_config import setup_logging
from ingest.table import COUNT, MEMBER, record_table
from metrics.distribution import make_distribution
from metrics.errors import InvalidParameter

logger = setup_logging(__name__)

POISSON_MIXTURE = 'poisson-mixture'
ZERO_INFLATED_LOGNORMAL = 'zero-inflated-lognormal'
GENERATORS = (POISSON_MIXTURE, ZERO_INFLATED_LOGNORMAL)


@dataclass(frozen=True)
class SyntheticSpec:
    generator: str = POISSON_MIXTURE
    size: int = 1000
    seed: int = 0
    rates: Tuple[float, ...] = (1.0,)
    weights: Tuple[float, ...] = (1.0,)
    zero_fraction: float = 0.85
    log_mean: float = 0.0
    log_sigma: float = 3.0

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise InvalidParameter(f"unknown generator {self.generator!r}; expected one of {GENERATORS}")
        if self.size < 1:
            raise InvalidParameter(f"size must be at least 1, got {self.size}")
        if self.seed < 0:
            raise InvalidParameter(f"seed must be non-negative, got {self.seed}")
        if self.generator == POISSON_MIXTURE:
            if len(self.rates) != len(self.weights) or not self.rates:
                raise InvalidParameter("rates and weights must be non-empty and of equal length")
            if any(r < 0 for r in self.rates) or any(w < 0 for w in self.weights):
                raise InvalidParameter("rates and weights must be non-negative")
            if not math.isclose(sum(self.weights), 1.0, abs_tol=1e-9):
                raise InvalidParameter(f"weights must sum to 1, got {sum(self.weights)}")
        else:
            if not 0 <= self.zero_fraction <= 1:
                raise InvalidParameter(f"zero_fraction must lie in [0, 1], got {self.zero_fraction}")
            if self.log_sigma < 0:
                raise InvalidParameter(f"log_sigma must be non-negative, got {self.log_sigma}")

    @classmethod
    def from_mapping(cls, data):
        """Build a spec from the YAML synthetic-spec schema."""
        known = {'generator', 'size', 'seed', 'rates', 'weights', 'zero_fraction', 'log_mean', 'log_sigma'}
        unknown = set(data) - known
        if unknown:
            raise InvalidParameter(f"unknown synthetic spec keys: {sorted(unknown)}")
        kwargs = dict(data)
        for key in ('rates', 'weights'):
            if key in kwargs:
                kwargs[key] = tuple(float(v) for v in kwargs[key])
        for key in ('size', 'seed'):
            if key in kwargs:
                kwargs[key] = int(kwargs[key])
        for key in ('zero_fraction', 'log_mean', 'log_sigma'):
            if key in kwargs:
                kwargs[key] = float(kwargs[key])
        return cls(**kwargs)

    @property
    def mixture_mean(self):
        return sum(r * w for r, w in zip(self.rates, self.weights))

    @property
    def mixture_variance(self):
        second_moment = sum(w * (r + r * r) for r, w in zip(self.rates, self.weights))
        return second_moment - self.mixture_mean ** 2


def synthetic_values(spec):
    """Raw draws in member order."""
    rng = np.random.default_rng(spec.seed)
    if spec.generator == POISSON_MIXTURE:
        # each member picks a component by weight, then a count from it
        components = rng.choice(len(spec.rates), size=spec.size, p=np.asarray(spec.weights))
        return rng.poisson(np.asarray(spec.rates, dtype=np.float64)[components]).astype(np.float64)

    zero = rng.random(spec.size) < spec.zero_fraction
    tail = rng.lognormal(spec.log_mean, spec.log_sigma, size=spec.size)
    return np.where(zero, 0.0, tail)


def generate_synthetic(spec):
    logger.info("Generating %s population (K=%d, seed=%d)", spec.generator, spec.size, spec.seed)
    return make_distribution(synthetic_values(spec))


def synthetic_table(spec, dimension: Optional[Mapping[str, str]] = None):
    """
    Synthetic population as a RecordTable. Lognormal draws are rounded up so
    every non-zero member keeps a count of at least one.
    """
    values = np.ceil(synthetic_values(spec)).astype(np.int64)
    width = len(str(spec.size - 1))
    counts = pd.DataFrame({MEMBER: [f"m{i:0{width}d}" for i in range(spec.size)]})
    dimension = dict(dimension or {})
    for key, value in dimension.items():
        counts[key] = value
    counts[COUNT] = values
    return record_table(counts, dimension_keys=tuple(dimension))

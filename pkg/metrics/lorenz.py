"""
Lorenz curve construction, inversion and downsampling.
"""

from dataclasses import dataclass

import numpy as np

from config.logging_config import setup_logging
from metrics.errors import InvalidParameter

logger = setup_logging(__name__)

_COLLINEAR_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class LorenzCurve:
    """Cumulative population fraction against cumulative value share."""

    population: np.ndarray
    share: np.ndarray

    @property
    def points(self):
        return list(zip(self.population.tolist(), self.share.tolist()))

    def __len__(self):
        return int(self.population.size)

    def invert(self, target_share):
        """
        Population fraction at which the piecewise-linear curve first reaches
        `target_share` (0 < target_share <= 1).
        """
        index = int(np.searchsorted(self.share, target_share, side='left'))
        if self.share[index] == target_share:
            return float(self.population[index])
        x0, x1 = self.population[index - 1], self.population[index]
        y0, y1 = self.share[index - 1], self.share[index]
        return float(x0 + (target_share - y0) * (x1 - x0) / (y1 - y0))


def lorenz_curve(d):
    """Full-resolution curve: K+1 points, point i = (i/K, prefix_sums[i-1]/total)."""
    d.require_total('lorenz_curve')
    k = d.size
    population = np.arange(k + 1, dtype=np.float64) / k
    share = np.empty(k + 1, dtype=np.float64)
    share[0] = 0.0
    np.divide(d.prefix_sums, d.total, out=share[1:])
    share[-1] = 1.0
    # accumulation noise must not break monotonicity
    np.maximum.accumulate(share, out=share)
    np.minimum(share, 1.0, out=share)
    return LorenzCurve(population, share)


def _drop_collinear(population, share):
    keep = [0]
    for i in range(1, population.size - 1):
        x0, y0 = population[keep[-1]], share[keep[-1]]
        cross = (population[i] - x0) * (share[i + 1] - y0) - (population[i + 1] - x0) * (share[i] - y0)
        if abs(cross) > _COLLINEAR_TOLERANCE:
            keep.append(i)
    keep.append(population.size - 1)
    return np.asarray(keep)


def lorenz_downsample(curve, n_points):
    """
    Keep a subset of vertices so the chord error stays below 1/n_points.

    For each share level j/n the first vertex reaching it and its predecessor
    are kept; between two kept vertices the share then grows by less than 1/n
    or the pair is a single original segment. Collinear vertices are dropped
    afterwards, so the output size varies with the curve's shape.
    """
    if n_points < 2:
        raise InvalidParameter(f"n_points must be at least 2, got {n_points}")
    if n_points >= len(curve):
        return curve

    levels = np.arange(1, n_points, dtype=np.float64) / n_points
    first = np.searchsorted(curve.share, levels, side='left')
    chosen = np.unique(np.concatenate((
        [0, len(curve) - 1],
        first,
        np.maximum(first - 1, 0),
    )))
    population, share = curve.population[chosen], curve.share[chosen]
    keep = _drop_collinear(population, share)
    logger.debug("Downsampled Lorenz curve from %d to %d points", len(curve), keep.size)
    return LorenzCurve(population[keep], share[keep])

import numpy as np
import pandas as pd

from config.logging_config import setup_logging
from metrics.distribution import make_distribution
from metrics.entropy import gini

logger = setup_logging(__name__)


def _gini_or_none(values):
    d = make_distribution(values)
    return None if d.is_degenerate else gini(d)


def covariate_profile(frames, covariate='follower_count'):
    """
    For each slice: outcome Gini over all members, and the mean and Gini of
    the covariate over the members that received any outcome. Rows are sorted
    by outcome Gini, undefined last.
    """
    rows = []
    for label, frame in frames.items():
        outcomes = frame['value'].to_numpy(dtype=np.float64)
        receiving = frame[frame['value'] > 0][covariate].to_numpy(dtype=np.float64)
        rows.append({
            'slice': label,
            'members': int(outcomes.size),
            'outcome_gini': _gini_or_none(outcomes),
            'receiving_members': int(receiving.size),
            'covariate_mean': float(receiving.mean()) if receiving.size else None,
            'covariate_gini': _gini_or_none(receiving) if receiving.size else None,
        })
    table = pd.DataFrame(rows)
    order = sorted(range(len(rows)), key=lambda i: (rows[i]['outcome_gini'] is None,
                                                    rows[i]['outcome_gini'] or 0.0, rows[i]['slice']))
    logger.info("Covariate profile over %d slices on %s", len(rows), covariate)
    return table.iloc[order].reset_index(drop=True)

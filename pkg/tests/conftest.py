import os
import tempfile

# loggers pick their directory up at import time
os.environ.setdefault('SKEW_LOG_DIR', tempfile.mkdtemp(prefix='skew-logs-'))

import numpy as np
import pytest

ENGAGEMENT_ROWS = """\
member_id,engagement_type,follower_count,count
u1,like,10,1
u2,like,20,1
u3,like,30,1
u4,like,40,1
u5,like,50,1
u5,reply,50,10
u4,retweet,40,1
u5,retweet,50,3
u1,quote,10,0
"""


def random_corpus(n, seed, k_range=(2, 200)):
    """Mixed zero-inflated, uniform and lognormal value arrays, each with a positive total."""
    rng = np.random.default_rng(seed)
    corpus = []
    for i in range(n):
        k = int(rng.integers(k_range[0], k_range[1] + 1))
        kind = i % 3
        if kind == 0:
            values = np.where(rng.random(k) < 0.7, 0.0, np.ceil(rng.lognormal(0.0, 2.0, k)))
        elif kind == 1:
            values = rng.uniform(0.0, 100.0, k)
        else:
            values = rng.lognormal(1.0, 1.5, k)
        if values.sum() == 0:
            values[-1] = 1.0
        corpus.append(values)
    return corpus


@pytest.fixture
def corpus():
    return random_corpus(200, seed=20240517)


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write


@pytest.fixture
def engagement_csv(write_file):
    return write_file('engagement.csv', ENGAGEMENT_ROWS)

import numpy as np
import pytest

from praegerxu.graph import build

# desk grid: n <= 7, k <= 4, |V| <= 112
GRID = [(n, k) for n in range(3, 8) for k in range(1, min(n - 1, 4) + 1) if n << k <= 112]
TWIN_FREE = [(n, k) for n, k in GRID if k >= 2]


@pytest.fixture(scope="session")
def graphs():
    cache = {}

    def get(n, k):
        if (n, k) not in cache:
            cache[(n, k)] = build(n, k)
        return cache[(n, k)]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

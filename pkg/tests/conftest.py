import numpy as np
import pytest

from nlsim.basis import BasisSpec, build_grid


@pytest.fixture(scope="session")
def grid_cache():
    cache = {}

    def get(d, N, M=0):
        key = (d, N, M)
        if key not in cache:
            cache[key] = build_grid(BasisSpec(d=d, N=N, M=M))
        return cache[key]

    return get


@pytest.fixture()
def rng():
    return np.random.default_rng(20240817)

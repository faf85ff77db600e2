"""
Shared fixtures for the haarsvie test suite.
"""
from typing import Callable

import numpy as np
import pytest

from haarsvie.schemas.brownian import BrownianPath, PathEnsembleConfig
from haarsvie.services.brownian import simulate_path


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def make_path() -> Callable[..., BrownianPath]:
    """Path ``index`` of the family (seed, grid_count)."""

    def factory(grid_count: int, seed: int = 7, index: int = 0) -> BrownianPath:
        config = PathEnsembleConfig(paths=index + 1, seed=seed, grid_count=grid_count)
        return simulate_path(config, index)

    return factory


@pytest.fixture
def client():
    from fastapi.testclient import TestClient

    from haarsvie.main import app

    return TestClient(app)

"""
Brownian path schemas.
"""
from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from .base import FrozenModel


class SeedInfo(FrozenModel):
    """Seed and path index that generated a path."""

    seed: int = Field(..., ge=0, lt=2**64)
    path_index: int = Field(..., ge=0)


class PathEnsembleConfig(FrozenModel):
    """Size, seed and grid of a family of Brownian paths."""

    paths: int = Field(..., ge=1, description="Number of paths R")
    seed: int = Field(..., ge=0, lt=2**64, description="Root seed")
    grid_count: int = Field(..., ge=4, description="Grid cells G over [0, 1]")


class BrownianPath(FrozenModel):
    """One realized path B on the uniform grid k/G, k = 0..G."""

    step: float = Field(..., gt=0, description="Grid spacing 1/G")
    values: np.ndarray = Field(..., description="B(k * step), k = 0..G")
    seed_info: Optional[SeedInfo] = None

    @property
    def grid_count(self) -> int:
        return int(self.values.shape[0]) - 1

    @property
    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    @model_validator(mode="after")
    def check_values(self) -> "BrownianPath":
        if self.values.ndim != 1 or self.values.shape[0] < 2:
            raise ValueError("values must be a 1-d array with at least two nodes")
        if self.values[0] != 0.0:
            raise ValueError("a Brownian path starts at B(0) = 0")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("path values must be finite")
        if abs(self.step * (self.values.shape[0] - 1) - 1.0) > 1e-12:
            raise ValueError("step must equal 1 / grid_count")
        return self

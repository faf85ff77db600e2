"""
Monte Carlo ensemble schemas.
"""
from typing import List

import numpy as np
from pydantic import Field, model_validator

from .base import BaseModel, FrozenModel
from .haar import CollocationGrid


class PathFailure(FrozenModel):
    """A path whose system could not be solved."""

    path_index: int = Field(..., ge=0)
    reason: str


class McSummary(FrozenModel):
    """Per-collocation-point statistics over R path solves."""

    mean: np.ndarray
    std: np.ndarray
    ci_low: np.ndarray
    ci_high: np.ndarray
    R: int = Field(..., ge=1, description="Requested paths")
    R_effective: int = Field(..., ge=1, description="Successful paths")
    failures: List[PathFailure] = Field(default_factory=list)
    confidence: float = Field(..., gt=0, lt=1)
    z: float = Field(..., gt=0)
    x_grid: CollocationGrid
    y_grid: CollocationGrid

    @model_validator(mode="after")
    def check_counts(self) -> "McSummary":
        if self.R_effective + len(self.failures) != self.R:
            raise ValueError("R_effective + failures must equal R")
        shape = (self.x_grid.size, self.y_grid.size)
        for name in ("mean", "std", "ci_low", "ci_high"):
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} must have shape {shape}")
        return self


class SummaryRow(BaseModel):
    """One line of the Table-1 layout."""

    J: int
    M: int
    two_M: int = Field(..., alias="2M")
    x: float
    y: float
    mean: float
    ci_low: float
    ci_high: float


class SurfaceRow(BaseModel):
    """One point of the plot-ready mean surface."""

    x: float
    y: float
    mean: float

"""
Two-dimensional Haar coefficient and sample grids.
"""
import numpy as np
from pydantic import Field, model_validator

from .base import FrozenModel
from .haar import CollocationGrid


class CoeffGrid(FrozenModel):
    """Matrix ``b[p-1, q-1] = b_{p,q}`` of tensor Haar coefficients."""

    b: np.ndarray = Field(..., description="2M x 2N coefficient matrix")
    M: int = Field(..., ge=1)
    N: int = Field(..., ge=1)

    @model_validator(mode="after")
    def check_shape(self) -> "CoeffGrid":
        if self.b.shape != (2 * self.M, 2 * self.N):
            raise ValueError(
                f"expected a {2 * self.M}x{2 * self.N} matrix, got {self.b.shape}"
            )
        if not np.all(np.isfinite(self.b)):
            raise ValueError("coefficients must be finite")
        return self


class SampleGrid(FrozenModel):
    """Values ``G(x_m, y_n)`` on a pair of collocation grids."""

    values: np.ndarray = Field(..., description="2M x 2N samples")
    x_grid: CollocationGrid
    y_grid: CollocationGrid

    @property
    def M(self) -> int:
        return self.x_grid.M

    @property
    def N(self) -> int:
        return self.y_grid.M

    @model_validator(mode="after")
    def check_shape(self) -> "SampleGrid":
        expected = (self.x_grid.size, self.y_grid.size)
        if self.values.shape != expected:
            raise ValueError(f"expected samples of shape {expected}, got {self.values.shape}")
        return self

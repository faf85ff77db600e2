"""
Collocation system and per-path solution schemas.

Flat ordering of the unknowns is column-major over the (m, n) grid: the flat
index of g(x_m, y_n) is ``m + 2M * n`` (0-based), so m runs fastest.
"""
from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from .base import FrozenModel
from .brownian import SeedInfo
from .haar import CollocationGrid


def flat_index(m: int, n: int, two_m: int) -> int:
    """Flat row of the unknown at 0-based grid position (m, n)."""
    return m + two_m * n


def to_flat(grid_values: np.ndarray) -> np.ndarray:
    return np.asarray(grid_values).reshape(-1, order="F")


def from_flat(vector: np.ndarray, two_m: int, two_n: int) -> np.ndarray:
    return np.asarray(vector).reshape((two_m, two_n), order="F")


class AssembledSystem(FrozenModel):
    """Dense system ``A g = rhs`` of one path."""

    A: np.ndarray = Field(..., description="(4MN) x (4MN) matrix")
    rhs: np.ndarray = Field(..., description="f at the collocation points, flat")
    x_grid: CollocationGrid
    y_grid: CollocationGrid
    seed_info: Optional[SeedInfo] = None

    @property
    def size(self) -> int:
        return self.x_grid.size * self.y_grid.size

    @model_validator(mode="after")
    def check_shapes(self) -> "AssembledSystem":
        n = self.size
        if self.A.shape != (n, n) or self.rhs.shape != (n,):
            raise ValueError(
                f"system of size {n} got A{self.A.shape} and rhs{self.rhs.shape}"
            )
        return self


class PathSolution(FrozenModel):
    """Solution values g(x_m, y_n) of one path with solver diagnostics."""

    g: np.ndarray = Field(..., description="2M x 2N solution grid")
    x_grid: CollocationGrid
    y_grid: CollocationGrid
    min_pivot: float = Field(..., ge=0, description="Smallest |U_kk| of the LU")
    residual_norm: float = Field(..., ge=0, description="max |A g - rhs|")
    seed_info: Optional[SeedInfo] = None

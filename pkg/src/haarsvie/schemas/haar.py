"""
Haar basis schemas.

Index decomposition, collocation grids and the block windows of the coefficient averages.
"""
from typing import Optional

import numpy as np
from pydantic import Field, model_validator

from .base import FrozenModel


class HaarIndex(FrozenModel):
    """Decomposition of a basis index i into level and translation.

    For i >= 2, ``i = 2**level + translation + 1`` and the support is
    ``[alpha, gamma)`` split at ``beta``. Index 1 is the constant function:
    level, translation and beta are None and the support is [0, 1).
    """

    i: int = Field(..., ge=1, description="Basis index")
    level: Optional[int] = Field(None, ge=0, description="Level l (i >= 2 only)")
    translation: Optional[int] = Field(None, ge=0, description="Translation n")
    alpha: float = Field(0.0, description="Support start")
    beta: Optional[float] = Field(None, description="Sign change point")
    gamma: float = Field(1.0, description="Support end")

    @property
    def is_constant(self) -> bool:
        return self.i == 1

    @property
    def m(self) -> int:
        """Number of cells 2**level; 1 for the constant index."""
        return 1 if self.level is None else 2**self.level

    @model_validator(mode="after")
    def check_breakpoints(self) -> "HaarIndex":
        if self.i == 1:
            if self.level is not None or self.translation is not None:
                raise ValueError("index 1 has no level/translation")
            return self
        if self.level is None or self.translation is None or self.beta is None:
            raise ValueError("indices >= 2 need level, translation and beta")
        m = 2**self.level
        if self.i != m + self.translation + 1 or self.translation >= m:
            raise ValueError(f"inconsistent decomposition for i={self.i}")
        if not self.alpha < self.beta < self.gamma:
            raise ValueError("breakpoints must satisfy alpha < beta < gamma")
        return self


class CollocationGrid(FrozenModel):
    """Midpoints ``(m - 0.5) / (2M)`` of the 2M dyadic cells of [0, 1]."""

    L: int = Field(..., ge=0, description="Maximum resolution level")
    M: int = Field(..., ge=1, description="2**L")
    points: np.ndarray = Field(..., description="2M collocation points")

    @property
    def size(self) -> int:
        return 2 * self.M

    @model_validator(mode="after")
    def check_points(self) -> "CollocationGrid":
        if self.M != 2**self.L:
            raise ValueError("M must equal 2**L")
        if self.points.shape != (2 * self.M,):
            raise ValueError(f"expected {2 * self.M} points, got {self.points.shape}")
        return self


class BlockIndices(FrozenModel):
    """1-based window of grid indices carrying the +/- halves of h_i."""

    tau: int = Field(..., ge=1)
    sigma: int = Field(..., ge=1)
    rho: int = Field(..., ge=2)
    a1: int = Field(..., ge=1, description="First index of the + window")
    b1: int = Field(..., ge=1, description="Last index of the + window")
    g1: int = Field(..., ge=2, description="Last index of the - window")

    @model_validator(mode="after")
    def check_windows(self) -> "BlockIndices":
        if self.g1 - self.a1 + 1 != self.rho or self.b1 - self.a1 + 1 != self.rho // 2:
            raise ValueError("window widths do not match rho")
        return self

"""
Schemas for the brute-force reference computations.
"""
from pydantic import Field

from .base import BaseModel, FrozenModel


class QuadSpec(BaseModel):
    """Composite midpoint rule with ``subdivisions`` cells per axis."""

    subdivisions: int = Field(..., ge=1)
    rule: str = Field("midpoint", pattern="^midpoint$")


class MomentEstimate(FrozenModel):
    """Sample mean and variance of q_{i,1}(1) over an ensemble of paths."""

    i: int = Field(..., ge=1, description="Basis index")
    mean: float
    variance: float = Field(..., ge=0)
    paths: int = Field(..., ge=2)

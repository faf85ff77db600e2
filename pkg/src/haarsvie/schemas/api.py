"""
Request and response models of the HTTP surface.
"""
from typing import Any, Dict, List, Optional, Tuple

from pydantic import Field

from haarsvie.config import settings

from .base import BaseModel
from .ensemble import SummaryRow, SurfaceRow
from .run import EnsembleParams


class ProblemInfo(BaseModel):
    """Public view of a registered problem."""

    name: str
    description: str
    has_exact: bool = Field(..., description="Whether an exact solution is known")
    noise_free: bool


class EnsembleRequest(EnsembleParams):
    """Ensemble run over HTTP; the file options of the CLI become response fields."""

    paths: int = Field(settings.DEFAULT_PATHS, ge=1, description="Number of Brownian paths R")
    seed: int = Field(settings.DEFAULT_SEED, ge=0, lt=2**64, description="Root seed")
    confidence: float = Field(settings.DEFAULT_CONFIDENCE, description="Two-sided confidence level")
    include_surface: bool = Field(False, description="Return the mean surface as well")
    surface_mesh: Optional[int] = Field(None, ge=1, description="K x K plotting mesh")


class EnsembleResponse(BaseModel):
    metadata: Dict[str, Any]
    rows: List[SummaryRow]
    surface: Optional[List[SurfaceRow]] = None


class EvaluateRequest(BaseModel):
    """Solve one path and evaluate the solution at arbitrary points."""

    problem: str
    level: int = Field(..., ge=0)
    level_y: Optional[int] = Field(None, ge=0)
    seed: int = Field(settings.DEFAULT_SEED, ge=0, lt=2**64)
    path_index: int = Field(0, ge=0)
    deterministic: bool = False
    points: List[Tuple[float, float]] = Field(..., min_length=1)


class PointValue(BaseModel):
    x: float
    y: float
    value: float


class EvaluateResponse(BaseModel):
    problem: str
    seed: Optional[int] = None
    path_index: Optional[int] = None
    min_pivot: float
    residual_norm: float
    values: List[PointValue]

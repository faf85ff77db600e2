"""
Run configuration schemas shared by the CLI and the HTTP surface.
"""
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import Field, field_validator

from .base import BaseModel


class RunMode(str, Enum):
    """Whether the stochastic kernel takes part in the solve."""
    STOCHASTIC = "stochastic"
    DETERMINISTIC = "deterministic"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


class PointSet(str, Enum):
    """Which collocation pairs the summary table reports."""
    ALL = "all"
    PUBLISHED = "published"


class EnsembleParams(BaseModel):
    """Parameters of one ensemble run, without any file output."""

    problem: str = Field(..., description="Registry name of the problem")
    level: int = Field(..., ge=0, description="Maximum resolution level L")
    level_y: Optional[int] = Field(
        None,
        ge=0,
        description="Level in y when it differs from L"
    )
    paths: int = Field(..., ge=1, description="Number of Brownian paths R")
    seed: int = Field(..., ge=0, lt=2**64, description="Root seed")
    confidence: float = Field(0.95, description="Two-sided confidence level")
    mode: RunMode = RunMode.STOCHASTIC
    points: PointSet = PointSet.ALL
    workers: Optional[int] = Field(None, ge=1, description="Worker threads")

    @field_validator("confidence")
    @classmethod
    def check_confidence(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("confidence must lie strictly between 0 and 1")
        return v

    @property
    def resolved_level_y(self) -> int:
        return self.level if self.level_y is None else self.level_y


class RunConfig(EnsembleParams):
    """Full CLI run: ensemble parameters plus where the artifacts go."""

    output: Path = Field(..., description="Summary table file")
    format: OutputFormat = OutputFormat.CSV
    grid_out: Optional[Path] = Field(None, description="Surface data file")
    surface_mesh: Optional[int] = Field(
        None,
        ge=1,
        description="Uniform K x K mesh for the surface file instead of the grid"
    )

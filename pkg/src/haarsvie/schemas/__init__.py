"""
Pydantic schemas for the numerical domain types and the HTTP surface.
"""
from .base import BaseModel, FrozenModel, readonly
from .brownian import BrownianPath, PathEnsembleConfig, SeedInfo
from .coeffs import CoeffGrid, SampleGrid
from .ensemble import McSummary, PathFailure, SummaryRow, SurfaceRow
from .haar import BlockIndices, CollocationGrid, HaarIndex
from .msg import ErrorMsg, Msg
from .oracle import MomentEstimate, QuadSpec
from .problem import Forcing, Kernel, ProblemSpec
from .run import EnsembleParams, OutputFormat, PointSet, RunConfig, RunMode
from .solver import AssembledSystem, PathSolution, flat_index, from_flat, to_flat

__all__ = [
    "AssembledSystem",
    "BaseModel",
    "BlockIndices",
    "BrownianPath",
    "CoeffGrid",
    "CollocationGrid",
    "EnsembleParams",
    "ErrorMsg",
    "Forcing",
    "FrozenModel",
    "HaarIndex",
    "Kernel",
    "McSummary",
    "MomentEstimate",
    "Msg",
    "OutputFormat",
    "PathEnsembleConfig",
    "PathFailure",
    "PathSolution",
    "PointSet",
    "ProblemSpec",
    "QuadSpec",
    "RunConfig",
    "RunMode",
    "SampleGrid",
    "SeedInfo",
    "SummaryRow",
    "SurfaceRow",
    "flat_index",
    "from_flat",
    "readonly",
    "to_flat",
]

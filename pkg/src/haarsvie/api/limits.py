"""
Request caps shared by the HTTP endpoints.

Solve cost grows with the fourth power of 2^level, so every endpoint that
builds a collocation system goes through these checks first.
"""
from typing import Optional

from haarsvie.config import settings
from haarsvie.core.exceptions import DomainError


def check_levels(level: int, level_y: Optional[int] = None) -> None:
    """Reject resolutions above ``API_MAX_LEVEL`` in either direction."""
    finest = max(level, level if level_y is None else level_y)
    if finest > settings.API_MAX_LEVEL:
        raise DomainError(
            f"level must be <= {settings.API_MAX_LEVEL} over HTTP, got {finest}",
            details={"level": finest, "limit": settings.API_MAX_LEVEL},
        )


def check_paths(paths: int) -> None:
    if paths > settings.API_MAX_PATHS:
        raise DomainError(
            f"paths must be <= {settings.API_MAX_PATHS} over HTTP, got {paths}",
            details={"paths": paths, "limit": settings.API_MAX_PATHS},
        )


def check_surface_mesh(mesh: Optional[int]) -> None:
    if mesh is not None and mesh > settings.API_MAX_SURFACE_MESH:
        raise DomainError(
            f"surface_mesh must be <= {settings.API_MAX_SURFACE_MESH} over HTTP, got {mesh}",
            details={"surface_mesh": mesh, "limit": settings.API_MAX_SURFACE_MESH},
        )

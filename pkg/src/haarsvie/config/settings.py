"""
Application settings and configuration.

This module defines the settings for haarsvie using Pydantic's BaseSettings
for environment variable management and validation. Every field can be
overridden with a ``HAARSVIE_``-prefixed environment variable or a ``.env`` file.
"""
import os
from typing import Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from haarsvie import __version__


class Settings(BaseSettings):
    # Application
    PROJECT_NAME: str = "haarsvie"
    VERSION: str = __version__
    API_V1_STR: str = "/api/v1"
    ENV: str = "development"
    DEBUG: bool = False

    # Run defaults
    DEFAULT_SEED: int = Field(7, ge=0, lt=2**64)
    DEFAULT_PATHS: int = Field(1000, ge=1)
    DEFAULT_CONFIDENCE: float = 0.95

    # Numerics
    GRID_MULTIPLIER: int = Field(1, ge=1)
    NODE_TOLERANCE: float = Field(1e-12, gt=0)
    PIVOT_TOLERANCE: float = Field(1e-12, gt=0)
    RESIDUAL_TOLERANCE: float = Field(1e-8, gt=0)

    # Ensemble execution
    MAX_WORKERS: Optional[int] = Field(None, ge=1)

    # HTTP limits
    API_MAX_PATHS: int = Field(2000, ge=1)
    API_MAX_LEVEL: int = Field(4, ge=0)
    API_MAX_SURFACE_MESH: int = Field(256, ge=1)

    # Logging
    LOG_LEVEL: str = "INFO"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="HAARSVIE_",
        case_sensitive=True,
    )

    @field_validator("DEFAULT_CONFIDENCE")
    @classmethod
    def check_confidence(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("DEFAULT_CONFIDENCE must lie strictly between 0 and 1")
        return v

    @property
    def workers(self) -> int:
        """Thread count used by ensemble runs when none is requested."""
        if self.MAX_WORKERS is not None:
            return self.MAX_WORKERS
        return min(4, os.cpu_count() or 1)


# Global settings instance
settings = Settings()

"""Base schemas for haarsvie.

This module contains the base Pydantic models used as base classes for the
domain types and the HTTP request/response models.
"""
from typing import Any

import numpy as np
from pydantic import BaseModel as PydanticBaseModel
from pydantic import ConfigDict


class BaseModel(PydanticBaseModel):
    """Base model for request/response and configuration models."""

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        populate_by_name=True,
    )


class FrozenModel(BaseModel):
    """Immutable model for numeric domain values.

    Array fields are stored read-only so the instance can be shared across
    worker threads.
    """

    model_config = ConfigDict(
        arbitrary_types_allowed=True,
        frozen=True,
    )


def readonly(array: Any, dtype: Any = np.float64) -> np.ndarray:
    """Return a read-only float64 copy of ``array``."""
    out = np.array(array, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out

"""
Problem definition schemas.

A problem is one instance of

    g(x,y) = f(x,y) + int_0^y int_0^x K1(x,y,s,t) g(s,t) ds dt
                    + int_0^y int_0^x K2(x,y,s,t) g(s,t) dB(s) dB(t)

on the unit square. The callables must broadcast over numpy arrays.
"""
from typing import Callable, Optional

import numpy as np
from pydantic import Field

from .base import FrozenModel

Forcing = Callable[[np.ndarray, np.ndarray], np.ndarray]
Kernel = Callable[[np.ndarray, np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class ProblemSpec(FrozenModel):
    """Forcing, kernels and (when known) exact solution of one equation."""

    name: str = Field(..., min_length=1, description="Registry identifier")
    f: Forcing = Field(..., description="Forcing term f(x, y)")
    K1: Kernel = Field(..., description="Deterministic kernel K1(x, y, s, t)")
    K2: Kernel = Field(..., description="Stochastic kernel K2(x, y, s, t)")
    description: str = ""
    exact: Optional[Forcing] = Field(
        None,
        description="Exact solution when the problem is manufactured"
    )
    noise_free: bool = Field(
        False,
        description="True when K2 vanishes identically"
    )

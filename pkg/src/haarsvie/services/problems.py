"""
Problem registry.

Problems are registered in code; there is no expression parser. Every
callable broadcasts over numpy arrays so the solver can sample whole grids.
"""
import logging
from typing import Dict, List

import numpy as np

from haarsvie.core.exceptions import RegistryError
from haarsvie.schemas.problem import Forcing, Kernel, ProblemSpec

logger = logging.getLogger(__name__)

_REGISTRY: Dict[str, ProblemSpec] = {}


def constant_kernel(value: float) -> Kernel:
    """Kernel that equals ``value`` everywhere."""

    def kernel(x: np.ndarray, y: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
        return np.full(np.broadcast(x, y, s, t).shape, float(value))

    return kernel


def constant_forcing(value: float) -> Forcing:
    """Forcing term that equals ``value`` everywhere."""

    def forcing(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.full(np.broadcast(x, y).shape, float(value))

    return forcing


def _paper_f(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x + y - x * y * (x**3 + 4 * x**2 * y + 4 * x * y**2 + y**3) / 12.0


def _paper_k1(x: np.ndarray, y: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    return x + y + t - s


def _paper_k2(x: np.ndarray, y: np.ndarray, s: np.ndarray, t: np.ndarray) -> np.ndarray:
    return x + y + t + s


def _det_xy_f(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    # int_0^y int_0^x s t ds dt = x^2 y^2 / 4
    return x * y - (x * y) ** 2 / 4.0


def _xy(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x * y


def _x_plus_y(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x + y


def register_problem(problem: ProblemSpec, replace: bool = False) -> ProblemSpec:
    """Add a problem to the registry.

    Raises:
        ValueError: If the name is taken and ``replace`` is False
    """
    if problem.name in _REGISTRY and not replace:
        raise ValueError(f"problem '{problem.name}' is already registered")
    _REGISTRY[problem.name] = problem
    logger.debug(f"registered problem {problem.name}")
    return problem


def list_problems() -> List[ProblemSpec]:
    """Registered problems in name order."""
    return [_REGISTRY[name] for name in sorted(_REGISTRY)]


def registry_lookup(name: str) -> ProblemSpec:
    """Return the registered problem called ``name``.

    Raises:
        RegistryError: If no such problem exists; the message lists the registry
    """
    try:
        return _REGISTRY[name]
    except KeyError:
        known = sorted(_REGISTRY)
        raise RegistryError(
            f"unknown problem '{name}'; registered problems: {', '.join(known)}",
            details={"name": name, "registered": known},
        ) from None


register_problem(
    ProblemSpec(
        name="paper-example",
        description=(
            "K1 = x+y+t-s, K2 = x+y+t+s, "
            "f = x+y-xy(x^3+4x^2y+4xy^2+y^3)/12"
        ),
        f=_paper_f,
        K1=_paper_k1,
        K2=_paper_k2,
    )
)
register_problem(
    ProblemSpec(
        name="det-xy",
        description="K1 = 1, K2 = 0, f = xy - x^2y^2/4; exact solution u = xy",
        f=_det_xy_f,
        K1=constant_kernel(1.0),
        K2=constant_kernel(0.0),
        exact=_xy,
        noise_free=True,
    )
)
register_problem(
    ProblemSpec(
        name="zero-kernel",
        description="K1 = K2 = 0, f = x+y; the solution is f",
        f=_x_plus_y,
        K1=constant_kernel(0.0),
        K2=constant_kernel(0.0),
        exact=_x_plus_y,
        noise_free=True,
    )
)
register_problem(
    ProblemSpec(
        name="weak-noise",
        description="K1 = 1, K2 = 0.1, f = 1; light-tailed stochastic test problem",
        f=constant_forcing(1.0),
        K1=constant_kernel(1.0),
        K2=constant_kernel(0.1),
    )
)

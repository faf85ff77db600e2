"""
Error hierarchy for haarsvie.

Every error carries a short machine-readable ``code`` and a ``details`` dict, the
same shape the HTTP layer returns in an ``ErrorMsg``.
"""
from typing import Any, Dict, Optional


class HaarSvieError(Exception):
    """Base class for all haarsvie errors."""

    code: str = "haarsvie_error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = details or {}

    def __str__(self) -> str:
        return self.message


class DomainError(HaarSvieError, ValueError):
    """An argument lies outside the domain of the operation."""

    code = "domain_error"


class PrecisionError(DomainError):
    """A Brownian path was asked for a value between grid nodes."""

    code = "off_grid"


class AssemblyError(HaarSvieError):
    """A kernel or forcing sample was not finite."""

    code = "assembly_error"


class SingularSystemError(HaarSvieError):
    """The collocation system could not be solved to contract.

    ``details`` holds ``seed`` and ``path_index`` whenever the system was
    assembled from a simulated path, so the draw can be reproduced.
    """

    code = "singular_system"


class EnsembleError(HaarSvieError):
    """No path of a Monte Carlo ensemble produced a solution."""

    code = "ensemble_failed"


class RegistryError(HaarSvieError, KeyError):
    """Unknown problem name."""

    code = "unknown_problem"

    def __str__(self) -> str:
        # KeyError would otherwise repr() the message
        return self.message


class NonFiniteSampleError(HaarSvieError):
    """An oracle integrand returned NaN or infinity."""

    code = "non_finite_sample"

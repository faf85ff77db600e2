"""
Problem registry endpoints.
"""
from typing import List

from fastapi import APIRouter

from haarsvie.schemas.api import ProblemInfo
from haarsvie.schemas.problem import ProblemSpec
from haarsvie.services.problems import list_problems, registry_lookup

router = APIRouter()


def _info(problem: ProblemSpec) -> ProblemInfo:
    return ProblemInfo(
        name=problem.name,
        description=problem.description,
        has_exact=problem.exact is not None,
        noise_free=problem.noise_free,
    )


@router.get("/", response_model=List[ProblemInfo])
def get_problems() -> List[ProblemInfo]:
    """List the registered problems in name order."""
    return [_info(p) for p in list_problems()]


@router.get("/{name}", response_model=ProblemInfo)
def get_problem(name: str) -> ProblemInfo:
    """Describe one problem.

    Raises:
        RegistryError: If no problem is registered under ``name`` (404)
    """
    return _info(registry_lookup(name))

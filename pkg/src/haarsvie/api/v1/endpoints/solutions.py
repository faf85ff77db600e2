"""
Single-path solve and off-grid evaluation endpoint.
"""
from fastapi import APIRouter

from haarsvie.api.limits import check_levels
from haarsvie.schemas.api import EvaluateRequest, EvaluateResponse, PointValue
from haarsvie.schemas.brownian import PathEnsembleConfig
from haarsvie.services.brownian import grid_count_for, simulate_path
from haarsvie.services.problems import registry_lookup
from haarsvie.services.svie_solver import CollocationOperator, evaluate_offgrid

router = APIRouter()


@router.post("/evaluate", response_model=EvaluateResponse)
def evaluate_solution(request: EvaluateRequest) -> EvaluateResponse:
    """Solve path ``path_index`` of the seed family and evaluate it at the given points.

    Raises:
        RegistryError: If the problem is unknown (404)
        DomainError: If a level exceeds ``API_MAX_LEVEL`` or a point lies
            outside the unit square (422)
        SingularSystemError: If the system of that path cannot be solved (500)
    """
    check_levels(request.level, request.level_y)
    problem = registry_lookup(request.problem)
    operator = CollocationOperator(problem, request.level, request.level_y)
    path = None
    if not request.deterministic:
        config = PathEnsembleConfig(
            paths=request.path_index + 1,
            seed=request.seed,
            grid_count=grid_count_for(operator.x_grid.M, operator.y_grid.M),
        )
        path = simulate_path(config, request.path_index)
    solution = operator.solve(path)
    return EvaluateResponse(
        problem=problem.name,
        seed=None if path is None else request.seed,
        path_index=None if path is None else request.path_index,
        min_pivot=solution.min_pivot,
        residual_norm=solution.residual_norm,
        values=[
            PointValue(x=x, y=y, value=evaluate_offgrid(solution, x, y))
            for x, y in request.points
        ],
    )

"""
Monte Carlo ensemble endpoint.
"""
from fastapi import APIRouter

from haarsvie.api.limits import check_levels, check_paths, check_surface_mesh
from haarsvie.schemas.api import EnsembleRequest, EnsembleResponse
from haarsvie.services.export import run_metadata
from haarsvie.services.montecarlo import summary_table, surface_rows
from haarsvie.services.runs import run_summary, table_points

router = APIRouter()


def _check_limits(request: EnsembleRequest) -> None:
    check_paths(request.paths)
    check_levels(request.level, request.level_y)
    check_surface_mesh(request.surface_mesh)


@router.post("/", response_model=EnsembleResponse)
def create_ensemble(request: EnsembleRequest) -> EnsembleResponse:
    """Run an ensemble and return the summary table.

    Args:
        request: Problem, resolution, path count, seed and reporting options

    Returns:
        EnsembleResponse: table rows, provenance metadata and optionally the surface

    Raises:
        DomainError: If the request exceeds the HTTP limits (422)
        RegistryError: If the problem is unknown (404)
        EnsembleError: If every path failed (500)
    """
    _check_limits(request)
    summary = run_summary(request)
    surface = None
    if request.include_surface or request.surface_mesh is not None:
        surface = surface_rows(summary, request.surface_mesh)
    return EnsembleResponse(
        metadata=run_metadata(request, summary),
        rows=summary_table(summary, table_points(request, summary)),
        surface=surface,
    )

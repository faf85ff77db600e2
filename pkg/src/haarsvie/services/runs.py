"""
End-to-end runs: ensemble, table and surface files for one RunConfig.
"""
import logging
from typing import List

from haarsvie.schemas.brownian import PathEnsembleConfig
from haarsvie.schemas.ensemble import McSummary
from haarsvie.schemas.run import EnsembleParams, OutputFormat, PointSet, RunConfig, RunMode
from haarsvie.services.brownian import grid_count_for
from haarsvie.services.export import (
    run_metadata,
    write_surface_csv,
    write_table_csv,
    write_table_json,
)
from haarsvie.services.montecarlo import (
    EnsembleService,
    Point,
    all_points,
    published_points,
    summary_table,
    surface_rows,
)
from haarsvie.services.problems import registry_lookup

logger = logging.getLogger(__name__)


def ensemble_config(params: EnsembleParams) -> PathEnsembleConfig:
    """Path family of a run, on the coarsest grid that holds every needed node."""
    return PathEnsembleConfig(
        paths=params.paths,
        seed=params.seed,
        grid_count=grid_count_for(2**params.level, 2**params.resolved_level_y),
    )


def table_points(params: EnsembleParams, summary: McSummary) -> List[Point]:
    if params.points == PointSet.PUBLISHED:
        return published_points(params.level)
    return all_points(summary)


def run_summary(params: EnsembleParams) -> McSummary:
    """Run the ensemble described by ``params``."""
    problem = registry_lookup(params.problem)
    return EnsembleService(params.workers).run_ensemble(
        problem,
        params.level,
        ensemble_config(params),
        params.confidence,
        L_y=params.level_y,
        deterministic=params.mode == RunMode.DETERMINISTIC,
    )


def run(config: RunConfig) -> McSummary:
    """Run the ensemble and write the table (and surface file when requested).

    Raises:
        RegistryError: If the problem is unknown
        EnsembleError: If every path failed
        OSError: If an output file cannot be written
    """
    summary = run_summary(config)
    rows = summary_table(summary, table_points(config, summary))
    if config.format == OutputFormat.JSON:
        write_table_json(rows, run_metadata(config, summary), config.output)
    else:
        write_table_csv(rows, config.output)
    if config.grid_out is not None:
        write_surface_csv(surface_rows(summary, config.surface_mesh), config.grid_out)
    return summary

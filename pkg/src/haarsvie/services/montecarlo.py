"""
Monte Carlo ensembles of path solves.

Paths may be solved on a thread pool, but results are buffered and folded into
the statistics strictly in path-index order, so a summary depends only on
(problem, resolution, seed, R, confidence) and never on the thread count.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm

from haarsvie.config import settings
from haarsvie.core.exceptions import DomainError, EnsembleError, SingularSystemError
from haarsvie.schemas.base import readonly
from haarsvie.schemas.brownian import PathEnsembleConfig
from haarsvie.schemas.ensemble import McSummary, PathFailure, SummaryRow, SurfaceRow
from haarsvie.schemas.problem import ProblemSpec
from haarsvie.schemas.solver import PathSolution
from haarsvie.services.brownian import grid_count_for, simulate_path
from haarsvie.services.svie_solver import CollocationOperator
from haarsvie.services.tensor_coeffs import coeffs_from_samples, reconstruct_on_mesh

logger = logging.getLogger(__name__)

Point = Tuple[float, float]
PathResult = Union[PathSolution, PathFailure]

# Coordinate pairs reported in the published table, by resolution level J
_PUBLISHED_POINTS: Dict[int, List[Point]] = {
    0: [(0.25, 0.75)],
    1: [(0.125, 0.375), (0.375, 0.875), (0.625, 0.875)],
    2: [(0.0625, 0.4375), (0.3125, 0.6875), (0.8125, 0.9375)],
    3: [(0.03125, 0.71875), (0.40625, 0.53125), (0.78125, 0.96875)],
    4: [(0.015625, 0.609375), (0.296875, 0.796875), (0.859375, 0.984375)],
}


def z_value(confidence: float) -> float:
    """Two-sided standard normal quantile for ``confidence``."""
    if not 0.0 < confidence < 1.0:
        raise DomainError(
            f"confidence must lie strictly between 0 and 1, got {confidence}",
            details={"confidence": confidence},
        )
    return float(norm.ppf(0.5 + confidence / 2.0))


class _ShiftedMoments:
    """Compensated running sums of (g - shift) and (g - shift)**2.

    The first sample is the shift, so identical samples leave both sums at
    exactly zero.
    """

    def __init__(self) -> None:
        self.count = 0
        self.shift: Optional[np.ndarray] = None
        self._sums: List[np.ndarray] = []
        self._carry: List[np.ndarray] = []

    def add(self, sample: np.ndarray) -> None:
        if self.shift is None:
            self.shift = np.array(sample, dtype=np.float64)
            self._sums = [np.zeros_like(self.shift), np.zeros_like(self.shift)]
            self._carry = [np.zeros_like(self.shift), np.zeros_like(self.shift)]
        delta = sample - self.shift
        for k, term in enumerate((delta, delta * delta)):
            y = term - self._carry[k]
            t = self._sums[k] + y
            self._carry[k] = (t - self._sums[k]) - y
            self._sums[k] = t
        self.count += 1

    def mean(self) -> np.ndarray:
        assert self.shift is not None
        return self.shift + self._sums[0] / self.count

    def std(self) -> np.ndarray:
        assert self.shift is not None
        if self.count < 2:
            return np.zeros_like(self.shift)
        s1, s2 = self._sums
        variance = (s2 - s1 * s1 / self.count) / (self.count - 1)
        return np.sqrt(np.maximum(variance, 0.0))


class EnsembleService:
    """Service for Monte Carlo runs over independent Brownian paths."""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.workers

    def run_ensemble(
        self,
        problem: ProblemSpec,
        L: int,
        config: PathEnsembleConfig,
        confidence: Optional[float] = None,
        L_y: Optional[int] = None,
        deterministic: bool = False,
    ) -> McSummary:
        """Solve R paths and summarize the solution at every collocation point.

        Args:
            problem: Problem to solve
            L: Resolution level in x (and in y unless ``L_y`` is given)
            config: Number of paths, root seed and Brownian grid count
            confidence: Two-sided confidence level, defaults to the setting
            L_y: Optional resolution level in y
            deterministic: Drop the stochastic term; every path then gives the
                same solution and the intervals have zero width

        Returns:
            McSummary: mean, std and confidence bounds on the 2M x 2N grid

        Raises:
            DomainError: If confidence or the grid count is invalid
            EnsembleError: If no path could be solved
        """
        confidence = settings.DEFAULT_CONFIDENCE if confidence is None else confidence
        z = z_value(confidence)
        operator = CollocationOperator(problem, L, L_y)
        self._check_grid(config, operator)

        started = time.perf_counter()
        logger.info(
            f"ensemble start: problem={problem.name} L={L} L_y={operator.y_grid.L} "
            f"R={config.paths} seed={config.seed} deterministic={deterministic}"
        )
        if deterministic:
            results = self._replicate(operator, config.paths)
        else:
            results = self._solve_paths(operator, config)

        moments = _ShiftedMoments()
        failures: List[PathFailure] = []
        for result in results:
            if isinstance(result, PathFailure):
                failures.append(result)
            else:
                moments.add(result.g)

        if moments.count == 0:
            error = EnsembleError(
                f"all {config.paths} paths failed; first failure: {failures[0].reason}",
                details={
                    "seed": config.seed,
                    "failures": [f.model_dump() for f in failures],
                },
            )
            logger.error(
                f"every path of the {problem.name} ensemble failed",
                exc_info=error,
                extra={"seed": config.seed, "paths": config.paths},
            )
            raise error
        if moments.count == 1:
            logger.warning("only one successful path; std is reported as 0")

        mean = moments.mean()
        std = moments.std()
        half_width = z * std / math.sqrt(moments.count)
        logger.info(
            f"ensemble done: problem={problem.name} R_effective={moments.count} "
            f"failures={len(failures)} elapsed={time.perf_counter() - started:.2f}s"
        )
        return McSummary(
            mean=readonly(mean),
            std=readonly(std),
            ci_low=readonly(mean - half_width),
            ci_high=readonly(mean + half_width),
            R=config.paths,
            R_effective=moments.count,
            failures=failures,
            confidence=confidence,
            z=z,
            x_grid=operator.x_grid,
            y_grid=operator.y_grid,
        )

    @staticmethod
    def _check_grid(config: PathEnsembleConfig, operator: CollocationOperator) -> None:
        required = grid_count_for(operator.x_grid.M, operator.y_grid.M, multiplier=1)
        if config.grid_count % required:
            raise DomainError(
                f"grid count {config.grid_count} is not a multiple of {required}",
                details={"grid_count": config.grid_count, "required": required},
            )

    @staticmethod
    def _replicate(operator: CollocationOperator, paths: int) -> List[PathResult]:
        solution = operator.solve(None)
        return [solution] * paths

    def _solve_paths(
        self, operator: CollocationOperator, config: PathEnsembleConfig
    ) -> List[PathResult]:
        def solve_path(path_index: int) -> PathResult:
            path = simulate_path(config, path_index)
            try:
                return operator.solve(path)
            except SingularSystemError as exc:
                logger.warning(
                    f"path {path_index} skipped: {exc}",
                    extra={"seed": config.seed, "path_index": path_index},
                )
                return PathFailure(path_index=path_index, reason=str(exc))

        workers = max(1, min(self.workers, config.paths))
        if workers == 1:
            return [solve_path(k) for k in range(config.paths)]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map yields in submission order, whatever order the paths finish in
            return list(executor.map(solve_path, range(config.paths)))


def run_ensemble(
    problem: ProblemSpec,
    L: int,
    config: PathEnsembleConfig,
    confidence: Optional[float] = None,
    L_y: Optional[int] = None,
    deterministic: bool = False,
    workers: Optional[int] = None,
) -> McSummary:
    """Run an ensemble with a one-off ``EnsembleService``."""
    return EnsembleService(workers).run_ensemble(
        problem, L, config, confidence, L_y=L_y, deterministic=deterministic
    )


def _grid_position(points: np.ndarray, value: float, axis: str) -> int:
    hits = np.flatnonzero(np.abs(points - value) <= settings.NODE_TOLERANCE)
    if hits.size == 0:
        raise DomainError(
            f"{axis}={value} is not a collocation point of the {points.size}-point grid",
            details={axis: value, "grid_size": int(points.size)},
        )
    return int(hits[0])


def all_points(summary: McSummary) -> List[Point]:
    """Every collocation pair, ascending (m, n) with m outer."""
    return [
        (float(x), float(y))
        for x in summary.x_grid.points
        for y in summary.y_grid.points
    ]


def published_points(L: int) -> List[Point]:
    """Coordinate pairs of the published table at resolution level L (0..4)."""
    if L not in _PUBLISHED_POINTS:
        raise DomainError(
            f"no published table points at level {L}",
            details={"L": L, "levels": sorted(_PUBLISHED_POINTS)},
        )
    return list(_PUBLISHED_POINTS[L])


def summary_table(summary: McSummary, points: Sequence[Point]) -> List[SummaryRow]:
    """Table rows (J, M, 2M, x, y, mean, ci_low, ci_high) at collocation pairs.

    Raises:
        DomainError: If a pair is not on the collocation grid
    """
    rows = []
    for x, y in points:
        m = _grid_position(summary.x_grid.points, x, "x")
        n = _grid_position(summary.y_grid.points, y, "y")
        rows.append(
            SummaryRow(
                J=summary.x_grid.L,
                M=summary.x_grid.M,
                two_M=summary.x_grid.size,
                x=float(summary.x_grid.points[m]),
                y=float(summary.y_grid.points[n]),
                mean=float(summary.mean[m, n]),
                ci_low=float(summary.ci_low[m, n]),
                ci_high=float(summary.ci_high[m, n]),
            )
        )
    return rows


def surface_rows(summary: McSummary, mesh: Optional[int] = None) -> List[SurfaceRow]:
    """Mean surface for plotting.

    Without ``mesh`` the rows are the collocation grid itself. With ``mesh = K``
    the mean is reconstructed on the K x K cell midpoints ``(k + 0.5) / K``.
    """
    if mesh is None:
        return [
            SurfaceRow(x=x, y=y, mean=float(summary.mean[m, n]))
            for m, x in enumerate(summary.x_grid.points.tolist())
            for n, y in enumerate(summary.y_grid.points.tolist())
        ]
    if mesh < 1:
        raise DomainError(f"mesh size must be >= 1, got {mesh}", details={"mesh": mesh})
    coords = (np.arange(mesh) + 0.5) / mesh
    values = reconstruct_on_mesh(coeffs_from_samples(summary.mean), coords, coords).tolist()
    return [
        SurfaceRow(x=x, y=y, mean=values[j][k])
        for j, x in enumerate(coords.tolist())
        for k, y in enumerate(coords.tolist())
    ]

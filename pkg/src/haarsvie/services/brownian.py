"""
Brownian paths on a uniform grid and the stochastic Haar integral q_{i,1}.

Each path draws its increments from its own substream
``SeedSequence(seed, spawn_key=(path_index,))``, so a path depends only on
(seed, path_index) and never on the order or thread in which it is simulated.
Paths are only ever read at grid nodes.
"""
import csv
import logging
import math
from pathlib import Path
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from haarsvie.config import settings
from haarsvie.core.exceptions import DomainError, PrecisionError
from haarsvie.schemas.base import readonly
from haarsvie.schemas.brownian import BrownianPath, PathEnsembleConfig, SeedInfo
from haarsvie.services.haar_basis import check_unit, decompose_index, support_breakpoints

logger = logging.getLogger(__name__)


def grid_count_for(M: int, N: int, multiplier: Optional[int] = None) -> int:
    """Smallest grid containing every breakpoint and collocation point.

    Breakpoints sit on multiples of 1/(2M), collocation points on odd
    multiples of 1/(4M), so ``G = 4 * lcm(M, N) * c`` covers both axes.
    """
    c = settings.GRID_MULTIPLIER if multiplier is None else multiplier
    if M < 1 or N < 1 or c < 1:
        raise DomainError("M, N and the grid multiplier must be >= 1")
    return 4 * math.lcm(M, N) * c


def path_rng(seed: int, path_index: int) -> np.random.Generator:
    """Independent generator for one path of the ensemble."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(path_index,)))


def simulate_path(config: PathEnsembleConfig, path_index: int) -> BrownianPath:
    """Simulate path ``path_index`` of the ensemble.

    Args:
        config: Ensemble size, root seed and grid count
        path_index: Index in [0, R)

    Returns:
        BrownianPath: values B(k/G), k = 0..G, with B(0) = 0

    Raises:
        DomainError: If path_index is out of range
    """
    if not 0 <= path_index < config.paths:
        raise DomainError(
            f"path index {path_index} outside [0, {config.paths})",
            details={"path_index": path_index, "paths": config.paths},
        )
    G = config.grid_count
    step = 1.0 / G
    increments = path_rng(config.seed, path_index).standard_normal(G) * math.sqrt(step)
    values = np.empty(G + 1)
    values[0] = 0.0
    np.cumsum(increments, out=values[1:])
    return BrownianPath(
        step=step,
        values=readonly(values),
        seed_info=SeedInfo(seed=config.seed, path_index=path_index),
    )


def from_values(values: ArrayLike, seed_info: Optional[SeedInfo] = None) -> BrownianPath:
    """Wrap explicit node values (fixtures, imposed paths) as a BrownianPath."""
    arr = readonly(values)
    if arr.ndim != 1 or arr.shape[0] < 2:
        raise DomainError(f"a path needs at least two node values, got shape {arr.shape}")
    return BrownianPath(step=1.0 / (arr.shape[0] - 1), values=arr, seed_info=seed_info)


def zero_path(grid_count: int) -> BrownianPath:
    """Path with every increment zero."""
    return from_values(np.zeros(grid_count + 1))


def node_index(path: BrownianPath, t: float) -> int:
    """Grid node k with ``|k * step - t| <= NODE_TOLERANCE``.

    Raises:
        DomainError: If t lies outside [0, 1]
        PrecisionError: If t is not a grid node
    """
    check_unit(t, "t")
    k = int(round(t / path.step))
    if abs(k * path.step - t) > settings.NODE_TOLERANCE:
        raise PrecisionError(
            f"t={t} is not a node of the grid with step {path.step}",
            details={"t": t, "step": path.step},
        )
    return k


def path_value(path: BrownianPath, t: float) -> float:
    """B(t) at a grid node."""
    return float(path.values[node_index(path, t)])


def q_int(i: int, y: float, path: BrownianPath) -> float:
    """Stochastic integral of h_i over [0, y] against the path.

    For i >= 2: B(y) - B(alpha) on [alpha, beta), 2B(beta) - B(alpha) - B(y)
    on [beta, gamma), 0 for y < alpha and 2B(beta) - B(alpha) - B(gamma) past
    gamma. For i = 1 it is B(y).
    """
    idx = decompose_index(i)
    ky = node_index(path, y)
    B = path.values
    if idx.is_constant:
        return float(B[ky])
    assert idx.beta is not None
    ka, kb, kg = (node_index(path, v) for v in (idx.alpha, idx.beta, idx.gamma))
    if ky < ka:
        return 0.0
    if ky < kb:
        return float(B[ky] - B[ka])
    if ky < kg:
        return float(2.0 * B[kb] - B[ka] - B[ky])
    return float(2.0 * B[kb] - B[ka] - B[kg])


def _node_indices(path: BrownianPath, points: np.ndarray) -> np.ndarray:
    k = np.rint(points / path.step).astype(np.int64)
    off = np.abs(k * path.step - points) > settings.NODE_TOLERANCE
    if np.any(off):
        bad = float(points[np.argmax(off)])
        raise PrecisionError(
            f"t={bad} is not a node of the grid with step {path.step}",
            details={"t": bad, "step": path.step},
        )
    return k


def q_matrix(count: int, points: ArrayLike, path: BrownianPath) -> np.ndarray:
    """Matrix ``Q[i-1, k] = q_int(i, points[k], path)`` for i = 1..count."""
    y = np.asarray(points, dtype=np.float64)
    if y.size and (y.min() < 0.0 or y.max() > 1.0):
        raise DomainError("points must lie in [0, 1]")
    B = path.values
    alpha, beta, gamma = support_breakpoints(count)
    ky = _node_indices(path, y)[None, :]
    ka, kb, kg = (_node_indices(path, a)[:, None] for a in (alpha, beta, gamma))
    Bk, Ba, Bb, Bg = B[ky], B[ka], B[kb], B[kg]
    Q = np.where(ky < ka, 0.0, Bk - Ba)
    Q = np.where(ky >= kb, 2.0 * Bb - Ba - Bk, Q)
    Q = np.where(ky >= kg, 2.0 * Bb - Ba - Bg, Q)
    Q[0] = B[ky[0]]
    return Q


def dump_path_csv(path: BrownianPath, destination: Union[str, Path]) -> None:
    """Write a path as CSV with columns k, t, B."""
    with open(destination, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["k", "t", "B"])
        for k, value in enumerate(path.values):
            writer.writerow([k, repr(k * path.step), repr(float(value))])


def load_path_csv(source: Union[str, Path]) -> BrownianPath:
    """Read a path written by ``dump_path_csv``; values round-trip exactly."""
    with open(source, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    if not rows:
        raise DomainError(f"no path values in {source}")
    ks = [int(row["k"]) for row in rows]
    if ks != list(range(len(rows))):
        raise DomainError(f"node column of {source} is not 0..G")
    return from_values([float(row["B"]) for row in rows])

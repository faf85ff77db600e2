"""
Collocation solver for one Brownian path.

Replacing K1(x,y,s,t) g(s,t) and K2(x,y,s,t) g(s,t) by their tensor Haar
expansions in (s, t) and integrating the basis analytically turns the equation
into a square system for g at the collocation points. Row (m, n) reads

    g_mn - sum_pq [K1_mnpq U_x[m,p] U_y[n,q] + K2_mnpq V_x[m,p] V_y[n,q]] g_pq = f_mn

with ``U = P^T W`` and ``V = Q^T W``: P and Q hold p_{i,1} and q_{i,1} at the
collocation points and W holds the coefficient window weights. Everything but V
is independent of the path, so ``CollocationOperator`` builds it once per
problem and resolution.
"""
import logging
from typing import Callable, Optional

import numpy as np
from scipy.linalg import lapack

from haarsvie.config import settings
from haarsvie.core.exceptions import AssemblyError, SingularSystemError
from haarsvie.schemas.base import readonly
from haarsvie.schemas.brownian import BrownianPath
from haarsvie.schemas.haar import CollocationGrid
from haarsvie.schemas.problem import Forcing, ProblemSpec
from haarsvie.schemas.solver import AssembledSystem, PathSolution, from_flat, to_flat
from haarsvie.services.brownian import q_matrix
from haarsvie.services.haar_basis import collocation_grid, p_matrix
from haarsvie.services.tensor_coeffs import analysis_matrix, reconstruct_from_samples

logger = logging.getLogger(__name__)


def _to_rows(block: np.ndarray) -> np.ndarray:
    """[m, n, p, q] tensor -> matrix in the flat ordering (m fastest)."""
    two_m, two_n = block.shape[:2]
    size = two_m * two_n
    return np.ascontiguousarray(block.transpose(1, 0, 3, 2)).reshape(size, size)


def _assembly_failure(message: str, **details) -> AssemblyError:
    error = AssemblyError(message, details=details)
    logger.error(message, exc_info=error, extra={"code": error.code, **details})
    return error


class CollocationOperator:
    """Path-independent part of the collocation system.

    Kernel samples, the deterministic block and the window weights are built
    once; ``assemble`` then only adds the path-dependent stochastic block.
    """

    def __init__(self, problem: ProblemSpec, L: int, L_y: Optional[int] = None):
        self.problem = problem
        self.x_grid: CollocationGrid = collocation_grid(L)
        self.y_grid: CollocationGrid = collocation_grid(L if L_y is None else L_y)
        two_m, two_n = self.x_grid.size, self.y_grid.size
        self.size = two_m * two_n

        xs, ys = self.x_grid.points, self.y_grid.points
        self.rhs_grid = self._sample_forcing(problem.f, xs, ys)
        K1 = self._sample_kernel(problem.K1, "K1", xs, ys)
        K2 = self._sample_kernel(problem.K2, "K2", xs, ys)

        self.W_x = analysis_matrix(two_m)
        self.W_y = analysis_matrix(two_n)
        U_x = p_matrix(two_m, xs).T @ self.W_x
        U_y = p_matrix(two_n, ys).T @ self.W_y
        deterministic = K1 * U_x[:, None, :, None] * U_y[None, :, None, :]
        self.deterministic_block = readonly(_to_rows(deterministic))
        # stored in row layout [n, m, q, p] so the path block needs no transpose
        self._k2_rows = readonly(np.ascontiguousarray(K2.transpose(1, 0, 3, 2)))
        logger.debug(
            f"collocation operator for {problem.name}: {two_m}x{two_n} grid, "
            f"{self.size} unknowns"
        )

    @staticmethod
    def _sample_forcing(f: Forcing, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        shape = (xs.size, ys.size)
        values = np.broadcast_to(
            np.asarray(f(xs[:, None], ys[None, :]), dtype=np.float64), shape
        )
        bad = ~np.isfinite(values)
        if np.any(bad):
            m, n = np.argwhere(bad)[0]
            raise _assembly_failure(
                f"f is not finite at (x, y) = ({xs[m]}, {ys[n]})",
                term="f",
                x=float(xs[m]),
                y=float(ys[n]),
            )
        return readonly(values)

    @staticmethod
    def _sample_kernel(
        kernel: Callable[..., np.ndarray],
        name: str,
        xs: np.ndarray,
        ys: np.ndarray,
    ) -> np.ndarray:
        X = xs[:, None, None, None]
        Y = ys[None, :, None, None]
        S = xs[None, None, :, None]
        T = ys[None, None, None, :]
        shape = (xs.size, ys.size, xs.size, ys.size)
        values = np.broadcast_to(np.asarray(kernel(X, Y, S, T), dtype=np.float64), shape)
        bad = ~np.isfinite(values)
        if np.any(bad):
            m, n, p, q = np.argwhere(bad)[0]
            point = (float(xs[m]), float(ys[n]), float(xs[p]), float(ys[q]))
            raise _assembly_failure(
                f"{name} is not finite at (x, y, s, t) = {point}",
                term=name,
                point=point,
            )
        return values

    def stochastic_block(self, path: BrownianPath) -> np.ndarray:
        """Path-dependent block in the flat ordering."""
        two_m, two_n = self.x_grid.size, self.y_grid.size
        V_x = q_matrix(two_m, self.x_grid.points, path).T @ self.W_x
        V_y = q_matrix(two_n, self.y_grid.points, path).T @ self.W_y
        block = self._k2_rows * V_y[:, None, :, None] * V_x[None, :, None, :]
        return block.reshape(self.size, self.size)

    def assemble(self, path: Optional[BrownianPath]) -> AssembledSystem:
        """System for one path; ``None`` drops the stochastic term."""
        kernel_block = self.deterministic_block
        if path is not None:
            kernel_block = kernel_block + self.stochastic_block(path)
        A = np.eye(self.size) - kernel_block
        return AssembledSystem(
            A=A,
            rhs=readonly(to_flat(self.rhs_grid)),
            x_grid=self.x_grid,
            y_grid=self.y_grid,
            seed_info=None if path is None else path.seed_info,
        )

    def solve(self, path: Optional[BrownianPath]) -> PathSolution:
        return solve_dense(self.assemble(path))


def assemble(
    problem: ProblemSpec,
    path: Optional[BrownianPath],
    L: int,
    L_y: Optional[int] = None,
) -> AssembledSystem:
    """Assemble the collocation system of one path.

    Args:
        problem: Forcing and kernels
        path: Brownian path whose grid holds every breakpoint and collocation
            point, or None for the deterministic system
        L: Resolution level in x (and in y unless ``L_y`` is given)
        L_y: Optional resolution level in y

    Returns:
        AssembledSystem: ``A = I - kernel block`` and ``rhs = f`` on the grid

    Raises:
        AssemblyError: If f, K1 or K2 is not finite at a sampled point
        PrecisionError: If the path grid misses a point the system needs
    """
    return CollocationOperator(problem, L, L_y).assemble(path)


def _singular(message: str, system: AssembledSystem, **details: float) -> SingularSystemError:
    info = system.seed_info.model_dump() if system.seed_info is not None else {}
    return SingularSystemError(message, details={**info, **details})


def solve_dense(system: AssembledSystem) -> PathSolution:
    """LU with partial pivoting, checked against the pivot and residual contracts.

    Raises:
        SingularSystemError: If a pivot falls below ``PIVOT_TOLERANCE * ||A||_inf``
            or the residual exceeds ``RESIDUAL_TOLERANCE * (1 + ||rhs||_inf)``;
            details carry the path seed and index. The failure is not logged
            here; ensembles record it at WARNING and the HTTP layer at ERROR.
    """
    A, rhs = system.A, system.rhs
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(rhs))):
        raise _singular("system contains non-finite entries", system)
    norm_a = float(np.abs(A).sum(axis=1).max())
    lu, piv, info = lapack.dgetrf(A)
    min_pivot = float(np.abs(np.diag(lu)).min())
    if info > 0 or min_pivot < settings.PIVOT_TOLERANCE * norm_a:
        raise _singular(
            f"numerically singular system: min pivot {min_pivot:.3e}, ||A|| {norm_a:.3e}",
            system,
            min_pivot=min_pivot,
            norm=norm_a,
        )
    solution, info = lapack.dgetrs(lu, piv, rhs)
    if info != 0:
        raise _singular(f"LAPACK getrs failed with info={info}", system)

    residual = float(np.abs(A @ solution - rhs).max())
    bound = settings.RESIDUAL_TOLERANCE * (1.0 + float(np.abs(rhs).max()))
    if not np.isfinite(residual) or residual > bound:
        raise _singular(
            f"residual {residual:.3e} exceeds {bound:.3e}",
            system,
            residual=residual,
        )

    logger.debug(
        f"solved system of size {system.size}",
        extra={"min_pivot": min_pivot, "residual": residual},
    )
    return PathSolution(
        g=readonly(from_flat(solution, system.x_grid.size, system.y_grid.size)),
        x_grid=system.x_grid,
        y_grid=system.y_grid,
        min_pivot=min_pivot,
        residual_norm=residual,
        seed_info=system.seed_info,
    )


def solve_once(
    problem: ProblemSpec,
    path: Optional[BrownianPath],
    L: int,
    L_y: Optional[int] = None,
) -> PathSolution:
    """Assemble and solve the system of one path."""
    return solve_dense(assemble(problem, path, L, L_y))


def solve_deterministic(problem: ProblemSpec, L: int, L_y: Optional[int] = None) -> PathSolution:
    """Solve with the stochastic term dropped."""
    return solve_once(problem, None, L, L_y)


def evaluate_offgrid(solution: PathSolution, x: float, y: float) -> float:
    """Solution value at any (x, y) in the unit square from the grid values."""
    return reconstruct_from_samples(solution.g, x, y)


def max_collocation_error(solution: PathSolution, exact: Forcing) -> float:
    """Largest |g - exact| over the collocation grid."""
    X = solution.x_grid.points[:, None]
    Y = solution.y_grid.points[None, :]
    return float(np.abs(solution.g - exact(X, Y)).max())

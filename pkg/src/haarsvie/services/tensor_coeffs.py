"""
Two-dimensional Haar tensor coefficients.

The coefficients of ``G(x, y) ~ sum_p sum_q b_{p,q} h_p(x) h_q(y)`` that
interpolate G at the collocation grid are block-window averages of the samples:
b_{1,1} is the mean, and every other coefficient differences the sums over the
+ and - windows of h_i (and h_j) divided by the window widths. Window sums are
taken from prefix sums, so a full coefficient grid costs O(MN).
"""
import logging
from functools import lru_cache
from typing import Callable, List, Optional, Tuple, Union

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from haarsvie.core.exceptions import DomainError
from haarsvie.schemas.base import readonly
from haarsvie.schemas.coeffs import CoeffGrid, SampleGrid
from haarsvie.schemas.haar import BlockIndices
from haarsvie.services.haar_basis import (
    check_unit,
    collocation_grid,
    haar_eval,
    haar_matrix,
)

logger = logging.getLogger(__name__)

# (first, last, weight) of one window, 1-based inclusive
Window = Tuple[int, int, float]


def _check_half(half: int) -> int:
    if half < 2 or half & (half - 1):
        raise DomainError(
            f"grid size must be a power of two >= 2, got {half}",
            details={"half": half},
        )
    return (half // 2).bit_length() - 1


@lru_cache(maxsize=4096)
def block_indices(i: int, half: int) -> BlockIndices:
    """Window of grid indices covered by h_i on a grid of ``half`` points.

    Args:
        i: Basis index, 2 <= i <= half
        half: Grid size 2M (or 2N)

    Returns:
        BlockIndices: tau, sigma, rho and the 1-based windows [a1, b1], [b1+1, g1]

    Raises:
        DomainError: If i or half is out of range
    """
    _check_half(half)
    if not 2 <= i <= half:
        raise DomainError(
            f"block index {i} outside [2, {half}]",
            details={"i": i, "half": half},
        )
    tau = 1 << ((i - 1).bit_length() - 1)
    sigma = i - tau
    rho = half // tau
    return BlockIndices(
        tau=tau,
        sigma=sigma,
        rho=rho,
        a1=rho * (sigma - 1) + 1,
        b1=rho * (sigma - 1) + rho // 2,
        g1=rho * sigma,
    )


@lru_cache(maxsize=32)
def _window_arrays(half: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    blocks = [block_indices(i, half) for i in range(2, half + 1)]
    a1 = np.array([b.a1 for b in blocks])
    b1 = np.array([b.b1 for b in blocks])
    g1 = np.array([b.g1 for b in blocks])
    rho = np.array([float(b.rho) for b in blocks])
    return a1, b1, g1, rho


@lru_cache(maxsize=32)
def analysis_matrix(half: int) -> np.ndarray:
    """Matrix W with ``b = W_x @ samples @ W_y.T``.

    Row 1 averages the whole grid; row i >= 2 carries +1/rho on [a1, b1] and
    -1/rho on [b1+1, g1].
    """
    _check_half(half)
    W = np.zeros((half, half))
    W[0, :] = 1.0 / half
    for i in range(2, half + 1):
        blk = block_indices(i, half)
        W[i - 1, blk.a1 - 1 : blk.b1] = 1.0 / blk.rho
        W[i - 1, blk.b1 : blk.g1] = -1.0 / blk.rho
    return readonly(W)


def _window_transform(values: np.ndarray) -> np.ndarray:
    """Apply the signed half-window averages along axis 0."""
    half = values.shape[0]
    a1, b1, g1, rho = _window_arrays(half)
    cum = np.zeros((half + 1,) + values.shape[1:])
    np.cumsum(values, axis=0, out=cum[1:])
    out = np.empty_like(values, dtype=np.float64)
    out[0] = cum[half] / half
    shape = (-1,) + (1,) * (values.ndim - 1)
    plus = cum[b1] - cum[a1 - 1]
    minus = cum[g1] - cum[b1]
    out[1:] = (plus - minus) / rho.reshape(shape)
    return out


def _as_samples(samples: Union[SampleGrid, np.ndarray]) -> np.ndarray:
    if isinstance(samples, SampleGrid):
        values = samples.values
    else:
        values = np.asarray(samples, dtype=np.float64)
    if values.ndim != 2:
        raise DomainError(f"samples must be a 2-d grid, got shape {values.shape}")
    _check_half(values.shape[0])
    _check_half(values.shape[1])
    return values


def coeffs_from_samples(samples: Union[SampleGrid, np.ndarray]) -> CoeffGrid:
    """Coefficients b_{p,q} interpolating the samples at every collocation pair.

    Args:
        samples: Values G(x_m, y_n) on a 2M x 2N grid

    Returns:
        CoeffGrid: All four cases (b_11, b_i1, b_1j, b_ij) of the window formulas

    Raises:
        DomainError: If the grid is not 2M x 2N with M, N powers of two
    """
    values = _as_samples(samples)
    b = _window_transform(_window_transform(values).T).T
    return CoeffGrid(b=readonly(b), M=values.shape[0] // 2, N=values.shape[1] // 2)


def kernel_coeffs(samples: Union[SampleGrid, np.ndarray]) -> CoeffGrid:
    """Coefficients b_{p,q}(x, y) of s,t -> K(x, y, s, t) g(s, t) for one (x, y).

    ``samples[p, q]`` holds the product at (s_p, t_q); the arithmetic is that of
    ``coeffs_from_samples``.
    """
    return coeffs_from_samples(samples)


def reconstruct(coeffs: CoeffGrid, x: float, y: float) -> float:
    """Evaluate ``sum_p sum_q b[p, q] h_p(x) h_q(y)``.

    Raises:
        DomainError: If (x, y) lies outside the unit square
    """
    check_unit(x, "x")
    check_unit(y, "y")
    hx = haar_matrix(2 * coeffs.M, [x])[:, 0]
    hy = haar_matrix(2 * coeffs.N, [y])[:, 0]
    return float(hx @ coeffs.b @ hy)


def reconstruct_on_mesh(coeffs: CoeffGrid, xs: ArrayLike, ys: ArrayLike) -> np.ndarray:
    """Values on the tensor mesh xs x ys, one basis matrix per axis.

    Returns:
        np.ndarray: ``out[j, k]`` is the expansion at ``(xs[j], ys[k])``
    """
    hx = haar_matrix(2 * coeffs.M, xs)
    hy = haar_matrix(2 * coeffs.N, ys)
    return hx.T @ coeffs.b @ hy


def _active_terms(coord: float, half: int) -> List[Tuple[float, List[Window]]]:
    """Indices with h_i(coord) != 0, as (h_i(coord), windows of b_i)."""
    if coord >= 1.0:
        return []
    terms: List[Tuple[float, List[Window]]] = [(1.0, [(1, half, 1.0 / half)])]
    for level in range(_check_half(half) + 1):
        m = 1 << level
        i = m + int(coord * m) + 1
        blk = block_indices(i, half)
        windows = [
            (blk.a1, blk.b1, 1.0 / blk.rho),
            (blk.b1 + 1, blk.g1, -1.0 / blk.rho),
        ]
        terms.append((haar_eval(i, coord), windows))
    return terms


def reconstruct_from_samples(
    samples: Union[SampleGrid, np.ndarray],
    x: float,
    y: float,
) -> float:
    """Value at (x, y) straight from the samples, without a coefficient grid.

    Only the L+2 basis functions per axis that are nonzero at the point take
    part; each contributes its window sums, read from a summed-area table.
    """
    check_unit(x, "x")
    check_unit(y, "y")
    values = _as_samples(samples)
    two_m, two_n = values.shape
    table = np.zeros((two_m + 1, two_n + 1))
    table[1:, 1:] = values.cumsum(axis=0).cumsum(axis=1)

    def rect(p0: int, p1: int, q0: int, q1: int) -> float:
        return float(
            table[p1, q1] - table[p0 - 1, q1] - table[p1, q0 - 1] + table[p0 - 1, q0 - 1]
        )

    total = 0.0
    for hx, x_windows in _active_terms(x, two_m):
        for hy, y_windows in _active_terms(y, two_n):
            b = 0.0
            for p0, p1, wp in x_windows:
                for q0, q1, wq in y_windows:
                    b += wp * wq * rect(p0, p1, q0, q1)
            total += b * hx * hy
    return total


def sample_function(
    func: Callable[[np.ndarray, np.ndarray], np.ndarray],
    L: int,
    L_y: Optional[int] = None,
) -> SampleGrid:
    """Sample a broadcasting callable G(x, y) on the collocation grids."""
    x_grid = collocation_grid(L)
    y_grid = collocation_grid(L if L_y is None else L_y)
    X = x_grid.points[:, None]
    Y = y_grid.points[None, :]
    shape = (x_grid.size, y_grid.size)
    values = np.broadcast_to(np.asarray(func(X, Y), dtype=np.float64), shape)
    return SampleGrid(values=readonly(values), x_grid=x_grid, y_grid=y_grid)


def dense_coeffs_solve(samples: Union[SampleGrid, np.ndarray]) -> CoeffGrid:
    """Solve the interpolation system for b by dense elimination.

    Reference for the window formulas; cost grows as (4MN)**3.
    """
    values = _as_samples(samples)
    two_m, two_n = values.shape
    Hx = haar_matrix(two_m, collocation_grid(_check_half(two_m)).points)
    Hy = haar_matrix(two_n, collocation_grid(_check_half(two_n)).points)
    # row (m, n) of the system, C order over b[p, q]
    system = np.kron(Hx.T, Hy.T)
    b = scipy.linalg.solve(system, values.reshape(-1)).reshape(two_m, two_n)
    logger.debug(f"dense interpolation solve of size {system.shape[0]}")
    return CoeffGrid(b=readonly(b), M=two_m // 2, N=two_n // 2)


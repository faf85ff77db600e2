"""
Unnormalized Haar family on [0, 1).

h_1 is the constant 1 on [0, 1). For i >= 2, ``i = 2**l + n + 1`` with
``m = 2**l`` and ``0 <= n < m``; h_i is +1 on [n/m, (n+0.5)/m), -1 on
[(n+0.5)/m, (n+1)/m) and 0 elsewhere. All supports are right-open, so every
h_i vanishes at y = 1.
"""
import logging
from functools import lru_cache
from typing import Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike

from haarsvie.core.exceptions import DomainError
from haarsvie.schemas.base import readonly
from haarsvie.schemas.haar import CollocationGrid, HaarIndex

logger = logging.getLogger(__name__)


def check_index(i: int) -> None:
    if i < 1:
        raise DomainError(f"Haar index must be >= 1, got {i}", details={"i": i})


def check_unit(y: float, name: str = "y") -> None:
    if not 0.0 <= y <= 1.0:
        raise DomainError(
            f"{name} must lie in [0, 1], got {y}",
            details={name: y},
        )


@lru_cache(maxsize=8192)
def decompose_index(i: int) -> HaarIndex:
    """Split a basis index into level, translation and support breakpoints.

    Args:
        i: Basis index, i >= 1

    Returns:
        HaarIndex: Index 1 maps to the constant marker; i >= 2 to (l, n, alpha,
        beta, gamma) with ``i = 2**l + n + 1``.

    Raises:
        DomainError: If i <= 0
    """
    check_index(i)
    if i == 1:
        return HaarIndex(i=1)
    level = (i - 1).bit_length() - 1
    m = 1 << level
    n = i - m - 1
    # dyadic rationals, exact in binary floating point
    return HaarIndex(
        i=i,
        level=level,
        translation=n,
        alpha=n / m,
        beta=(n + 0.5) / m,
        gamma=(n + 1) / m,
    )


def haar_eval(i: int, y: float) -> float:
    """Value of h_i at y (one of -1, 0, 1)."""
    check_unit(y)
    idx = decompose_index(i)
    if idx.is_constant:
        return 1.0 if y < 1.0 else 0.0
    if idx.alpha <= y < idx.beta:
        return 1.0
    if idx.beta <= y < idx.gamma:
        return -1.0
    return 0.0


def p_int(i: int, y: float) -> float:
    """Integral of h_i over [0, y].

    For i >= 2 this is the tent ``y - alpha`` on [alpha, beta), ``gamma - y``
    on [beta, gamma) and 0 elsewhere; for i = 1 it is y.
    """
    check_unit(y)
    idx = decompose_index(i)
    if idx.is_constant:
        return float(y)
    if idx.alpha <= y < idx.beta:
        return y - idx.alpha
    if idx.beta <= y < idx.gamma:
        return idx.gamma - y
    return 0.0


def support_cell_width(i: int) -> float:
    """Width 1/(2 m_i) of the cells on which h_i is constant."""
    return 1.0 / (2 * decompose_index(i).m)


@lru_cache(maxsize=32)
def collocation_grid(L: int) -> CollocationGrid:
    """Collocation points ``(m - 0.5) / (2M)``, m = 1..2M, with M = 2**L."""
    if L < 0:
        raise DomainError(f"resolution level must be >= 0, got {L}", details={"L": L})
    M = 2**L
    points = (np.arange(1, 2 * M + 1, dtype=np.float64) - 0.5) / (2 * M)
    return CollocationGrid(L=L, M=M, points=readonly(points))


def support_breakpoints(count: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """alpha, beta, gamma for indices 1..count (index 1 gets 0, 1, 1)."""
    alpha = np.zeros(count)
    beta = np.ones(count)
    gamma = np.ones(count)
    for i in range(2, count + 1):
        idx = decompose_index(i)
        alpha[i - 1], beta[i - 1], gamma[i - 1] = idx.alpha, idx.beta, idx.gamma
    return alpha, beta, gamma


def _as_unit_points(points: ArrayLike) -> np.ndarray:
    y = np.asarray(points, dtype=np.float64)
    if y.ndim != 1:
        raise DomainError("points must be a 1-d sequence")
    if y.size and (y.min() < 0.0 or y.max() > 1.0):
        raise DomainError("points must lie in [0, 1]")
    return y


def haar_matrix(count: int, points: ArrayLike) -> np.ndarray:
    """Matrix ``H[i-1, k] = h_i(points[k])`` for i = 1..count."""
    check_index(count)
    y = _as_unit_points(points)[None, :]
    alpha, beta, gamma = (a[:, None] for a in support_breakpoints(count))
    H = np.where((y >= alpha) & (y < beta), 1.0, 0.0)
    H -= np.where((y >= beta) & (y < gamma), 1.0, 0.0)
    H[0] = np.where(y[0] < 1.0, 1.0, 0.0)
    return H


def p_matrix(count: int, points: ArrayLike) -> np.ndarray:
    """Matrix ``P[i-1, k] = p_{i,1}(points[k])`` for i = 1..count."""
    check_index(count)
    y = _as_unit_points(points)[None, :]
    alpha, beta, gamma = (a[:, None] for a in support_breakpoints(count))
    P = np.where((y >= alpha) & (y < beta), y - alpha, 0.0)
    P += np.where((y >= beta) & (y < gamma), gamma - y, 0.0)
    P[0] = y[0]
    return P


def midpoint_gram(L: int, indices: Sequence[int] = ()) -> np.ndarray:
    """Discrete inner products ``(1/2M) sum_m h_i(x_m) h_j(x_m)`` on the grid."""
    grid = collocation_grid(L)
    H = haar_matrix(grid.size, grid.points)
    if indices:
        H = H[[i - 1 for i in indices]]
    return (H @ H.T) / grid.size

"""
Brute-force reference computations.

These share no code path with the collocation solver beyond the Brownian
path itself: a composite midpoint rule for deterministic double integrals,
the discrete double Ito sum over grid increments, a Monte Carlo check of the
Ito isometry for q_{i,1}, and plain Gaussian elimination for dense systems.
"""
import logging
from typing import Callable, List, Sequence

import numpy as np
from numpy.typing import ArrayLike

from haarsvie.core.exceptions import DomainError, NonFiniteSampleError, SingularSystemError
from haarsvie.schemas.brownian import BrownianPath, PathEnsembleConfig
from haarsvie.schemas.oracle import MomentEstimate, QuadSpec
from haarsvie.services.brownian import q_matrix, simulate_path
from haarsvie.services.haar_basis import check_index, check_unit

logger = logging.getLogger(__name__)

Integrand = Callable[[np.ndarray, np.ndarray], np.ndarray]

MIN_MOMENT_PATHS = 1000


def _finite_samples(values: np.ndarray, what: str) -> np.ndarray:
    if not np.all(np.isfinite(values)):
        bad = np.argwhere(~np.isfinite(values))[0]
        raise NonFiniteSampleError(
            f"{what} is not finite at sample {tuple(int(k) for k in bad)}",
            details={"sample": [int(k) for k in bad]},
        )
    return values


def quad2d(phi: Integrand, x: float, y: float, spec: QuadSpec) -> float:
    """Composite midpoint approximation of the integral of phi(s, t) over [0,x] x [0,y].

    Args:
        phi: Broadcasting integrand phi(s, t)
        x: Upper limit in s, in [0, 1]
        y: Upper limit in t, in [0, 1]
        spec: Number of cells per axis

    Raises:
        DomainError: If x or y lies outside [0, 1]
        NonFiniteSampleError: If phi returns NaN or infinity at a node
    """
    check_unit(x, "x")
    check_unit(y, "y")
    n = spec.subdivisions
    hs, ht = x / n, y / n
    s = (np.arange(n) + 0.5) * hs
    t = (np.arange(n) + 0.5) * ht
    values = np.broadcast_to(np.asarray(phi(s[:, None], t[None, :]), dtype=np.float64), (n, n))
    _finite_samples(values, "integrand")
    return float(values.sum() * hs * ht)


def _kernel_on_nodes(phi: Integrand, path: BrownianPath) -> np.ndarray:
    G = path.grid_count
    if G < 2:
        raise DomainError(f"path needs at least 2 cells, got {G}", details={"grid_count": G})
    nodes = np.arange(G) * path.step
    # rows follow t_k, columns s_l; left endpoints only
    values = np.broadcast_to(
        np.asarray(phi(nodes[:, None], nodes[None, :]), dtype=np.float64), (G, G)
    )
    return _finite_samples(values, "integrand")


def double_ito_sum(phi: Integrand, path: BrownianPath, restrict_offdiag: bool = True) -> float:
    """Sum over k, l of phi(t_k, s_l) dB_k dB_l with left-point sampling.

    With ``restrict_offdiag`` the k = l terms are dropped, which is the
    step-function approximation of the double Wiener-Ito integral.
    """
    Phi = np.array(_kernel_on_nodes(phi, path))
    if restrict_offdiag:
        np.fill_diagonal(Phi, 0.0)
    dB = path.increments
    return float(dB @ Phi @ dB)


def diagonal_term(phi: Integrand, path: BrownianPath) -> float:
    """Difference between the full and the off-diagonal double sums."""
    Phi = _kernel_on_nodes(phi, path)
    dB = path.increments
    return float(np.diagonal(Phi) @ (dB * dB))


def ito_moment_table(indices: Sequence[int], ensemble: PathEnsembleConfig) -> List[MomentEstimate]:
    """Sample mean and variance of q_{i,1}(1) for several indices over one ensemble.

    Every path is simulated once and evaluated for all indices. The Ito
    isometry puts the variance at 1/m_i.

    Raises:
        DomainError: If the ensemble has fewer than 1000 paths
        PrecisionError: If the path grid misses a breakpoint of some h_i
    """
    if ensemble.paths < MIN_MOMENT_PATHS:
        raise DomainError(
            f"moment checks need at least {MIN_MOMENT_PATHS} paths, got {ensemble.paths}",
            details={"paths": ensemble.paths},
        )
    if not indices:
        return []
    for i in indices:
        check_index(i)
    count = max(indices)
    rows = [i - 1 for i in indices]
    samples = np.empty((ensemble.paths, len(indices)))
    for r in range(ensemble.paths):
        Q = q_matrix(count, [1.0], simulate_path(ensemble, r))
        samples[r] = Q[rows, 0]

    means = samples.mean(axis=0)
    variances = samples.var(axis=0, ddof=1)
    logger.info(
        f"moment check over {ensemble.paths} paths for indices {list(indices)}",
        extra={"seed": ensemble.seed},
    )
    return [
        MomentEstimate(i=i, mean=float(mu), variance=float(var), paths=ensemble.paths)
        for i, mu, var in zip(indices, means, variances)
    ]


def ito_moment_check(i: int, ensemble: PathEnsembleConfig) -> MomentEstimate:
    """Sample mean and variance of q_{i,1}(1) over the ensemble."""
    return ito_moment_table([i], ensemble)[0]


def dense_solve_reference(A: ArrayLike, b: ArrayLike) -> np.ndarray:
    """Gaussian elimination with partial pivoting, without LAPACK.

    Raises:
        DomainError: If the shapes do not match
        SingularSystemError: If a pivot is exactly zero
    """
    U = np.array(A, dtype=np.float64)
    x = np.array(b, dtype=np.float64)
    n = U.shape[0]
    if U.shape != (n, n) or x.shape != (n,):
        raise DomainError(f"incompatible shapes A{U.shape} and b{x.shape}")

    for k in range(n):
        p = k + int(np.argmax(np.abs(U[k:, k])))
        if U[p, k] == 0.0:
            raise SingularSystemError(f"zero pivot in column {k}", details={"column": k})
        if p != k:
            U[[k, p]] = U[[p, k]]
            x[[k, p]] = x[[p, k]]
        factors = U[k + 1 :, k] / U[k, k]
        U[k + 1 :, k:] -= np.outer(factors, U[k, k:])
        x[k + 1 :] -= factors * x[k]

    for k in range(n - 1, -1, -1):
        x[k] = (x[k] - U[k, k + 1 :] @ x[k + 1 :]) / U[k, k]
    return x

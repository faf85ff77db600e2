import numpy as np
import pytest

from haarsvie.core.exceptions import DomainError
from haarsvie.services.haar_basis import collocation_grid, haar_matrix
from haarsvie.services.tensor_coeffs import (
    analysis_matrix,
    block_indices,
    coeffs_from_samples,
    dense_coeffs_solve,
    kernel_coeffs,
    reconstruct,
    reconstruct_from_samples,
    reconstruct_on_mesh,
    sample_function,
)

LEVEL_PAIRS = [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (1, 3), (3, 0)]


@pytest.mark.parametrize(
    "i, half, expected",
    [
        (2, 4, (1, 1, 4, 1, 2, 4)),
        (3, 4, (2, 1, 2, 1, 1, 2)),
        (4, 4, (2, 2, 2, 3, 3, 4)),
        (2, 2, (1, 1, 2, 1, 1, 2)),
        (7, 8, (4, 3, 2, 5, 5, 6)),
    ],
)
def test_block_indices(i, half, expected):
    blk = block_indices(i, half)
    assert (blk.tau, blk.sigma, blk.rho, blk.a1, blk.b1, blk.g1) == expected


@pytest.mark.parametrize("i, half", [(1, 4), (5, 4), (2, 3), (2, 0)])
def test_block_indices_out_of_range(i, half):
    with pytest.raises(DomainError):
        block_indices(i, half)


@pytest.mark.parametrize("L", range(6))
def test_analysis_matrix_inverts_haar_transpose(L):
    grid = collocation_grid(L)
    H = haar_matrix(grid.size, grid.points)
    np.testing.assert_allclose(analysis_matrix(grid.size) @ H.T, np.eye(grid.size), atol=1e-13)


@pytest.mark.parametrize("L, L_y", LEVEL_PAIRS)
def test_coefficients_interpolate_samples_exactly(rng, L, L_y):
    xs, ys = collocation_grid(L).points, collocation_grid(L_y).points
    samples = rng.normal(size=(xs.size, ys.size))
    coeffs = coeffs_from_samples(samples)
    assert (coeffs.M, coeffs.N) == (2**L, 2**L_y)
    Hx = haar_matrix(xs.size, xs)
    Hy = haar_matrix(ys.size, ys)
    np.testing.assert_allclose(Hx.T @ coeffs.b @ Hy, samples, rtol=0, atol=1e-11)


@pytest.mark.parametrize("L, L_y", [(0, 0), (1, 1), (2, 1), (3, 3)])
def test_reconstruct_at_collocation_points(rng, L, L_y):
    xs, ys = collocation_grid(L).points, collocation_grid(L_y).points
    samples = rng.uniform(-2, 2, size=(xs.size, ys.size))
    coeffs = coeffs_from_samples(samples)
    for m, x in enumerate(xs):
        for n, y in enumerate(ys):
            assert reconstruct(coeffs, x, y) == pytest.approx(samples[m, n], abs=1e-11)
            assert reconstruct_from_samples(samples, x, y) == pytest.approx(
                samples[m, n], abs=1e-11
            )


@pytest.mark.parametrize("L, L_y", [(0, 0), (1, 2), (2, 2), (3, 1)])
def test_coefficients_match_dense_solve(rng, L, L_y):
    samples = sample_function(lambda x, y: np.sin(3 * x) * np.exp(y) + x * y, L, L_y)
    fast = coeffs_from_samples(samples)
    dense = dense_coeffs_solve(samples)
    np.testing.assert_allclose(fast.b, dense.b, rtol=0, atol=1e-10)
    random = rng.normal(size=(2 ** (L + 1), 2 ** (L_y + 1)))
    np.testing.assert_allclose(
        coeffs_from_samples(random).b, dense_coeffs_solve(random).b, rtol=0, atol=1e-10
    )


def test_reconstruct_from_samples_matches_coefficients_off_grid(rng):
    samples = rng.normal(size=(8, 4))
    coeffs = coeffs_from_samples(samples)
    for x, y in rng.uniform(0.0, 1.0, size=(25, 2)):
        assert reconstruct_from_samples(samples, x, y) == pytest.approx(
            reconstruct(coeffs, x, y), abs=1e-12
        )


def test_reconstruction_is_piecewise_constant(rng):
    samples = rng.normal(size=(4, 4))
    # (0.3, 0.6) lies in the cell of the collocation pair (0.375, 0.625)
    assert reconstruct_from_samples(samples, 0.3, 0.6) == pytest.approx(
        samples[1, 2], abs=1e-12
    )


def test_reconstruction_vanishes_on_upper_edges(rng):
    samples = rng.normal(size=(4, 4))
    coeffs = coeffs_from_samples(samples)
    assert reconstruct(coeffs, 1.0, 0.5) == 0.0
    assert reconstruct_from_samples(samples, 0.5, 1.0) == 0.0


@pytest.mark.parametrize("x, y", [(-0.1, 0.5), (0.5, 1.2)])
def test_reconstruct_outside_unit_square(x, y):
    samples = np.ones((2, 2))
    with pytest.raises(DomainError):
        reconstruct(coeffs_from_samples(samples), x, y)
    with pytest.raises(DomainError):
        reconstruct_from_samples(samples, x, y)


def test_constant_samples_have_a_single_coefficient():
    coeffs = coeffs_from_samples(sample_function(lambda x, y: 3.5 + 0 * x * y, 2))
    assert coeffs.b[0, 0] == pytest.approx(3.5)
    rest = coeffs.b.copy()
    rest[0, 0] = 0.0
    np.testing.assert_allclose(rest, 0.0, atol=1e-14)


def test_kernel_coeffs_matches_sample_coefficients(rng):
    samples = rng.normal(size=(4, 8))
    np.testing.assert_array_equal(kernel_coeffs(samples).b, coeffs_from_samples(samples).b)


@pytest.mark.parametrize("shape", [(3, 4), (4,), (2, 6)])
def test_samples_must_be_a_dyadic_grid(shape):
    with pytest.raises(DomainError):
        coeffs_from_samples(np.zeros(shape))


@pytest.mark.parametrize("L, L_y", LEVEL_PAIRS)
def test_coefficients_are_linear_in_the_samples(rng, L, L_y):
    shape = (2 ** (L + 1), 2 ** (L_y + 1))
    for _ in range(5):
        first, second = rng.normal(size=shape), rng.normal(size=shape)
        a, b = rng.uniform(-3.0, 3.0, size=2)
        combined = coeffs_from_samples(a * first + b * second).b
        separate = a * coeffs_from_samples(first).b + b * coeffs_from_samples(second).b
        np.testing.assert_allclose(combined, separate, rtol=0, atol=1e-12)


def test_mesh_reconstruction_matches_pointwise_evaluation(rng):
    samples = rng.normal(size=(8, 4))
    coeffs = coeffs_from_samples(samples)
    xs = (np.arange(7) + 0.5) / 7
    ys = np.array([0.0, 0.2, 0.5, 0.99, 1.0])
    mesh = reconstruct_on_mesh(coeffs, xs, ys)
    assert mesh.shape == (7, 5)
    for j, x in enumerate(xs):
        for k, y in enumerate(ys):
            assert mesh[j, k] == pytest.approx(reconstruct_from_samples(samples, x, y), abs=1e-12)


def test_mesh_reconstruction_rejects_points_outside_unit_square():
    with pytest.raises(DomainError):
        reconstruct_on_mesh(coeffs_from_samples(np.ones((2, 2))), [0.5], [1.5])

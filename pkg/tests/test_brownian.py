import numpy as np
import pytest
from pydantic import ValidationError

from haarsvie.core.exceptions import DomainError, PrecisionError
from haarsvie.schemas.brownian import PathEnsembleConfig
from haarsvie.services.brownian import (
    dump_path_csv,
    from_values,
    grid_count_for,
    load_path_csv,
    path_value,
    q_int,
    q_matrix,
    simulate_path,
    zero_path,
)
from haarsvie.services.haar_basis import collocation_grid, decompose_index, haar_matrix


def _riemann_stieltjes(i: int, y: float, path) -> float:
    nodes = np.arange(path.grid_count) * path.step
    h = haar_matrix(i, nodes)[i - 1]
    return float(np.sum(h * path.increments * (nodes < y - 1e-15)))


@pytest.mark.parametrize(
    "M, N, multiplier, expected",
    [(1, 1, 1, 4), (2, 2, 1, 8), (2, 4, 1, 16), (4, 2, 2, 32), (1, 1, 3, 12)],
)
def test_grid_count_for(M, N, multiplier, expected):
    assert grid_count_for(M, N, multiplier) == expected


def test_simulated_path_starts_at_zero():
    path = simulate_path(PathEnsembleConfig(paths=3, seed=1, grid_count=16), 2)
    assert path.values.shape == (17,)
    assert path.values[0] == 0.0
    assert path.step == pytest.approx(1.0 / 16)
    assert (path.seed_info.seed, path.seed_info.path_index) == (1, 2)


def test_path_depends_only_on_seed_and_index():
    small = PathEnsembleConfig(paths=6, seed=99, grid_count=32)
    large = PathEnsembleConfig(paths=500, seed=99, grid_count=32)
    np.testing.assert_array_equal(
        simulate_path(small, 5).values, simulate_path(large, 5).values
    )
    assert not np.array_equal(
        simulate_path(small, 4).values, simulate_path(small, 5).values
    )
    other_seed = PathEnsembleConfig(paths=6, seed=100, grid_count=32)
    assert not np.array_equal(
        simulate_path(small, 5).values, simulate_path(other_seed, 5).values
    )


@pytest.mark.parametrize("index", [-1, 3])
def test_simulate_rejects_out_of_range_index(index):
    with pytest.raises(DomainError):
        simulate_path(PathEnsembleConfig(paths=3, seed=1, grid_count=8), index)


def test_path_value_at_nodes_and_off_grid(make_path):
    path = make_path(8)
    assert path_value(path, 0.0) == 0.0
    assert path_value(path, 0.375) == path.values[3]
    assert path_value(path, 1.0) == path.values[8]
    with pytest.raises(PrecisionError):
        path_value(path, 0.3)
    with pytest.raises(DomainError):
        path_value(path, 1.25)


def test_q_int_constant_index_is_path_value(make_path):
    path = make_path(16)
    for k in range(17):
        assert q_int(1, k / 16, path) == path.values[k]


def test_q_int_closed_form_on_support(make_path):
    path = make_path(8)
    B = path.values
    # h_3 lives on [0, 0.5) with its sign change at 0.25
    assert q_int(3, 0.125, path) == pytest.approx(B[1] - B[0], abs=1e-15)
    assert q_int(3, 0.375, path) == pytest.approx(2 * B[2] - B[0] - B[3], abs=1e-15)
    assert q_int(3, 0.875, path) == pytest.approx(2 * B[2] - B[0] - B[4], abs=1e-15)
    assert q_int(4, 0.25, path) == 0.0


@pytest.mark.parametrize("L", range(5))
def test_q_int_matches_riemann_stieltjes_sum(L):
    M = 2**L
    G = grid_count_for(M, M)
    config = PathEnsembleConfig(paths=100, seed=L, grid_count=G)
    points = set(collocation_grid(L).points.tolist())
    for i in range(2, 2 * M + 1):
        idx = decompose_index(i)
        points.update([idx.alpha, idx.beta, idx.gamma])
    points.add(1.0)
    for r in range(0, 100, 7):
        path = simulate_path(config, r)
        for i in range(1, 2 * M + 1):
            for y in points:
                assert q_int(i, y, path) == pytest.approx(
                    _riemann_stieltjes(i, y, path), abs=1e-12
                )


def test_q_int_rejects_coarse_grid(make_path):
    path = make_path(4)
    with pytest.raises(PrecisionError):
        q_int(5, 0.125, path)
    with pytest.raises(PrecisionError):
        q_int(2, 0.1, path)


def test_q_matrix_matches_q_int(make_path):
    path = make_path(32)
    points = collocation_grid(3).points
    Q = q_matrix(16, points, path)
    for i in range(1, 17):
        for k, y in enumerate(points):
            assert Q[i - 1, k] == pytest.approx(q_int(i, y, path), abs=1e-15)


def test_q_matrix_off_grid_point(make_path):
    with pytest.raises(PrecisionError):
        q_matrix(4, [0.1], make_path(8))


def test_zero_path_gives_zero_integrals():
    path = zero_path(16)
    assert path.grid_count == 16
    assert not np.any(q_matrix(8, collocation_grid(2).points, path))


def test_from_values_rejects_bad_paths():
    with pytest.raises(ValidationError):
        from_values([0.5, 1.0, 0.0])
    with pytest.raises(ValidationError):
        from_values([0.0, np.inf])
    with pytest.raises(DomainError):
        from_values([0.0])


def test_path_csv_round_trip_is_exact(tmp_path, make_path):
    path = make_path(64, seed=3, index=2)
    target = tmp_path / "path.csv"
    dump_path_csv(path, target)
    loaded = load_path_csv(target)
    np.testing.assert_array_equal(loaded.values, path.values)
    assert loaded.step == path.step
    assert target.read_text().splitlines()[0] == "k,t,B"


@pytest.mark.slow
def test_terminal_value_has_unit_variance():
    config = PathEnsembleConfig(paths=100_000, seed=7, grid_count=16)
    terminal = np.array([simulate_path(config, k).values[16] for k in range(config.paths)])
    assert 0.985 <= terminal.var(ddof=1) <= 1.015
    assert abs(terminal.mean()) <= 4 * np.sqrt(1.0 / config.paths)

import math

import pytest

API = "/api/v1"


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_list_problems(client):
    response = client.get(f"{API}/problems/")
    assert response.status_code == 200
    by_name = {p["name"]: p for p in response.json()}
    assert by_name["det-xy"]["has_exact"] is True
    assert by_name["paper-example"]["noise_free"] is False


def test_get_problem(client):
    response = client.get(f"{API}/problems/zero-kernel")
    assert response.status_code == 200
    assert response.json()["name"] == "zero-kernel"


def test_unknown_problem_is_404(client):
    response = client.get(f"{API}/problems/nope")
    assert response.status_code == 404
    body = response.json()
    assert body["error"] == "unknown_problem"
    assert "paper-example" in body["details"]["registered"]


def test_run_ensemble(client):
    response = client.post(
        f"{API}/ensembles/",
        json={"problem": "zero-kernel", "level": 0, "paths": 3, "include_surface": True},
    )
    assert response.status_code == 200
    body = response.json()
    assert len(body["rows"]) == 4
    assert body["rows"][0]["2M"] == 2
    assert body["rows"][0]["mean"] == 0.5
    assert body["metadata"]["R_effective"] == 3
    assert len(body["surface"]) == 4


def test_run_ensemble_published_points(client):
    response = client.post(
        f"{API}/ensembles/",
        json={"problem": "weak-noise", "level": 1, "paths": 20, "points": "published"},
    )
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert [(r["x"], r["y"]) for r in rows] == [(0.125, 0.375), (0.375, 0.875), (0.625, 0.875)]
    assert response.json()["surface"] is None


@pytest.mark.parametrize(
    "payload",
    [
        {"problem": "zero-kernel", "level": 0, "paths": 5000},
        {"problem": "zero-kernel", "level": 9, "paths": 2},
        {"problem": "zero-kernel", "level": 1, "level_y": 8, "paths": 2},
    ],
)
def test_run_ensemble_limits(client, payload):
    response = client.post(f"{API}/ensembles/", json=payload)
    assert response.status_code == 422
    assert response.json()["error"] == "domain_error"


def test_run_ensemble_request_validation(client):
    response = client.post(
        f"{API}/ensembles/", json={"problem": "zero-kernel", "level": 0, "confidence": 2.0}
    )
    assert response.status_code == 422
    assert response.json()["message"] == "Validation Error"


def test_run_ensemble_unknown_problem(client):
    response = client.post(f"{API}/ensembles/", json={"problem": "nope", "level": 0, "paths": 2})
    assert response.status_code == 404


def test_evaluate_deterministic_solution(client):
    response = client.post(
        f"{API}/solutions/evaluate",
        json={
            "problem": "zero-kernel",
            "level": 1,
            "deterministic": True,
            "points": [[0.125, 0.375], [0.3, 0.6]],
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["seed"] is None
    values = [v["value"] for v in body["values"]]
    assert values[0] == pytest.approx(0.5, abs=1e-12)
    # (0.3, 0.6) lies in the cell of (0.375, 0.625)
    assert values[1] == pytest.approx(1.0, abs=1e-12)


def test_evaluate_path_solution(client):
    response = client.post(
        f"{API}/solutions/evaluate",
        json={"problem": "paper-example", "level": 1, "seed": 3, "path_index": 4, "points": [[0.5, 0.5]]},
    )
    assert response.status_code == 200
    body = response.json()
    assert (body["seed"], body["path_index"]) == (3, 4)
    assert math.isfinite(body["values"][0]["value"])


def test_evaluate_outside_unit_square(client):
    response = client.post(
        f"{API}/solutions/evaluate",
        json={"problem": "zero-kernel", "level": 0, "deterministic": True, "points": [[1.5, 0.5]]},
    )
    assert response.status_code == 422


@pytest.mark.parametrize(
    "payload",
    [
        {"problem": "det-xy", "level": 5, "deterministic": True},
        {"problem": "det-xy", "level": 1, "level_y": 6},
        {"problem": "paper-example", "level": 12},
    ],
)
def test_evaluate_respects_level_cap(client, payload):
    response = client.post(f"{API}/solutions/evaluate", json={**payload, "points": [[0.5, 0.5]]})
    assert response.status_code == 422
    body = response.json()
    assert body["error"] == "domain_error"
    assert body["details"]["limit"] == 4


def test_run_ensemble_surface_mesh_cap(client):
    response = client.post(
        f"{API}/ensembles/",
        json={"problem": "zero-kernel", "level": 0, "paths": 2, "surface_mesh": 10_000},
    )
    assert response.status_code == 422
    assert response.json()["details"]["surface_mesh"] == 10_000


def test_run_ensemble_on_surface_mesh(client):
    response = client.post(
        f"{API}/ensembles/",
        json={"problem": "zero-kernel", "level": 1, "paths": 2, "surface_mesh": 8},
    )
    assert response.status_code == 200
    surface = response.json()["surface"]
    assert len(surface) == 64
    # zero kernel: g = f = x + y is piecewise constant on the collocation cells
    first = surface[0]
    assert (first["x"], first["y"]) == (0.0625, 0.0625)
    assert first["mean"] == pytest.approx(0.25, abs=1e-12)

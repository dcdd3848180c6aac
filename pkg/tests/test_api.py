import pytest
from fastapi.testclient import TestClient

from src.api.main import app

from .conftest import BAD_D_SQUARED_TEXT, CP2_TEXT, NOT_MINIMAL_TEXT, S3_TEXT


@pytest.fixture
def client():
    return TestClient(app)


def test_root_and_health(client):
    root = client.get("/")
    assert root.status_code == 200
    assert "certify" in root.json()["endpoints"]

    health = client.get("/health")
    assert health.status_code == 200
    assert health.json()["status"] == "healthy"
    assert health.json()["limits"]["max_degree_limit"] >= 1


def test_homology_endpoint(client):
    response = client.post("/api/v1/models/homology", json={"model": CP2_TEXT, "max_degree": 4})
    assert response.status_code == 200
    dims = response.json()["details"]["dims"]
    assert dims == {"1": 1, "2": 0, "3": 0, "4": 1}


def test_diagonal_endpoint(client):
    response = client.post("/api/v1/models/diagonal", json={"model": CP2_TEXT, "max_degree": 6})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    assert body["details"]["images"]["x"] == "x@1 + x@2"


def test_cat_endpoint(client):
    response = client.post("/api/v1/certify/cat", json={"model": S3_TEXT, "max_degree": 4, "max_n": 2})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "certificate"
    assert body["certificate"] == {"v": "v@1 + v@2"}
    assert body["details"]["bound"] == 1


def test_secat_endpoint_with_options(client):
    response = client.post("/api/v1/certify/secat", json={
        "model": CP2_TEXT,
        "max_degree": 4,
        "n": 1,
        "options": {"budget": 16, "restarts": 0},
    })
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "no_certificate"
    assert body["details"]["outcomes"][0]["exhaustive"] is True


def test_malformed_model_is_400(client):
    response = client.post("/api/v1/models/check", json={"model": "generator x one\n"})
    assert response.status_code == 400
    assert "line 1" in response.json()["detail"]


def test_non_minimal_model_is_400(client):
    response = client.post("/api/v1/certify/cat", json={"model": NOT_MINIMAL_TEXT, "max_degree": 4})
    assert response.status_code == 400


def test_invariant_violation_is_422(client):
    response = client.post("/api/v1/models/homology", json={"model": BAD_D_SQUARED_TEXT, "max_degree": 4})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("InvariantViolation")


def test_request_validation(client):
    response = client.post("/api/v1/models/fatwedge", json={"model": CP2_TEXT, "n": -1})
    assert response.status_code == 422
    response = client.post("/api/v1/models/check", json={"model": CP2_TEXT, "max_degree": 99})
    assert response.status_code == 400


def test_unknown_route_is_json_404(client):
    response = client.get("/api/v1/nowhere")
    assert response.status_code == 404
    assert response.json()["error"] == "NotFound"

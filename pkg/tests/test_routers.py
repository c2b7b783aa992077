import pytest
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


def test_root(client):
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["endpoints"] == {"structures": "/structures", "experiments": "/experiments"}


def test_report(client):
    response = client.get("/structures/report", params={"descriptor": "artin:A2", "k": 4})
    assert response.status_code == 200
    body = response.json()
    assert body["acceptor_vertices"] == 4
    assert body["word_counts"] == ["1", "4", "8", "16", "32"]


def test_acceptor(client):
    response = client.get("/structures/acceptor", params={"descriptor": "table:aa_bb.json", "k": 3})
    assert response.json() == {"structure": "table:aa_bb.json", "vertices": 2, "edges": 2,
                               "digraph": "a\nb\na -> b\nb -> a\n", "word_counts": ["1", "2", "2", "2"]}


def test_essential(client):
    body = client.get("/structures/essential", params={"descriptor": "table:abc.json"}).json()
    assert body["essential"] == ["a", "aa", "b", "bb", "c", "cc"]
    assert body["transitivity"]["components"] == 2


def test_growth_and_delta_pure(client):
    growth = client.get("/structures/growth", params={"descriptor": "artin:A2"}).json()
    assert growth["rate"] == pytest.approx(2.0)
    pure = client.get("/structures/delta-pure", params={"descriptor": "artin:A3"}).json()
    assert pure["pure"]


def test_pseq(client):
    body = client.get("/structures/pseq", params={"descriptor": "artin:A2", "k": 3}).json()
    assert (body["states"], body["edges"]) == (6, 0)
    assert body["counts"] == ["6", "0", "0"]


def test_bad_descriptor_is_a_client_error(client):
    response = client.get("/structures/report", params={"descriptor": "artin:Z9"})
    assert response.status_code == 400
    assert response.json()["detail"].startswith("Error building report:")


def test_missing_descriptor(client):
    assert client.get("/structures/growth").status_code == 422


def test_pd_experiment(client):
    payload = {"structure": "artin:A3", "k_values": [2, 4], "samples": 10, "seed": 1}
    response = client.post("/experiments/pd", json=payload)
    assert response.status_code == 200
    rows = response.json()
    assert [row["k"] for row in rows] == [2, 4]
    assert response.json() == client.post("/experiments/pd", json=payload).json()


def test_pd_experiment_validation(client):
    response = client.post("/experiments/pd", json={"structure": "artin:A3", "k_values": [], "samples": 1})
    assert response.status_code == 422

from fastapi.testclient import TestClient

from fastapi_app import app
from simflat.exact import identity, matrix, same
from utils.state import matrices_compress, matrices_decompress

client = TestClient(app)

C4 = [[["0", "1"], ["-1", "0"]]]


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_config():
    data = client.get("/config").json()
    assert {"order_cap", "node_cap", "workers", "db_dir"} <= set(data)


def test_group_order():
    response = client.post("/groups/order", json={"generators": C4})
    assert response.json() == {"order": 4}


def test_group_order_compressed():
    payload = matrices_compress([matrix([[0, 1], [-1, 0]])])
    response = client.post("/groups/order", json={"compressed": payload})
    assert response.json() == {"order": 4}


def test_symplectic():
    data = client.post("/groups/symplectic", json={"generators": C4}).json()
    assert data == {"symplectic": True, "irreducible": True}


def test_malformed_generators():
    response = client.post("/groups/order", json={"generators": [[["0", "1"], ["-1"]]]})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("MalformedEntry")


def test_isometry():
    data = client.post(
        "/lattices/isometry",
        json={"forms_a": [[["2", "1"], ["1", "2"]]], "forms_b": [[["2", "-1"], ["-1", "2"]]]},
    ).json()
    assert data["isometric"] is True
    data = client.post(
        "/lattices/isometry",
        json={"forms_a": [[["2", "1"], ["1", "2"]]], "forms_b": [[["1", "0"], ["0", "1"]]]},
    ).json()
    assert data == {"isometric": False, "transform": None}


def test_short_vectors():
    data = client.post(
        "/lattices/short-vectors", json={"form": [["2", "1"], ["1", "2"]], "bound": "2"}
    ).json()
    assert len(data["vectors"]) == 3


def test_normalize():
    data = client.post(
        "/lattices/normalize", json={"lattice": [["2", "0"], ["0", "2"]], "form": [["1", "0"], ["0", "1"]]}
    ).json()
    assert data["det"] == 1
    assert data["discriminant_group"] == []


def test_database_listing():
    data = client.get("/database/2").json()
    assert [row["name"] for row in data] == ["C4", "C6"]
    assert client.get("/database/6").json() == []


def test_compress_round_trip():
    mats = [identity(3), matrix([["1/2", "0"], ["0", "-3"]])]
    back = matrices_decompress(matrices_compress(mats))
    assert all(same(a, b) for a, b in zip(mats, back))

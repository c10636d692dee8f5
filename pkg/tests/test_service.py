import json
import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from weillift.service import app


@pytest.fixture(scope="module")
def client():
    return TestClient(app)


@pytest.fixture(scope="module")
def spec():
    with open("specs/so3.json", "r", encoding="utf-8") as handle:
        return json.load(handle)


def test_health(client):
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json()["status"] == "ok"


def test_algebra_validate(client, spec):
    response = client.post("/algebra/validate", json={"spec": spec})
    assert response.status_code == 200
    body = response.json()
    assert body["dim_total"] == 2
    assert body["p"] == ["0", "1"]
    assert body["q_lower"] == [["0", "1"], ["1", "0"]]


def test_algebra_validate_rejects_degenerate(client, spec):
    bad = dict(spec)
    bad["frobenius"] = {"p": ["1", "0"]}
    response = client.post("/algebra/validate", json={"spec": bad})
    assert response.status_code == 400
    assert response.json()["error"]["type"] == "NotFrobenius"


def test_prolong(client, spec):
    response = client.post("/prolong", json={"spec": spec, "function": "g"})
    assert response.status_code == 200
    body = response.json()
    assert body["scheffers_ok"] is True
    assert len(body["prolonged"]["components"]) == 2


def test_prolong_unknown_function(client, spec):
    response = client.post("/prolong", json={"spec": spec, "function": "ghost"})
    assert response.status_code == 400
    assert response.json()["error"]["type"] == "UnknownReference"


def test_lift_complete(client, spec):
    response = client.post("/lift", json={"spec": spec, "target": "w",
                                          "lift": "complete"})
    assert response.status_code == 200
    body = response.json()
    assert body["field"]["dim"] == 6
    assert body["field"]["type"] == [0, 2]
    assert body["field"]["components"]


def test_lift_selectors(client, spec):
    vertical = client.post("/lift", json={"spec": spec, "target": "w",
                                          "lift": "vertical"}).json()
    top = client.post("/lift", json={"spec": spec, "target": "w",
                                     "lift": {"a": 1}}).json()
    assert vertical["field"] == top["field"]
    eps = client.post("/lift", json={"spec": spec, "target": "w",
                                     "lift": {"epsilon": ["0", "1"]}}).json()
    assert eps["field"] == vertical["field"]


def test_lift_bad_selector(client, spec):
    response = client.post("/lift", json={"spec": spec, "target": "w",
                                          "lift": "diagonal"})
    assert response.status_code == 400


def test_bracket(client, spec):
    response = client.post("/bracket", json={"spec": spec, "u": "w", "v": "v"})
    assert response.status_code == 200
    assert response.json()["bracket"]["type"] == [0, 2]


def test_modular(client, spec):
    response = client.post("/modular", json={"spec": spec, "bivector": "w",
                                             "density": "lam"})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "ok"
    comps = {tuple(c["upper"]): c["poly"] for c in body["modular"]["components"]}
    assert set(comps) == {(1,), (2,)}


def test_modular_jacobi_failure(client, spec):
    doc = json.loads(json.dumps(spec))
    doc["tensors"]["bad"] = {
        "dim": 3, "type": [0, 2], "antisymmetric": True,
        "components": [
            {"upper": [0, 1], "poly": [{"c": "1", "e": [1, 1, 0]}]},
            {"upper": [0, 2], "poly": [{"c": "1", "e": [0, 0, 2]}]},
            {"upper": [1, 2], "poly": [{"c": "1", "e": [0, 1, 0]},
                                       {"c": "1", "e": [0, 0, 1]}]},
        ],
    }
    response = client.post("/modular", json={"spec": doc, "bivector": "bad"})
    assert response.status_code == 200
    body = response.json()
    assert body["status"] == "jacobi_failed"
    assert body["witness"]["triple"] == [0, 1, 2]


def test_verify_selected_checks(client, spec):
    response = client.post("/verify", json={
        "spec": spec, "seed": 1, "cases": 3,
        "checks": ["algebra-star-transport", "lift-element-linearity"]})
    assert response.status_code == 200
    body = response.json()
    assert body["summary"] == {"pass": 2, "fail": 0, "total": 2}
    assert [c["name"] for c in body["checks"]] \
        == ["algebra-star-transport", "lift-element-linearity"]


def test_verify_deterministic(client, spec):
    payload = {"spec": spec, "seed": 5, "cases": 2,
               "checks": ["poisson-modular-nilpotent"]}
    first = client.post("/verify", json=payload).text
    second = client.post("/verify", json=payload).text
    assert first == second


def test_parse_error_is_400(client):
    response = client.post("/algebra/validate", json={"spec": {"dim": 2}})
    assert response.status_code == 400
    assert response.json()["error"]["type"] == "ParseError"

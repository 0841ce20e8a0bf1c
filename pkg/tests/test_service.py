"""HTTP service: route behavior, error status mapping, and agreement with
the in-process handlers (the byte-level contract behind the CLI's --server
flag)."""

import pytest
from fastapi.testclient import TestClient

from twisted_schur.service import create_app
from twisted_schur.service.handlers import (handle_lift, handle_multiplier,
                                            handle_regular_rep,
                                            handle_repgroups)

Z2_PAYLOAD = {"group": {"family": "cyclic", "params": {"n": 2}},
              "action": [-1]}
RR_PAYLOAD = {"group": {"family": "cyclic", "params": {"n": 2}},
              "action": [-1],
              "cocycle": {"degree": 2, "modulus": 2, "values": {"1,1": 1}}}


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


def test_healthz(client):
    r = client.get("/healthz")
    assert r.status_code == 200 and r.json() == {"status": "ok"}


def test_multiplier_route_matches_handler(client):
    r = client.post("/v1/multiplier", json=Z2_PAYLOAD)
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["schema"] == "twisted-schur/1"
    assert body["invariants"] == [2] and body["order"] == 2
    assert body == handle_multiplier(Z2_PAYLOAD)


def test_repgroups_route_matches_handler(client):
    r = client.post("/v1/repgroups", json=Z2_PAYLOAD)
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["count"] == 1
    assert body["results"][0]["order"] == 4
    assert body["results"][0]["identified_as"] == "Z4"
    assert body["results"][0]["report"]["verdict"] is True
    assert body == handle_repgroups(Z2_PAYLOAD)


def test_cohomology_route_representatives_key_is_optional(client):
    base = {"group": {"family": "cyclic", "params": {"n": 2}},
            "degree": 3,
            "coefficients": {"sign": [-1]}}
    r = client.post("/v1/cohomology", json=dict(base, reps=True))
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["invariants"] == [2]
    assert len(body["representatives"]) == 1
    r2 = client.post("/v1/cohomology", json=base)
    assert r2.status_code == 200
    assert "representatives" not in r2.json()


def test_regular_rep_and_lift_routes(client):
    r = client.post("/v1/regular-rep", json=RR_PAYLOAD)
    assert r.status_code == 200, r.text
    rep_file = r.json()
    assert rep_file["modulus"] == 2
    assert rep_file["maps"]["1"] == {"perm": [1, 0], "exps": [0, 1],
                                     "conj": True}
    assert rep_file == handle_regular_rep(RR_PAYLOAD)

    witness = handle_repgroups(Z2_PAYLOAD)["results"][0]["witness"]
    r = client.post("/v1/lift", json={"rep": rep_file, "extension": witness})
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["success"] is True, body
    # in the order-4 covering group, index 1 is the section image of the
    # nontrivial base element and index 2 the inclusion of the kernel
    assert body["rep"]["maps"]["1"] == {"perm": [1, 0], "exps": [0, 1],
                                        "conj": True}
    assert body["rep"]["maps"]["2"] == {"perm": [0, 1], "exps": [1, 1],
                                        "conj": False}
    assert body == handle_lift({"rep": rep_file, "extension": witness})


def test_unliftable_class_is_a_result_not_an_error(client):
    rep_file = handle_regular_rep(RR_PAYLOAD)
    split = {
        "group": {"family": "cyclic", "params": {"n": 2}},
        "module": {"free_rank": 0, "moduli": [2]},
        "beta": {"degree": 2, "free_rank": 0, "moduli": [2], "values": {}},
    }
    r = client.post("/v1/lift", json={"rep": rep_file, "extension": split})
    assert r.status_code == 200, r.text
    body = r.json()
    assert body["success"] is False
    assert body["alpha_class"] == [1]
    assert body["alpha_class"] not in body["transgression_image"]
    assert "rep" not in body


def test_error_status_mapping(client):
    # violated precondition: a non-cocycle -> 422
    bad = dict(RR_PAYLOAD,
               cocycle={"degree": 2, "modulus": 4, "values": {"1,1": 1}})
    r = client.post("/v1/regular-rep", json=bad)
    assert r.status_code == 422
    assert r.json()["error"]["type"] == "PreconditionError"
    # malformed input -> 400, whether caught by us or by the models
    r = client.post("/v1/multiplier", json={"group": {}, "action": [-1]})
    assert r.status_code == 400
    assert r.json()["error"]["type"] == "InputError"
    r = client.post("/v1/multiplier", json={"group": 7, "action": [-1]})
    assert r.status_code == 400
    # budget -> 413
    r = client.post("/v1/multiplier", json={
        "group": {"family": "dihedral", "params": {"n": 40000}},
        "action": [1, 1]})
    assert r.status_code == 413
    assert r.json()["error"]["type"] == "ResourceError"


def test_heisenberg_route(client):
    r = client.get("/v1/heisenberg")
    assert r.status_code == 200
    body = r.json()
    assert body["closure_order"] == 2592
    assert body["scalar_order"] == 6
    assert body["quotient_order"] == 432

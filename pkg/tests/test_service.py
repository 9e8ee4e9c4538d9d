"""HTTP facade: every route returns a well-formed report envelope, the
verify route re-checks reports, errors carry positions, and identical
requests give identical bytes."""

import pytest
from fastapi.testclient import TestClient

from ncequiv.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


PAIR = {"f": "x*y+1", "g": "y*x+1"}


def post_ok(client, path, body):
    resp = client.post(path, json=body)
    assert resp.status_code == 200, (path, resp.status_code, resp.text)
    report = resp.json()
    assert set(report) >= {"command", "exit_code", "inputs", "config"}
    assert report["exit_code"] in (0, 1, 2)
    return report


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_eval_route(client):
    report = post_ok(client, "/eval", {
        "f": "x*y+1",
        "tuple": {"field": "Q", "size": 2,
                  "matrices": [[["1", "0"], ["0", "0"]],
                               [["0", "1"], ["0", "0"]]]},
    })
    assert report["command"] == "eval"
    assert report["exit_code"] == 0
    assert report["value"] == [["1", "1"], ["0", "1"]]


def test_eval_route_sampled(client):
    report = post_ok(client, "/eval", {"f": "x*y-y*x"})
    assert report["exit_code"] == 0
    assert "tuple" in report


def test_intertwiner_route(client):
    report = post_ok(client, "/intertwiner", dict(PAIR))
    assert report["exit_code"] == 0
    assert report["space"]["dimension"] == 1
    assert report["space"]["basis"] == ["x"]


def test_isospectral_routes(client):
    yes = post_ok(client, "/isospectral", dict(PAIR))
    assert yes["exit_code"] == 0
    assert yes["intertwiner"] == "x"
    no = post_ok(client, "/isospectral",
                 {"f": "x*y*x*y+x*y+x", "g": "x*y^2*x+x*y+x"})
    assert no["exit_code"] == 1
    assert no["witness"]["kind"] == "char_poly"


def test_chain_route(client):
    report = post_ok(client, "/chain", dict(PAIR))
    assert report["exit_code"] == 0
    assert len(report["steps"]) == 1
    step = report["steps"][0]
    assert step["source"] == "x*y + 1"
    assert step["target"] == "y*x + 1"


def test_stable_assoc_route(client):
    report = post_ok(client, "/stable-assoc",
                     {"f": "x*y*x*y+x*y+x", "g": "x*y^2*x+x*y+x"})
    assert report["exit_code"] == 0
    cert = report["certificate"]
    assert set(cert) >= {"right_multiplier", "left_multiplier",
                         "comax_right", "comax_left"}
    refuted = post_ok(client, "/stable-assoc", {"f": "x*y", "g": "y*x"})
    assert refuted["exit_code"] == 1
    assert refuted["witness"]["kind"] == "rank"


def test_similar_route(client):
    report = post_ok(client, "/similar", dict(PAIR))
    assert report["exit_code"] == 1
    same = post_ok(client, "/similar", {"f": "x*y+1", "g": "x*y+1"})
    assert same["exit_code"] == 0


def test_norm_equiv_route(client):
    body = {"f": "x*y+i*x", "g": "i*x*y-x",
            "config": {"field": "Q(i)"}}
    report = post_ok(client, "/norm-equiv", body)
    assert report["exit_code"] == 0
    assert report["scalar"] == "i"
    neg = post_ok(client, "/norm-equiv",
                  {"f": "x", "g": "2*x", "config": {"field": "Q(i)"}})
    assert neg["exit_code"] == 1


def test_decompose_route(client):
    report = post_ok(client, "/decompose", {"f": "x*y*x*y+2*x*y+3"})
    assert report["exit_code"] == 0
    assert report["core"] == "x*y"
    assert "t^2" in report["outer"]


def test_factor_homog_route(client):
    report = post_ok(client, "/factor-homog", {"f": "x*y*x+x^3"})
    assert report["exit_code"] == 0
    assert report["atoms"]


def test_gcrd_route(client):
    report = post_ok(client, "/gcrd", {"f": "x*y*x", "g": "y*x"})
    assert report["exit_code"] in (0, 1, 2)
    if report["exit_code"] == 0:
        assert report["h"]


def test_comax_route(client):
    report = post_ok(client, "/comax",
                     {"f": "x*y+1", "g": "x", "side": "right"})
    assert report["exit_code"] == 0
    assert set(report["certificate"]) == {"u", "v"}


def test_pencil_sim_route(client):
    a = {"field": "Q", "size": 2,
         "matrices": [[["0", "1"], ["0", "0"]]]}
    b = {"field": "Q", "size": 2,
         "matrices": [[["0", "0"], ["0", "0"]]]}
    report = post_ok(client, "/pencil-sim", {"a": a, "b": b})
    assert report["exit_code"] == 1
    same = post_ok(client, "/pencil-sim", {"a": a, "b": a})
    assert same["exit_code"] == 0
    assert same["certificate"]["matrix"] == [["1", "0"], ["0", "1"]]


def test_pad_pencil_route(client):
    body = {
        "pencil": {"field": "Q", "size": 1, "kind": "homogeneous",
                   "coefficients": [[["1"]]]},
        "matrices": {"field": "Q", "matrices": [[["1"], ["0"]]]},
    }
    report = post_ok(client, "/pad-pencil", body)
    assert report["exit_code"] == 0
    assert report["claimed_rank"] == 2
    assert report["verified"] is True


def test_nc_witness_route(client):
    report = post_ok(client, "/nc-witness", {"f": "x", "g": "y"})
    assert report["exit_code"] == 0
    assert report["witness"] is not None
    commuting = post_ok(client, "/nc-witness", {"f": "x", "g": "x^2"})
    assert commuting["exit_code"] == 1


def test_verify_paper_route(client):
    report = post_ok(client, "/verify-paper", {})
    assert report["exit_code"] == 0
    assert report["ok"] is True
    assert len(report["items"]) == 10
    for item in report["items"]:
        assert set(item) == {"name", "ok", "detail"}


def test_verify_route_round_trip(client):
    for path, body in [
        ("/stable-assoc", {"f": "x*y*x*y+x*y+x", "g": "x*y^2*x+x*y+x"}),
        ("/isospectral", dict(PAIR)),
        ("/similar", dict(PAIR)),
        ("/comax", {"f": "x*y+1", "g": "x", "side": "right"}),
    ]:
        report = post_ok(client, path, body)
        resp = client.post("/verify", json=report)
        assert resp.status_code == 200, resp.text
        out = resp.json()
        assert out["ok"] is True, out


def test_verify_route_rejects_tampered_report(client):
    report = post_ok(client, "/stable-assoc",
                     {"f": "x*y*x*y+x*y+x", "g": "x*y^2*x+x*y+x"})
    report["certificate"]["right_multiplier"] = "y*x+2"
    resp = client.post("/verify", json=report)
    assert resp.status_code == 200
    assert resp.json()["ok"] is False


def test_verify_route_rejects_malformed_report(client):
    resp = client.post("/verify", json={"command": "stable-assoc"})
    assert resp.status_code == 400


def test_parse_error_maps_to_400_with_position(client):
    resp = client.post("/isospectral", json={"f": "x*++y", "g": "x"})
    assert resp.status_code == 400
    body = resp.json()
    assert body["position"] == 3
    assert "position" in body["error"]


def test_config_validation_maps_to_422(client):
    resp = client.post("/isospectral",
                       json={"f": "x", "g": "x", "config": {"samples": 0}})
    assert resp.status_code == 422
    resp = client.post("/isospectral",
                       json={"f": "x", "g": "x", "unexpected": 1})
    assert resp.status_code == 422


def test_identical_requests_identical_bodies(client):
    body = {"f": "x*y*x*y+x*y+x", "g": "x*y^2*x+x*y+x",
            "config": {"seed": 7}}
    first = client.post("/stable-assoc", json=body)
    second = client.post("/stable-assoc", json=body)
    assert first.content == second.content


def test_unknown_variable_rejected(client):
    resp = client.post("/isospectral",
                       json={"f": "x*z", "g": "x",
                             "config": {"vars": ["x", "y"]}})
    assert resp.status_code == 400

"""Session service HTTP contract."""

import json

import pytest
from fastapi.testclient import TestClient

from ahpkit.formats import model_to_dict
from ahpkit.hierarchy import ratio_model_from_weights
from ahpkit.service import SessionStore, create_app
from tests.conftest import FIXTURES, W3_ROWS, exact


@pytest.fixture
def client():
    return TestClient(create_app(SessionStore(":memory:")))


@pytest.fixture
def car_seed():
    return json.loads((FIXTURES / "models" / "car.json").read_text())


def create_session(client, seed) -> tuple[str, int]:
    r = client.post("/sessions", json={"seed": seed})
    assert r.status_code == 201
    body = r.json()
    return body["id"], body["revision"]


class TestSessionLifecycle:
    def test_create_from_seed_and_fetch(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        r = client.get(f"/sessions/{sid}")
        assert r.status_code == 200
        assert r.headers["ETag"] == str(rev)
        body = r.json()
        assert body["goal"] == "Choose the best car"
        assert [m["key"] for m in body["matrices"]] == [
            "criteria",
            "Prestige",
            "Price",
            "MPG",
            "Comfort",
        ]
        assert all(m["complete"] for m in body["matrices"])

    def test_skeleton_session_starts_empty(self, client):
        r = client.post(
            "/sessions",
            json={"goal": "g", "criteria": ["C1", "C2"], "alternatives": ["a", "b", "c"]},
        )
        assert r.status_code == 201
        matrices = {m["key"]: m for m in r.json()["matrices"]}
        assert matrices["criteria"]["completion"] == 0.0
        assert matrices["C1"]["cells"][0][0] == 1.0
        assert matrices["C1"]["cells"][0][1] is None

    def test_single_criterion_skeleton_has_no_criteria_matrix(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C"], "alternatives": ["a", "b"]}
        )
        assert [m["key"] for m in r.json()["matrices"]] == ["C"]

    def test_unknown_session_404(self, client):
        assert client.get("/sessions/nope").status_code == 404

    def test_delete_session(self, client, car_seed):
        sid, _ = create_session(client, car_seed)
        assert client.delete(f"/sessions/{sid}").status_code == 204
        assert client.get(f"/sessions/{sid}").status_code == 404
        assert client.delete(f"/sessions/{sid}").status_code == 404

    def test_bad_seed_rejected(self, client):
        r = client.post("/sessions", json={"seed": {"goal": "g"}})
        assert r.status_code == 422


class TestJudgments:
    def test_pair_entry_and_theta(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C"], "alternatives": ["a", "b"]}
        )
        sid, rev = r.json()["id"], r.json()["revision"]
        r1 = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "C", "i": 0, "j": 1, "value": "3/2"},
            headers={"If-Match": str(rev)},
        )
        assert r1.status_code == 200
        assert r1.json()["pair"]["theta"] is None
        r2 = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "C", "i": 1, "j": 0, "value": 0.5},
            headers={"If-Match": r1.headers["ETag"]},
        )
        assert r2.status_code == 200
        assert r2.json()["pair"]["theta"] == pytest.approx(0.75)
        view = r2.json()["session"]
        pair = view["matrices"][0]["pairs"][0]
        assert pair["value_ij"] == 1.5 and pair["value_ji"] == 0.5

    def test_mirror_violation_carries_theta_and_repair(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C"], "alternatives": ["a", "b"]}
        )
        sid, rev = r.json()["id"], r.json()["revision"]
        client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "C", "i": 0, "j": 1, "value": "3/2"},
            headers={"If-Match": str(rev)},
        )
        bad = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "C", "i": 1, "j": 0, "value": 0.8},
            headers={"If-Match": "2"},
        )
        assert bad.status_code == 422
        detail = bad.json()["detail"]
        assert detail["error"] == "pair-product-bound"
        assert detail["theta"] == pytest.approx(1.2)
        repaired = detail["suggestion"]
        # the suggested pair is the mirror image of the offending one
        assert repaired["a_ij"] * repaired["a_ji"] == pytest.approx(1 / 1.2)
        # the rejected mutation must not have advanced the revision
        assert client.get(f"/sessions/{sid}").json()["revision"] == 2

    def test_missing_if_match_is_precondition_required(self, client, car_seed):
        sid, _ = create_session(client, car_seed)
        r = client.put(
            f"/sessions/{sid}/judgment", json={"matrix": "Price", "i": 0, "j": 1, "value": 2}
        )
        assert r.status_code == 428

    def test_stale_revision_conflicts(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        ok = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "Price", "i": 0, "j": 1, "value": "1/5"},
            headers={"If-Match": str(rev)},
        )
        assert ok.status_code == 200
        stale = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "Price", "i": 0, "j": 1, "value": "1/4"},
            headers={"If-Match": str(rev)},
        )
        assert stale.status_code == 409
        assert stale.json()["detail"]["current_revision"] == rev + 1

    def test_diagonal_is_immutable(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        r = client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "Price", "i": 1, "j": 1, "value": 2},
            headers={"If-Match": str(rev)},
        )
        assert r.status_code == 422

    def test_unknown_matrix_and_bad_values(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        headers = {"If-Match": str(rev)}
        assert (
            client.put(
                f"/sessions/{sid}/judgment",
                json={"matrix": "Fuel", "i": 0, "j": 1, "value": 2},
                headers=headers,
            ).status_code
            == 422
        )
        assert (
            client.put(
                f"/sessions/{sid}/judgment",
                json={"matrix": "Price", "i": 0, "j": 9, "value": 2},
                headers=headers,
            ).status_code
            == 422
        )
        assert (
            client.put(
                f"/sessions/{sid}/judgment",
                json={"matrix": "Price", "i": 0, "j": 1, "value": -2},
                headers=headers,
            ).status_code
            == 422
        )


class TestReports:
    def test_car_report_winner(self, client, car_seed):
        sid, _ = create_session(client, car_seed)
        r = client.get(f"/sessions/{sid}/report")
        assert r.status_code == 200
        body = r.json()
        assert body["complete"] is True
        assert body["hierarchy"]["winner"] == "Honda Civic"
        assert body["hierarchy"]["table_pd"] == 0.9375

    def test_report_is_deterministic(self, client, car_seed):
        sid, _ = create_session(client, car_seed)
        first = client.get(f"/sessions/{sid}/report")
        second = client.get(f"/sessions/{sid}/report")
        assert first.content == second.content

    def test_partial_report_lists_completion(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C"], "alternatives": ["a", "b", "c"]}
        )
        sid, rev = r.json()["id"], r.json()["revision"]
        client.put(
            f"/sessions/{sid}/judgment",
            json={"matrix": "C", "i": 0, "j": 1, "value": 2},
            headers={"If-Match": str(rev)},
        )
        body = client.get(f"/sessions/{sid}/report").json()
        assert body["complete"] is False
        assert body["matrices"] == []
        assert body["incomplete"] == [{"matrix": "C", "completion": pytest.approx(1 / 6)}]

    def test_complete_matrix_reported_before_whole_model(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C1", "C2"], "alternatives": ["a", "b"]}
        )
        sid = r.json()["id"]
        rev = r.json()["revision"]
        for i, j, v in ((0, 1, 2), (1, 0, 0.5)):
            resp = client.put(
                f"/sessions/{sid}/judgment",
                json={"matrix": "C1", "i": i, "j": j, "value": v},
                headers={"If-Match": str(rev)},
            )
            rev = int(resp.headers["ETag"])
        body = client.get(f"/sessions/{sid}/report").json()
        assert [m["name"] for m in body["matrices"]] == ["C1"]
        assert body["hierarchy"] is None
        assert {x["matrix"] for x in body["incomplete"]} == {"criteria", "C2"}


class TestWhatIf:
    def test_whatif_never_mutates(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        before = client.get(f"/sessions/{sid}/report").content
        for _ in range(3):
            r = client.post(
                f"/sessions/{sid}/whatif",
                json={"action": "delete-alternative", "label": "Acura TL"},
            )
            assert r.status_code == 200
        after = client.get(f"/sessions/{sid}")
        assert after.json()["revision"] == rev
        assert client.get(f"/sessions/{sid}/report").content == before

    def test_structural_risk_in_whatif(self, client):
        model = ratio_model_from_weights(
            "structural demo", ("C1", "C2", "C3", "C4"), (0.25,) * 4, ("x1", "x2", "x3"), exact(W3_ROWS)
        )
        sid, _ = create_session(client, model_to_dict(model))
        r = client.post(
            f"/sessions/{sid}/whatif", json={"action": "delete-alternative", "label": "x2"}
        )
        body = r.json()
        assert body["equilibrium"] is False
        assert body["pd_summary"]["table_pd"] == 0.9375

    def test_whatif_on_incomplete_model_rejected(self, client):
        r = client.post(
            "/sessions", json={"goal": "g", "criteria": ["C"], "alternatives": ["a", "b", "c"]}
        )
        sid = r.json()["id"]
        resp = client.post(
            f"/sessions/{sid}/whatif", json={"action": "delete-alternative", "label": "a"}
        )
        assert resp.status_code == 422
        assert "incomplete" in resp.json()["detail"]

    def test_commit_whatif_applies_and_bumps_revision(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        r = client.post(
            f"/sessions/{sid}/commit-whatif",
            json={"action": "delete-alternative", "label": "Acura TL"},
            headers={"If-Match": str(rev)},
        )
        assert r.status_code == 200
        body = r.json()
        assert body["session"]["revision"] == rev + 1
        assert body["session"]["alternatives"] == ["Toyota Camry", "Honda Civic"]
        assert body["whatif"]["action"]["label"] == "Acura TL"

    def test_commit_whatif_requires_fresh_revision(self, client, car_seed):
        sid, rev = create_session(client, car_seed)
        r = client.post(
            f"/sessions/{sid}/commit-whatif",
            json={"action": "delete-alternative", "label": "Acura TL"},
            headers={"If-Match": str(rev + 7)},
        )
        assert r.status_code == 409


class TestPersistence:
    def test_sessions_survive_reopen(self, tmp_path, car_seed):
        db = str(tmp_path / "sessions.db")
        store = SessionStore(db)
        client = TestClient(create_app(store))
        sid, _ = create_session(client, car_seed)
        store.close()

        client2 = TestClient(create_app(SessionStore(db)))
        r = client2.get(f"/sessions/{sid}")
        assert r.status_code == 200
        assert r.json()["goal"] == "Choose the best car"

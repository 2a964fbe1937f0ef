from __future__ import annotations

import random

import pytest
from fastapi.testclient import TestClient

from gridpass.api import create_app
from gridpass.catalog import bundled_catalog
from gridpass.oracle import oracle_derive
from gridpass.scheme import ClockTime, ShiftCondition
from gridpass.service import AuthService
from gridpass.store import AccountStore, register_account


@pytest.fixture
def client(tmp_path):
    store = AccountStore(tmp_path / "accounts.json")
    register_account(store, "alice", [3, 17], ShiftCondition())
    catalog = bundled_catalog()
    service = AuthService(
        store,
        catalog.image_ids,
        rng=random.Random(42),
        clock_source=lambda: ClockTime.parse("12:38"),
    )
    app = create_app(store, catalog, service)
    with TestClient(app) as test_client:
        test_client.store = store
        yield test_client


def expected_clicks_for(client, grid_cells, clock_text):
    """Server-side fixture: recompute alice's clicks with the oracle."""
    from gridpass.grid import ChallengeGrid, GridSpec

    grid = ChallengeGrid(spec=GridSpec(5, 5), cells=tuple(grid_cells))
    secret = client.store.lookup("alice")
    result = oracle_derive(grid, secret, ClockTime.parse(clock_text))
    return [grid.spec.coord_to_index(c) for c in result.final]


class TestAccountEndpoints:
    def test_full_registration_flow(self, client):
        response = client.post(
            "/api/accounts", json={"user_id": "bob", "user_id_confirm": "bob"}
        )
        assert response.status_code == 201
        assert response.json() == {"user_id": "bob", "phase": "need_images"}

        response = client.put("/api/accounts/bob/password", json={"image_ids": [5, 9]})
        assert response.status_code == 200
        assert response.json()["phase"] == "need_condition"

        response = client.put(
            "/api/accounts/bob/condition", json={"direction": "left", "time_unit": "m2"}
        )
        assert response.status_code == 200
        assert response.json()["phase"] == "complete"

        record = client.store.lookup("bob")
        assert record.images.first == 5 and record.images.second == 9

    def test_mismatched_confirmation(self, client):
        response = client.post(
            "/api/accounts", json={"user_id": "bob", "user_id_confirm": "bbo"}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "mismatch"

    def test_occupied_user_id(self, client):
        response = client.post(
            "/api/accounts", json={"user_id": "alice", "user_id_confirm": "alice"}
        )
        assert response.status_code == 409
        assert response.json()["code"] == "occupied"

    @pytest.mark.parametrize("image_ids", [[1], [1, 2, 3], [4, 4]])
    def test_bad_password_selection(self, client, image_ids):
        client.post("/api/accounts", json={"user_id": "bob", "user_id_confirm": "bob"})
        response = client.put("/api/accounts/bob/password", json={"image_ids": image_ids})
        assert response.status_code == 400
        assert response.json()["code"] == "selection"

    def test_password_without_pending_registration(self, client):
        response = client.put("/api/accounts/ghost/password", json={"image_ids": [1, 2]})
        assert response.status_code == 404

    def test_bad_condition_values(self, client):
        client.post("/api/accounts", json={"user_id": "bob", "user_id_confirm": "bob"})
        client.put("/api/accounts/bob/password", json={"image_ids": [1, 2]})
        response = client.put(
            "/api/accounts/bob/condition", json={"direction": "sideways", "time_unit": "h1"}
        )
        assert response.status_code == 400

    def test_malformed_body_is_400(self, client):
        response = client.post("/api/accounts", json={"user_id": "bob"})
        assert response.status_code == 400
        assert response.json()["code"] == "malformed"


class TestSessionEndpoints:
    def test_begin_session_payload(self, client):
        response = client.post("/api/sessions", json={"user_id": "alice"})
        assert response.status_code == 201
        body = response.json()
        assert set(body) == {"session_id", "grid", "clock", "attempts_remaining"}
        assert sorted(body["grid"]) == list(range(25))
        assert body["clock"] == "12:38"
        assert body["attempts_remaining"] == 3

    def test_unknown_user_404(self, client):
        response = client.post("/api/sessions", json={"user_id": "mallory"})
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_user"

    def test_correct_clicks_succeed(self, client):
        body = client.post("/api/sessions", json={"user_id": "alice"}).json()
        clicks = expected_clicks_for(client, body["grid"], body["clock"])
        response = client.post(
            f"/api/sessions/{body['session_id']}/attempt", json={"clicks": clicks}
        )
        assert response.status_code == 200
        assert response.json() == {"outcome": "success"}

    def test_retry_carries_fresh_challenge(self, client):
        body = client.post("/api/sessions", json={"user_id": "alice"}).json()
        clicks = expected_clicks_for(client, body["grid"], body["clock"])
        wrong = [0, 1] if clicks != [0, 1] else [1, 0]
        response = client.post(
            f"/api/sessions/{body['session_id']}/attempt", json={"clicks": wrong}
        )
        assert response.status_code == 200
        retry = response.json()
        assert retry["outcome"] == "retry"
        assert retry["attempts_remaining"] == 2
        assert retry["grid"] != body["grid"]
        assert sorted(retry["grid"]) == list(range(25))

    def test_lockout_after_three_failures(self, client):
        body = client.post("/api/sessions", json={"user_id": "alice"}).json()
        session_id = body["session_id"]
        grid, clock = body["grid"], body["clock"]
        outcomes = []
        for _ in range(3):
            clicks = expected_clicks_for(client, grid, clock)
            wrong = [0, 1] if clicks != [0, 1] else [1, 0]
            result = client.post(
                f"/api/sessions/{session_id}/attempt", json={"clicks": wrong}
            ).json()
            outcomes.append(result["outcome"])
            if result["outcome"] == "retry":
                grid, clock = result["grid"], result["clock"]
        assert outcomes == ["retry", "retry", "locked"]
        # Further attempts are a state error.
        response = client.post(f"/api/sessions/{session_id}/attempt", json={"clicks": [0, 1]})
        assert response.status_code == 400
        assert response.json()["code"] == "session_state"

    def test_invalid_clicks_400_without_burning_attempt(self, client):
        body = client.post("/api/sessions", json={"user_id": "alice"}).json()
        response = client.post(
            f"/api/sessions/{body['session_id']}/attempt", json={"clicks": [1, 2, 3]}
        )
        assert response.status_code == 400
        assert response.json()["code"] == "invalid_clicks"
        info = client.get(f"/api/sessions/{body['session_id']}").json()
        assert info["attempts_remaining"] == 3

    def test_unknown_session_404(self, client):
        response = client.post("/api/sessions/nope/attempt", json={"clicks": [0, 1]})
        assert response.status_code == 404

    def test_session_view_has_no_secret_fields(self, client):
        body = client.post("/api/sessions", json={"user_id": "alice"}).json()
        response = client.get(f"/api/sessions/{body['session_id']}")
        info = response.json()
        assert set(info) == {"session_id", "state", "attempts_remaining", "grid", "clock"}


class TestCatalogEndpoint:
    def test_manifest_shape(self, client):
        response = client.get("/api/catalog")
        assert response.status_code == 200
        entries = response.json()
        assert len(entries) == 25
        assert [e["id"] for e in entries] == list(range(25))
        assert all(set(e) == {"id", "asset_path", "label"} for e in entries)

    def test_assets_served(self, client):
        entry = client.get("/api/catalog").json()[0]
        response = client.get("/" + entry["asset_path"])
        assert response.status_code == 200
        assert b"<svg" in response.content

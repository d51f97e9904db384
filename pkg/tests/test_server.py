"""The play service, exercised over real HTTP against an in-process server."""

import threading

import pytest
import requests

from pml.server import make_server

CHAIN = {"states": ["a", "b"], "relations": [[["a", "b"]]]}
# a -> b, b -> b, b -> c, c -> b: the opponent is forced through b, after
# which the proponent always keeps an unpoisoned escape
LADDER = {
    "states": ["a", "b", "c"],
    "relations": [[["a", "b"], ["b", "b"], ["b", "c"], ["c", "b"]]],
}


@pytest.fixture
def service():
    httpd = make_server(0)
    thread = threading.Thread(
        target=lambda: httpd.serve_forever(poll_interval=0.02), daemon=True
    )
    thread.start()
    yield httpd
    httpd.shutdown()
    httpd.server_close()
    thread.join(timeout=5)


@pytest.fixture
def base(service):
    return f"http://127.0.0.1:{service.server_address[1]}"


def create(base, **body):
    return requests.post(f"{base}/session", json=body)


class TestHealth:
    def test_ok(self, base):
        got = requests.get(f"{base}/health")
        assert got.status_code == 200
        assert got.json() == {"status": "ok", "sessions": 0}

    def test_counts_sessions(self, base):
        create(base)
        create(base)
        assert requests.get(f"{base}/health").json()["sessions"] == 2

    def test_cors_headers(self, base):
        got = requests.get(f"{base}/health")
        assert got.headers["Access-Control-Allow-Origin"] == "*"
        pre = requests.options(f"{base}/session")
        assert pre.status_code == 204
        assert "POST" in pre.headers["Access-Control-Allow-Methods"]


class TestCreate:
    def test_default_proponent_session(self, base):
        got = create(base)
        assert got.status_code == 200
        doc = got.json()
        assert doc["sessionId"] == "s1"
        assert doc["role"] == "proponent"
        assert doc["position"] == {
            "token": None,
            "poisoned": [],
            "toMove": "proponent",
            "started": False,
        }
        assert doc["legalMoves"] == ["1", "2", "3", "4", "5", "6"]
        assert doc["evaluations"] == {
            str(i): "proponent" for i in range(1, 7)
        }
        assert doc["history"] == []
        assert "engineMove" not in doc

    def test_session_ids_increment(self, base):
        assert create(base).json()["sessionId"] == "s1"
        assert create(base).json()["sessionId"] == "s2"

    def test_opponent_session_gets_an_opening(self, base):
        doc = create(base, role="opponent").json()
        assert doc["role"] == "opponent"
        assert doc["engineMove"] == {"move": "1", "losing": False}
        assert doc["position"]["token"] == "1"
        assert doc["position"]["toMove"] == "opponent"
        assert doc["history"] == [{"mover": "proponent", "to": "1"}]

    def test_custom_model(self, base):
        doc = create(base, model=CHAIN).json()
        assert doc["legalMoves"] == ["a", "b"]
        assert doc["evaluations"] == {"a": "opponent", "b": "proponent"}

    def test_bad_role(self, base):
        got = create(base, role="referee")
        assert got.status_code == 400
        assert got.json()["error"] == "bad-request"

    def test_bad_model(self, base):
        got = create(base, model={"states": []})
        assert got.status_code == 400
        assert got.json()["error"] == "bad-model"

    def test_non_json_body(self, base):
        got = requests.post(
            f"{base}/session", data=b"not json",
            headers={"Content-Type": "application/json"},
        )
        assert got.status_code == 400


class TestMoves:
    def test_proponent_win_in_one(self, base):
        sid = create(base, model=CHAIN).json()["sessionId"]
        got = requests.post(f"{base}/session/{sid}/move", json={"to": "b"})
        assert got.status_code == 200
        doc = got.json()
        assert doc["position"]["winner"] == "proponent"
        assert doc["engineMove"] is None
        assert doc["history"] == [{"mover": "proponent", "to": "b"}]
        assert doc["legalMoves"] == []

    def test_opponent_win_after_reply(self, base):
        sid = create(base, model=CHAIN).json()["sessionId"]
        doc = requests.post(
            f"{base}/session/{sid}/move", json={"to": "a"}
        ).json()
        assert doc["engineMove"] == {"move": "b", "losing": False}
        assert doc["position"] == {
            "token": "b",
            "poisoned": ["b"],
            "toMove": "proponent",
            "started": True,
            "winner": "opponent",
        }

    def test_game_over_rejects_more_moves(self, base):
        sid = create(base, model=CHAIN).json()["sessionId"]
        requests.post(f"{base}/session/{sid}/move", json={"to": "b"})
        got = requests.post(f"{base}/session/{sid}/move", json={"to": "a"})
        assert got.status_code == 409
        assert got.json()["error"] == "game-over"

    def test_unknown_state(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.post(f"{base}/session/{sid}/move", json={"to": "9"})
        assert got.status_code == 409
        doc = got.json()
        assert doc["error"] == "illegal-move"
        assert doc["rule"] == "unknown-state"

    def test_not_a_successor(self, base):
        sid = create(base).json()["sessionId"]
        doc = requests.post(
            f"{base}/session/{sid}/move", json={"to": "1"}
        ).json()
        assert doc["engineMove"]["move"] == "2"  # engine stalls as long as it can
        got = requests.post(f"{base}/session/{sid}/move", json={"to": "1"})
        assert got.status_code == 409
        assert got.json()["rule"] == "not-a-successor"

    def test_poisoned_target(self, base):
        sid = create(base, model=LADDER).json()["sessionId"]
        doc = requests.post(
            f"{base}/session/{sid}/move", json={"to": "a"}
        ).json()
        assert doc["engineMove"]["move"] == "b"
        assert doc["position"]["poisoned"] == ["b"]
        got = requests.post(f"{base}/session/{sid}/move", json={"to": "b"})
        assert got.status_code == 409
        assert got.json()["rule"] == "poisoned-target"
        ok = requests.post(f"{base}/session/{sid}/move", json={"to": "c"})
        assert ok.status_code == 200

    def test_missing_to_field(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.post(f"{base}/session/{sid}/move", json={})
        assert got.status_code == 400

    def test_unknown_session(self, base):
        got = requests.post(f"{base}/session/zz/move", json={"to": "1"})
        assert got.status_code == 404
        assert got.json()["error"] == "unknown-session"

    def test_concurrent_moves_are_rejected(self, service, base):
        sid = create(base).json()["sessionId"]
        # hold the per-session lock, as a second in-flight request would
        session = service.api._sessions[sid]
        assert session.lock.acquire(blocking=False)
        try:
            busy = requests.post(
                f"{base}/session/{sid}/move", json={"to": "1"}
            )
            assert busy.status_code == 409
            assert busy.json()["error"] == "concurrent"
        finally:
            session.lock.release()
        after = requests.post(f"{base}/session/{sid}/move", json={"to": "1"})
        assert after.status_code == 200


class TestAdvice:
    def test_hint_at_the_opening(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.get(f"{base}/session/{sid}/hint")
        assert got.status_code == 200
        assert got.json() == {"move": "1", "losing": False}

    def test_hint_mid_game(self, base):
        sid = create(base).json()["sessionId"]
        requests.post(f"{base}/session/{sid}/move", json={"to": "1"})
        got = requests.get(f"{base}/session/{sid}/hint")
        assert got.json() == {"move": "5", "losing": False}

    def test_hint_when_the_game_is_over(self, base):
        sid = create(base, model=CHAIN).json()["sessionId"]
        requests.post(f"{base}/session/{sid}/move", json={"to": "b"})
        got = requests.get(f"{base}/session/{sid}/hint")
        assert got.status_code == 409

    def test_whatif_legal_move(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.get(f"{base}/session/{sid}/whatif", params={"to": "1"})
        assert got.json() == {"to": "1", "legal": True, "evaluation": "winning"}

    def test_whatif_losing_move(self, base):
        sid = create(base, model=CHAIN).json()["sessionId"]
        got = requests.get(f"{base}/session/{sid}/whatif", params={"to": "a"})
        assert got.json() == {"to": "a", "legal": True, "evaluation": "losing"}

    def test_whatif_illegal_moves(self, base):
        sid = create(base, model=LADDER).json()["sessionId"]
        requests.post(f"{base}/session/{sid}/move", json={"to": "a"})
        got = requests.get(f"{base}/session/{sid}/whatif", params={"to": "b"})
        assert got.json() == {"to": "b", "legal": False, "rule": "poisoned-target"}
        got = requests.get(f"{base}/session/{sid}/whatif", params={"to": "zz"})
        assert got.json() == {"to": "zz", "legal": False, "rule": "unknown-state"}

    def test_whatif_requires_the_parameter(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.get(f"{base}/session/{sid}/whatif")
        assert got.status_code == 400


class TestSessionLifecycle:
    def test_get_reflects_moves(self, base):
        sid = create(base).json()["sessionId"]
        requests.post(f"{base}/session/{sid}/move", json={"to": "1"})
        doc = requests.get(f"{base}/session/{sid}").json()
        assert doc["history"] == [
            {"mover": "proponent", "to": "1"},
            {"mover": "opponent", "to": "2"},
        ]
        assert doc["position"]["token"] == "2"
        assert doc["position"]["poisoned"] == ["2"]

    def test_replays_are_deterministic(self, base):
        docs = []
        for _ in range(2):
            sid = create(base).json()["sessionId"]
            requests.post(f"{base}/session/{sid}/move", json={"to": "1"})
            doc = requests.post(
                f"{base}/session/{sid}/move", json={"to": "5"}
            ).json()
            del doc["sessionId"]
            docs.append(doc)
        assert docs[0] == docs[1]

    def test_delete(self, base):
        sid = create(base).json()["sessionId"]
        got = requests.delete(f"{base}/session/{sid}")
        assert got.status_code == 200
        assert got.json() == {"deleted": sid}
        assert requests.get(f"{base}/session/{sid}").status_code == 404
        assert requests.delete(f"{base}/session/{sid}").status_code == 404

    def test_unknown_routes(self, base):
        assert requests.get(f"{base}/nope").status_code == 404
        assert requests.post(f"{base}/nope", json={}).status_code == 404
        assert requests.delete(f"{base}/nope").status_code == 404

"""HTTP JSON service for human-vs-engine play.

Sessions are independent and live in memory. The engine answers
immediately after every human move (and opens the game when the human
plays second), so a response always leaves the human to move or the game
decided. Rule checking is the game module's; the service only reports.

Routes:
    GET    /health
    POST   /session                {"model"?: <model json>, "role": "proponent"|"opponent"}
    GET    /session/{id}
    POST   /session/{id}/move      {"to": <state name>}
    GET    /session/{id}/hint
    GET    /session/{id}/whatif?to=<state name>
    DELETE /session/{id}

Illegal moves, moves out of turn, and concurrent moves to one session
answer 409; unknown sessions and routes answer 404.
"""

from __future__ import annotations

import json
import re
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from .errors import IllegalMoveError, ModelFormatError, PmlError
from .game import (
    GamePosition,
    GameSolution,
    OPENING,
    Player,
    apply_move,
    best_move,
    legal_moves,
    solve,
    winner_at,
)
from .generators import demo_graph
from .kripke import KripkeModel, bits_of, load_model


class ApiError(Exception):
    def __init__(self, status: int, kind: str, message: str, **extra):
        super().__init__(message)
        self.status = status
        self.kind = kind
        self.payload = {"error": kind, "message": message, **extra}


def position_payload(model: KripkeModel, pos: GamePosition) -> dict:
    out = {
        "token": None if pos.token is None else model.names[pos.token],
        "poisoned": [model.names[w] for w in bits_of(pos.poisoned)],
        "toMove": pos.to_move.value,
        "started": pos.started,
    }
    winner = winner_at(pos, model)
    if winner is not None:
        out["winner"] = winner.value
    return out


@dataclass
class Session:
    session_id: str
    model: KripkeModel
    solution: GameSolution
    human_role: Player
    position: GamePosition = OPENING
    history: list[tuple[str, str]] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def engine_role(self) -> Player:
        return self.human_role.other()

    def public(self) -> dict:
        return {
            "sessionId": self.session_id,
            "role": self.human_role.value,
            "position": position_payload(self.model, self.position),
            "legalMoves": [
                self.model.names[w]
                for w in legal_moves(self.position, self.model)
            ],
            "evaluations": {
                self.model.names[w]: winner.value
                for w, winner in self.solution.per_initial_node.items()
            },
            "history": [
                {"mover": mover, "to": to} for mover, to in self.history
            ],
        }

    def record(self, mover: Player, state: int) -> None:
        self.history.append((mover.value, self.model.names[state]))

    def engine_reply(self) -> dict | None:
        """Let the engine move if it is its turn and the game is open."""
        if winner_at(self.position, self.model) is not None:
            return None
        if self.position.to_move is not self.engine_role:
            return None
        reply = best_move(self.position, self.model, self.solution)
        # a mover with no legal move never gets here: the game would
        # already be decided
        assert reply.move is not None
        self.position = apply_move(self.position, reply.move, self.model)
        self.record(self.engine_role, reply.move)
        return {
            "move": self.model.names[reply.move],
            "losing": reply.losing,
        }


class Api:
    """Session registry plus one handler per route."""

    def __init__(self, default_model: KripkeModel | None = None):
        self.default_model = default_model or demo_graph()
        self._solutions: dict[int, GameSolution] = {}
        self._sessions: dict[str, Session] = {}
        self._registry_lock = threading.Lock()
        self._counter = 0

    def _solve(self, model: KripkeModel) -> GameSolution:
        key = id(model)
        if key not in self._solutions:
            self._solutions[key] = solve(model)
        return self._solutions[key]

    def _get(self, session_id: str) -> Session:
        with self._registry_lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown-session", f"no session {session_id}")
        return session

    # -- route handlers ----------------------------------------------------

    def health(self) -> dict:
        return {"status": "ok", "sessions": len(self._sessions)}

    def create_session(self, body: dict) -> dict:
        try:
            role = Player(body.get("role", "proponent"))
        except ValueError:
            raise ApiError(
                400, "bad-request", "role must be proponent or opponent"
            )
        if "model" in body:
            try:
                model = load_model(json.dumps(body["model"]))
            except (ModelFormatError, PmlError) as exc:
                raise ApiError(400, "bad-model", str(exc))
        else:
            model = self.default_model
        solution = self._solve(model)
        with self._registry_lock:
            self._counter += 1
            session = Session(
                session_id=f"s{self._counter}",
                model=model,
                solution=solution,
                human_role=role,
            )
            self._sessions[session.session_id] = session
        reply = session.engine_reply()
        out = session.public()
        if reply is not None:
            out["engineMove"] = reply
        return out

    def get_session(self, session_id: str) -> dict:
        return self._get(session_id).public()

    def move(self, session_id: str, body: dict) -> dict:
        session = self._get(session_id)
        to = body.get("to")
        if not isinstance(to, str):
            raise ApiError(400, "bad-request", "body must carry a state name 'to'")
        if not session.lock.acquire(blocking=False):
            raise ApiError(
                409, "concurrent", "another move for this session is in flight"
            )
        try:
            try:
                state = session.model.state_id(to)
            except ModelFormatError:
                raise ApiError(409, "illegal-move", f"unknown state {to!r}",
                               rule="unknown-state")
            if winner_at(session.position, session.model) is not None:
                raise ApiError(409, "game-over", "the game is already decided")
            if session.position.to_move is not session.human_role:
                raise ApiError(409, "not-your-turn", "the engine is to move")
            try:
                session.position = apply_move(
                    session.position, state, session.model
                )
            except IllegalMoveError as exc:
                raise ApiError(409, "illegal-move", str(exc), rule=exc.rule)
            session.record(session.human_role, state)
            reply = session.engine_reply()
        finally:
            session.lock.release()
        out = session.public()
        out["engineMove"] = reply
        return out

    def hint(self, session_id: str) -> dict:
        session = self._get(session_id)
        if winner_at(session.position, session.model) is not None:
            raise ApiError(409, "game-over", "the game is already decided")
        if session.position.to_move is not session.human_role:
            raise ApiError(409, "not-your-turn", "the engine is to move")
        advice = best_move(session.position, session.model, session.solution)
        return {
            "move": None if advice.move is None else session.model.names[advice.move],
            "losing": advice.losing,
        }

    def whatif(self, session_id: str, to: str | None) -> dict:
        session = self._get(session_id)
        if to is None:
            raise ApiError(400, "bad-request", "query parameter 'to' required")
        try:
            state = session.model.state_id(to)
        except ModelFormatError:
            return {"to": to, "legal": False, "rule": "unknown-state"}
        if winner_at(session.position, session.model) is not None:
            raise ApiError(409, "game-over", "the game is already decided")
        try:
            after = apply_move(session.position, state, session.model)
        except IllegalMoveError as exc:
            return {"to": to, "legal": False, "rule": exc.rule}
        mover = session.position.to_move
        winner = session.solution.winner_from(after)
        return {
            "to": to,
            "legal": True,
            "evaluation": "winning" if winner is mover else "losing",
        }

    def delete_session(self, session_id: str) -> dict:
        with self._registry_lock:
            if session_id not in self._sessions:
                raise ApiError(404, "unknown-session", f"no session {session_id}")
            del self._sessions[session_id]
        return {"deleted": session_id}


_SESSION = re.compile(r"^/session/([^/]+)$")
_MOVE = re.compile(r"^/session/([^/]+)/move$")
_HINT = re.compile(r"^/session/([^/]+)/hint$")
_WHATIF = re.compile(r"^/session/([^/]+)/whatif$")


class Handler(BaseHTTPRequestHandler):
    server_version = "pml"

    @property
    def api(self) -> Api:
        return self.server.api  # type: ignore[attr-defined]

    def log_message(self, fmt, *args):
        pass

    def _reply(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b"{}"
        try:
            data = json.loads(raw or b"{}")
        except json.JSONDecodeError:
            raise ApiError(400, "bad-request", "body is not valid JSON")
        if not isinstance(data, dict):
            raise ApiError(400, "bad-request", "body must be a JSON object")
        return data

    def _dispatch(self, fn) -> None:
        try:
            self._reply(200, fn())
        except ApiError as exc:
            self._reply(exc.status, exc.payload)
        except PmlError as exc:
            self._reply(400, {"error": "domain", "message": str(exc)})

    def do_GET(self):
        url = urlparse(self.path)
        if url.path == "/health":
            return self._dispatch(self.api.health)
        m = _SESSION.match(url.path)
        if m:
            return self._dispatch(lambda: self.api.get_session(m.group(1)))
        m = _HINT.match(url.path)
        if m:
            return self._dispatch(lambda: self.api.hint(m.group(1)))
        m = _WHATIF.match(url.path)
        if m:
            to = parse_qs(url.query).get("to", [None])[0]
            return self._dispatch(lambda: self.api.whatif(m.group(1), to))
        self._reply(404, {"error": "not-found", "message": self.path})

    def do_POST(self):
        url = urlparse(self.path)
        try:
            if url.path == "/session":
                return self._dispatch(lambda: self.api.create_session(self._body()))
            m = _MOVE.match(url.path)
            if m:
                body = self._body()
                return self._dispatch(lambda: self.api.move(m.group(1), body))
        except ApiError as exc:
            return self._reply(exc.status, exc.payload)
        self._reply(404, {"error": "not-found", "message": self.path})

    def do_DELETE(self):
        url = urlparse(self.path)
        m = _SESSION.match(url.path)
        if m:
            return self._dispatch(lambda: self.api.delete_session(m.group(1)))
        self._reply(404, {"error": "not-found", "message": self.path})

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()


def make_server(
    port: int = 0,
    model: KripkeModel | None = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    httpd = ThreadingHTTPServer((host, port), Handler)
    httpd.api = Api(model)  # type: ignore[attr-defined]
    return httpd


def serve(
    port: int, model: KripkeModel | None = None, host: str = "127.0.0.1"
) -> None:
    httpd = make_server(port, model, host)
    print(f"serving on http://{host}:{httpd.server_address[1]}", flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()

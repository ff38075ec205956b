"""Session service: play live games against the engine over JSON/HTTP.

Endpoints::

    POST /games                  {game, graph, engine_side} -> 201 {id, state}
    GET  /games/{id}             -> 200 {state, history}
    POST /games/{id}/moves       {reduce_to, move_to|"end"} -> 200 {state, engine_reply?}
    GET  /games/{id}/analysis    -> 200 {outcome, method, witness?}

Errors: 404 unknown id, 400 illegal move or invalid instance, 422
unsupported rule combination.  Sessions live in memory keyed by random
128-bit tokens; an optional snapshot file persists them across restarts
(sessions are rebuilt by replaying their history).
"""

from __future__ import annotations

import json
import secrets
import threading
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any

from .errors import (
    BudgetExceededError,
    GraphError,
    IllegalMoveError,
    InvalidPositionError,
    UnsupportedRulesError,
)
from .graphs import build_graph
from .instance_io import RESERVED_IDS, serialize
from .oracle import Memo, state_key
from .outcome import Outcome
from .rules import (
    Convention,
    Move,
    Position,
    Ruleset,
    TerminalStatus,
    apply_move,
    legal_moves,
    make_position,
    terminal_status,
)
from .solver import resolve_outcome, winning_move


class ServiceError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status


ENGINE_SIDES = ("none", "engine-moves-second", "engine-moves-first")


@dataclass
class GameSession:
    id: str
    initial: Position
    position: Position
    engine_side: str
    players: tuple[str, str]  # in move order
    history: list[tuple[str, Move]] = field(default_factory=list)
    status: str = "ongoing"
    winner: str | None = None
    analysis_cache: dict[tuple, dict] = field(default_factory=dict, repr=False)
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def to_move(self) -> str:
        return self.players[len(self.history) % 2]


def _move_to_json(move: Move) -> dict[str, Any]:
    return {
        "reduce_to": move.reduce_to,
        "move_to": "end" if move.destination is None else move.destination,
    }


def _move_from_json(payload: Any) -> Move:
    if not isinstance(payload, dict):
        raise ServiceError(400, "move body must be a JSON object")
    if "reduce_to" not in payload:
        raise ServiceError(400, "missing field: reduce_to")
    reduce_to = payload["reduce_to"]
    if not isinstance(reduce_to, int) or isinstance(reduce_to, bool):
        raise ServiceError(400, "field reduce_to must be an integer")
    dest = payload.get("move_to")
    if dest is None:
        raise ServiceError(400, "missing field: move_to")
    if dest == "end":
        return Move(reduce_to, None)
    if not isinstance(dest, str):
        raise ServiceError(400, "field move_to must be a vertex id or \"end\"")
    return Move(reduce_to, dest)


def _position_from_payload(payload: Any) -> tuple[Position, str]:
    if not isinstance(payload, dict):
        raise ServiceError(400, "request body must be a JSON object")
    game = payload.get("game")
    if not isinstance(game, dict):
        raise ServiceError(400, "missing or malformed field: game")
    ruleset = game.get("ruleset")
    convention = game.get("convention", "normal")
    if ruleset not in ("vertexnim", "stockman"):
        raise ServiceError(400, "game.ruleset must be 'vertexnim' or 'stockman'")
    if convention not in ("normal", "misere"):
        raise ServiceError(400, "game.convention must be 'normal' or 'misere'")
    graph = payload.get("graph")
    if not isinstance(graph, dict):
        raise ServiceError(400, "missing or malformed field: graph")
    orientation = graph.get("orientation")
    if orientation not in ("directed", "undirected"):
        raise ServiceError(400, "graph.orientation must be 'directed' or 'undirected'")
    vertices = graph.get("vertices")
    if not isinstance(vertices, list) or not vertices:
        raise ServiceError(400, "graph.vertices must be a non-empty list")
    weight_list: list[tuple[str, int]] = []
    loops: list[str] = []
    for i, v in enumerate(vertices):
        if not isinstance(v, dict) or "id" not in v or "weight" not in v:
            raise ServiceError(400, f"graph.vertices[{i}] needs 'id' and 'weight'")
        vid, w = v["id"], v["weight"]
        if not isinstance(vid, str):
            raise ServiceError(400, f"graph.vertices[{i}].id must be a string")
        if vid in RESERVED_IDS:
            raise ServiceError(400, f"graph.vertices[{i}].id {vid!r} is reserved")
        if not isinstance(w, int) or isinstance(w, bool) or w < 0:
            raise ServiceError(400, f"graph.vertices[{i}].weight must be a non-negative integer")
        weight_list.append((vid, w))
        if v.get("loop"):
            loops.append(vid)
    edges_payload = graph.get("edges", [])
    if not isinstance(edges_payload, list):
        raise ServiceError(400, "graph.edges must be a list of [from, to] pairs")
    edges: list[tuple[str, str]] = []
    for i, e in enumerate(edges_payload):
        if (
            not isinstance(e, (list, tuple))
            or len(e) != 2
            or not all(isinstance(x, str) for x in e)
        ):
            raise ServiceError(400, f"graph.edges[{i}] must be a [from, to] pair")
        edges.append((e[0], e[1]))
    edges.extend((v, v) for v in loops)
    start = graph.get("start")
    if not isinstance(start, str):
        raise ServiceError(400, "graph.start must be a vertex id")
    engine_side = payload.get("engine_side", "none")
    if engine_side not in ENGINE_SIDES:
        raise ServiceError(400, f"engine_side must be one of {ENGINE_SIDES}")
    try:
        g = build_graph(orientation, weight_list, edges)
        pos = make_position(g, start, ruleset, convention)
    except UnsupportedRulesError as exc:
        raise ServiceError(422, str(exc)) from exc
    except (GraphError, InvalidPositionError) as exc:
        raise ServiceError(400, str(exc)) from exc
    return pos, engine_side


def _state_json(session: GameSession) -> dict[str, Any]:
    g = session.position.graph
    return {
        "orientation": "directed" if g.directed else "undirected",
        "ruleset": session.position.ruleset.value,
        "convention": session.position.convention.value,
        "vertices": [
            {"id": v, "weight": g.weight(v), "loop": g.has_loop(v)}
            for v in g.vertices()
        ],
        "edges": [[a, b] for a, b in g.edges() if a != b],
        "current": session.position.current,
        "to_move": session.to_move if session.status == "ongoing" else None,
        "status": session.status,
        "winner": session.winner,
    }


def _history_json(session: GameSession) -> list[dict[str, Any]]:
    return [
        {"player": player, "move": _move_to_json(move)}
        for player, move in session.history
    ]


class GameService:
    """The HTTP-free session logic; the handler below is a thin shell."""

    def __init__(self, state_file: str | Path | None = None):
        self.sessions: dict[str, GameSession] = {}
        self._lock = threading.Lock()
        self.state_file = Path(state_file) if state_file else None
        if self.state_file and self.state_file.exists():
            self._load_snapshot()

    # -- session plumbing ------------------------------------------------

    def _get(self, gid: str) -> GameSession:
        with self._lock:
            session = self.sessions.get(gid)
        if session is None:
            raise ServiceError(404, f"unknown game {gid!r}")
        return session

    def _engine_move(self, position: Position) -> Move:
        """Winning move when one exists, else lowest destination id and
        smallest reduction."""
        try:
            outcome, _ = resolve_outcome(position)
        except BudgetExceededError:  # pragma: no cover - defensive
            outcome = None
        move: Move | None = None
        if outcome is Outcome.N:
            try:
                move = winning_move(position)
            except BudgetExceededError:
                move = None
        if move is not None:
            return move
        moves = legal_moves(position)
        return min(
            moves,
            key=lambda m: (m.destination is None, m.destination or "", m.reduce_to),
        )

    def _settle_if_terminal(self, session: GameSession) -> None:
        """A position can be terminal with no move played (a zero-weight
        Stockman start): the stuck side loses on the spot."""
        status = terminal_status(session.position)
        if status is TerminalStatus.PREVIOUS_MOVER_WINS:
            session.status = "finished"
            session.winner = session.players[(len(session.history) + 1) % 2]
        elif status is TerminalStatus.MOVER_TO_ACT_WINS:
            session.status = "finished"
            session.winner = session.to_move

    def _apply(self, session: GameSession, player: str, move: Move) -> None:
        nxt = apply_move(session.position, move)
        session.history.append((player, move))
        session.position = nxt
        self._settle_if_terminal(session)

    # -- public operations -------------------------------------------------

    def create_game(self, payload: Any) -> dict[str, Any]:
        position, engine_side = _position_from_payload(payload)
        if engine_side == "none":
            players = ("p1", "p2")
        elif engine_side == "engine-moves-first":
            players = ("engine", "human")
        else:
            players = ("human", "engine")
        gid = secrets.token_hex(16)
        session = GameSession(gid, position, position, engine_side, players)
        self._settle_if_terminal(session)
        if engine_side == "engine-moves-first" and session.status == "ongoing":
            self._apply(session, "engine", self._engine_move(session.position))
        if session.status == "ongoing":
            self._analysis(session, session.position)  # warm the hint cache
        with self._lock:
            self.sessions[gid] = session
        return {"id": gid, "state": _state_json(session)}

    def get_game(self, gid: str) -> dict[str, Any]:
        session = self._get(gid)
        with session.lock:
            return {"state": _state_json(session), "history": _history_json(session)}

    def submit_move(self, gid: str, payload: Any) -> dict[str, Any]:
        session = self._get(gid)
        move = _move_from_json(payload)
        with session.lock:
            if session.status != "ongoing":
                raise ServiceError(400, "game already finished")
            mover = session.to_move
            if mover == "engine":
                raise ServiceError(400, "not your turn: the engine moves next")
            try:
                self._apply(session, mover, move)
            except IllegalMoveError as exc:
                raise ServiceError(400, str(exc)) from exc
            engine_reply: dict[str, Any] | None = None
            if (
                session.status == "ongoing"
                and session.engine_side != "none"
                and session.to_move == "engine"
            ):
                reply = self._engine_move(session.position)
                self._apply(session, "engine", reply)
                engine_reply = _move_to_json(reply)
            body: dict[str, Any] = {"state": _state_json(session)}
            if engine_reply is not None:
                body["engine_reply"] = engine_reply
            return body

    def analyze(self, gid: str) -> dict[str, Any]:
        session = self._get(gid)
        with session.lock:
            position = session.position
        return self._analysis(session, position)

    def _analysis(self, session: GameSession, position: Position) -> dict[str, Any]:
        key = state_key(position)
        cached = session.analysis_cache.get(key)
        if cached is not None:
            return dict(cached)
        memo = Memo()
        outcome, method = resolve_outcome(position, memo=memo)
        body: dict[str, Any] = {
            "outcome": outcome.value if outcome is not None else None,
            "method": method,
        }
        if (
            outcome is Outcome.N
            and terminal_status(position) is TerminalStatus.NONTERMINAL
        ):
            try:
                move = winning_move(position, memo=memo)
            except BudgetExceededError:
                move = None
            if move is not None:
                body["witness"] = _move_to_json(move)
        session.analysis_cache[key] = body
        return dict(body)

    # -- persistence -------------------------------------------------------

    def save_snapshot(self) -> None:
        if self.state_file is None:
            return
        with self._lock:
            sessions = list(self.sessions.values())
        payload = []
        for s in sessions:
            with s.lock:
                payload.append(
                    {
                        "id": s.id,
                        "engine_side": s.engine_side,
                        "players": list(s.players),
                        "instance": serialize(s.initial),
                        "history": [
                            {"player": p, "move": _move_to_json(m)}
                            for p, m in s.history
                        ],
                    }
                )
        self.state_file.write_text(json.dumps({"sessions": payload}, indent=2))

    def _load_snapshot(self) -> None:
        from .instance_io import parse_instance

        assert self.state_file is not None
        data = json.loads(self.state_file.read_text())
        for entry in data.get("sessions", []):
            initial = parse_instance(entry["instance"])
            session = GameSession(
                entry["id"],
                initial,
                initial,
                entry["engine_side"],
                tuple(entry["players"]),
            )
            for item in entry["history"]:
                move = _move_from_json(item["move"])
                self._apply(session, item["player"], move)
            self.sessions[session.id] = session


# -- HTTP shell --------------------------------------------------------------


def _make_handler(service: GameService, static_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        protocol_version = "HTTP/1.1"

        def log_message(self, fmt: str, *args: Any) -> None:  # quiet by default
            pass

        def _send_json(self, status: int, body: dict[str, Any]) -> None:
            data = json.dumps(body).encode()
            self.send_response(status)
            self.send_header("Content-Type", "application/json; charset=utf-8")
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def _read_body(self) -> Any:
            length = int(self.headers.get("Content-Length") or 0)
            raw = self.rfile.read(length) if length else b""
            if not raw:
                raise ServiceError(400, "empty request body")
            try:
                return json.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError) as exc:
                raise ServiceError(400, f"malformed JSON body: {exc}") from exc

        def _dispatch(self, method: str) -> None:
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            try:
                if method == "POST" and parts == ["games"]:
                    body = self.service.create_game(self._read_body())
                    self._send_json(201, body)
                elif method == "GET" and len(parts) == 2 and parts[0] == "games":
                    self._send_json(200, self.service.get_game(parts[1]))
                elif (
                    method == "POST"
                    and len(parts) == 3
                    and parts[0] == "games"
                    and parts[2] == "moves"
                ):
                    body = self.service.submit_move(parts[1], self._read_body())
                    self._send_json(200, body)
                elif (
                    method == "GET"
                    and len(parts) == 3
                    and parts[0] == "games"
                    and parts[2] == "analysis"
                ):
                    self._send_json(200, self.service.analyze(parts[1]))
                elif method == "GET" and static_dir is not None:
                    self._serve_static(parts)
                else:
                    self._send_json(404, {"error": "no such endpoint"})
            except ServiceError as exc:
                self._send_json(exc.status, {"error": str(exc)})

        def _serve_static(self, parts: list[str]) -> None:
            rel = "/".join(parts) or "index.html"
            root = static_dir.resolve()
            target = (root / rel).resolve()
            if root not in target.parents and target != root:
                self._send_json(404, {"error": "not found"})
                return
            if target.is_dir():
                target = target / "index.html"
            if not target.is_file():
                self._send_json(404, {"error": "not found"})
                return
            types = {
                ".html": "text/html; charset=utf-8",
                ".js": "text/javascript; charset=utf-8",
                ".css": "text/css; charset=utf-8",
                ".json": "application/json",
                ".svg": "image/svg+xml",
            }
            data = target.read_bytes()
            self.send_response(200)
            self.send_header(
                "Content-Type", types.get(target.suffix, "application/octet-stream")
            )
            self.send_header("Content-Length", str(len(data)))
            self.end_headers()
            self.wfile.write(data)

        def do_GET(self) -> None:
            self._dispatch("GET")

        def do_POST(self) -> None:
            self._dispatch("POST")

    Handler.service = service  # type: ignore[attr-defined]
    return Handler


def make_server(
    port: int,
    static_dir: str | Path | None = None,
    state_file: str | Path | None = None,
    host: str = "127.0.0.1",
) -> tuple[ThreadingHTTPServer, GameService]:
    service = GameService(state_file=state_file)
    static = Path(static_dir) if static_dir else None
    handler = _make_handler(service, static)
    server = ThreadingHTTPServer((host, port), handler)
    return server, service


def run_server(
    port: int,
    static_dir: str | Path | None = None,
    state_file: str | Path | None = None,
) -> None:
    server, service = make_server(port, static_dir, state_file)
    actual_port = server.server_address[1]
    print(f"listening on http://127.0.0.1:{actual_port}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        service.save_snapshot()
        server.server_close()

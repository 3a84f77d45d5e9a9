"""HTTP+JSON API for the dictionary game, plus static file serving.

Built on the stdlib threading HTTP server: one thread per request, with all
mutations of a session serialized by the store's per-session locks.
"""

from __future__ import annotations

import io
import json
import logging
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import game
from .lexicon import write_lexicon_jsonl

log = logging.getLogger(__name__)

_SESSION_PATH = re.compile(r"^/sessions/([A-Za-z0-9_-]+)(/next|/definitions|/export|/analysis)?$")

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "application/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json; charset=utf-8",
    ".ico": "image/x-icon",
    ".png": "image/png",
    ".svg": "image/svg+xml",
}


class GameRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server_version = "lexgraph-game"

    # -- helpers -----------------------------------------------------------

    @property
    def store(self) -> game.SessionStore:
        return self.server.store  # type: ignore[attr-defined]

    @property
    def static_dir(self) -> Path | None:
        return self.server.static_dir  # type: ignore[attr-defined]

    def log_message(self, format, *args):  # route through logging, not stderr
        log.debug("%s - %s", self.address_string(), format % args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json(status, {"error": message})

    def _read_json_body(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        try:
            payload = json.loads(raw.decode("utf-8") or "{}")
        except (json.JSONDecodeError, UnicodeDecodeError):
            self._send_error_json(400, "request body is not valid JSON")
            return None
        if not isinstance(payload, dict):
            self._send_error_json(400, "request body must be a JSON object")
            return None
        return payload

    # -- routing -----------------------------------------------------------

    def do_POST(self) -> None:
        if self.path == "/sessions":
            payload = self._read_json_body()
            if payload is None:
                return
            seed = payload.get("seed_word")
            if not isinstance(seed, str):
                self._send_error_json(422, "seed_word (string) is required")
                return
            try:
                session = self.store.create_session(seed)
            except game.EmptyDefinitionError as exc:
                self._send_error_json(422, str(exc))
                return
            self._send_json(201, {"id": session.id})
            return

        match = _SESSION_PATH.match(self.path)
        if match and match.group(2) == "/definitions":
            payload = self._read_json_body()
            if payload is None:
                return
            word = payload.get("word")
            tokens = payload.get("tokens")
            if not isinstance(word, str) or not isinstance(tokens, list) or not all(
                isinstance(t, str) for t in tokens
            ):
                self._send_error_json(422, "word (string) and tokens (string array) required")
                return
            try:
                session = self.store.submit_definition(match.group(1), word, tokens)
            except game.SessionNotFoundError:
                self._send_error_json(404, "no such session")
            except game.SequencingError as exc:
                self._send_error_json(409, str(exc))
            except game.EmptyDefinitionError as exc:
                self._send_error_json(422, str(exc))
            else:
                self._send_json(200, session.to_state())
            return

        self._send_error_json(404, "not found")

    def do_GET(self) -> None:
        match = _SESSION_PATH.match(self.path)
        if match:
            try:
                session = self.store.get(match.group(1))
            except game.SessionNotFoundError:
                self._send_error_json(404, "no such session")
                return
            tail = match.group(2)
            if tail is None:
                self._send_json(200, session.to_state())
            elif tail == "/next":
                with self.store.lock(session.id):
                    prompt = game.next_prompt(session)
                if prompt is None:
                    self._send_json(200, {"complete": True})
                else:
                    self._send_json(200, {"word": prompt})
            elif tail == "/export":
                try:
                    lex = game.export_lexicon(session)
                except game.SessionIncompleteError as exc:
                    self._send_error_json(409, str(exc))
                    return
                buffer = io.StringIO()
                write_lexicon_jsonl(lex, buffer)
                body = buffer.getvalue().encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/x-ndjson; charset=utf-8")
                self.send_header("Content-Length", str(len(body)))
                self.end_headers()
                self.wfile.write(body)
            elif tail == "/analysis":
                try:
                    report = game.analyze_session(session)
                except game.SessionIncompleteError as exc:
                    self._send_error_json(409, str(exc))
                    return
                self._send_json(200, report)
            else:
                self._send_error_json(404, "not found")
            return
        self._serve_static()

    # -- static files ------------------------------------------------------

    def _serve_static(self) -> None:
        if self.static_dir is None:
            self._send_error_json(404, "not found")
            return
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        root = self.static_dir.resolve()
        if root not in target.parents and target != root:
            self._send_error_json(404, "not found")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error_json(404, "not found")
            return
        body = target.read_bytes()
        self.send_response(200)
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(
    store: game.SessionStore,
    host: str = "127.0.0.1",
    port: int = 0,
    static_dir: str | Path | None = None,
) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((host, port), GameRequestHandler)
    server.store = store  # type: ignore[attr-defined]
    server.static_dir = Path(static_dir) if static_dir is not None else None  # type: ignore[attr-defined]
    server.daemon_threads = True
    return server

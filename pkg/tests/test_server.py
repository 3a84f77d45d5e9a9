import io
import json
import threading
import urllib.error
import urllib.request

import pytest

from lexgraph.game import SessionStore
from lexgraph.lexicon import drop_undefined, parse_lexicon
from lexgraph.server import make_server


@pytest.fixture
def service(tmp_path):
    static_dir = tmp_path / "static"
    static_dir.mkdir()
    (static_dir / "index.html").write_text("<html><body>game</body></html>")
    (static_dir / "app.js").write_text("console.log('ui');")
    (tmp_path / "secret.txt").write_text("outside the static root")
    store = SessionStore(data_dir=tmp_path / "sessions", durable=False)
    server = make_server(store, host="127.0.0.1", port=0, static_dir=static_dir)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    host, port = server.server_address[:2]
    yield f"http://{host}:{port}"
    server.shutdown()
    server.server_close()


def request(base, method, path, payload=None):
    data = json.dumps(payload).encode() if payload is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method,
        headers={"Content-Type": "application/json"} if data else {},
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, resp.read()
    except urllib.error.HTTPError as err:
        return err.code, err.read()


def request_json(base, method, path, payload=None):
    status, body = request(base, method, path, payload)
    return status, json.loads(body)


class TestSessionEndpoints:
    def test_create_returns_201_with_id(self, service):
        status, body = request_json(service, "POST", "/sessions",
                                    {"seed_word": "apple"})
        assert status == 201
        assert body["id"]

    def test_create_rejects_function_word(self, service):
        status, body = request_json(service, "POST", "/sessions",
                                    {"seed_word": "the"})
        assert status == 422
        assert "error" in body

    def test_create_rejects_bad_json(self, service):
        status, _ = request(service, "POST", "/sessions", None)
        assert status in (400, 422)

    def test_get_full_state(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "apple"})
        status, state = request_json(service, "GET", f"/sessions/{created['id']}")
        assert status == 200
        assert state["pending"] == ["apple"]
        assert state["status"] == "active"

    def test_unknown_session_404(self, service):
        status, _ = request_json(service, "GET", "/sessions/nope")
        assert status == 404

    def test_next_prompt_then_completion(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "loop"})
        sid = created["id"]
        status, body = request_json(service, "GET", f"/sessions/{sid}/next")
        assert (status, body) == (200, {"word": "loop"})
        request_json(service, "POST", f"/sessions/{sid}/definitions",
                     {"word": "loop", "tokens": ["loop"]})
        status, body = request_json(service, "GET", f"/sessions/{sid}/next")
        assert (status, body) == (200, {"complete": True})

    def test_definitions_update_state(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "glee"})
        sid = created["id"]
        status, state = request_json(
            service, "POST", f"/sessions/{sid}/definitions",
            {"word": "glee", "tokens": ["great", "joy"]})
        assert status == 200
        assert state["pending"] == ["great", "joy"]
        assert state["defined"] == {"glee": ["great", "joy"]}

    def test_wrong_word_is_409(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "glee"})
        status, _ = request_json(
            service, "POST", f"/sessions/{created['id']}/definitions",
            {"word": "joy", "tokens": ["x"]})
        assert status == 409

    def test_empty_definition_is_422(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "glee"})
        status, _ = request_json(
            service, "POST", f"/sessions/{created['id']}/definitions",
            {"word": "glee", "tokens": ["the"]})
        assert status == 422


def complete_session(service, seed, definitions):
    _, created = request_json(service, "POST", "/sessions", {"seed_word": seed})
    sid = created["id"]
    while True:
        _, body = request_json(service, "GET", f"/sessions/{sid}/next")
        if body.get("complete"):
            return sid
        word = body["word"]
        request_json(service, "POST", f"/sessions/{sid}/definitions",
                     {"word": word, "tokens": definitions[word]})


class TestExportAndAnalysis:
    def test_export_while_active_is_409(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "x"})
        status, _ = request_json(service, "GET", f"/sessions/{created['id']}/export")
        assert status == 409

    def test_export_full_session(self, service):
        sid = complete_session(service, "x", {"x": ["y"], "y": ["x"]})
        status, body = request(service, "GET", f"/sessions/{sid}/export")
        assert status == 200
        lex = parse_lexicon(io.BytesIO(body))
        assert len(lex) == 2
        assert drop_undefined(lex).entries == lex.entries

    def test_analysis_while_active_is_409(self, service):
        _, created = request_json(service, "POST", "/sessions", {"seed_word": "x"})
        status, _ = request_json(service, "GET", f"/sessions/{created['id']}/analysis")
        assert status == 409

    def test_analysis_numbers(self, service):
        sid = complete_session(service, "x", {"x": ["y"], "y": ["x"]})
        status, report = request_json(service, "GET", f"/sessions/{sid}/analysis")
        assert status == 200
        assert report["words"] == 2
        assert report["kernel"]["count"] == 2
        assert report["minset"]["count"] == 1


class TestServeCommand:
    def test_cli_serve_subprocess_round_trip(self, tmp_path):
        import re
        import subprocess
        import sys
        import time as time_mod

        process = subprocess.Popen(
            [sys.executable, "-m", "lexgraph.cli", "serve",
             "--port", "0", "--data-dir", str(tmp_path / "data")],
            stdout=subprocess.PIPE, stderr=subprocess.STDOUT, text=True,
        )
        try:
            assert process.stdout is not None
            line = process.stdout.readline()
            match = re.search(r"http://([\d.]+):(\d+)", line)
            assert match, f"no listen line: {line!r}"
            base = f"http://{match.group(1)}:{match.group(2)}"
            deadline = time_mod.monotonic() + 10
            while True:
                try:
                    status, body = request_json(base, "POST", "/sessions",
                                                {"seed_word": "apple"})
                    break
                except OSError:
                    assert time_mod.monotonic() < deadline
                    time_mod.sleep(0.05)
            assert status == 201
            status, state = request_json(base, "GET", f"/sessions/{body['id']}")
            assert status == 200 and state["pending"] == ["apple"]
        finally:
            process.terminate()
            process.wait(timeout=10)


class TestStatic:
    def test_index_served_at_root(self, service):
        status, body = request(service, "GET", "/")
        assert status == 200
        assert b"game" in body

    def test_asset_served(self, service):
        status, body = request(service, "GET", "/app.js")
        assert status == 200
        assert b"ui" in body

    def test_missing_asset_404(self, service):
        status, _ = request(service, "GET", "/missing.css")
        assert status == 404

    def test_path_traversal_blocked(self, service):
        status, body = request(service, "GET", "/../secret.txt")
        assert status == 404 or b"outside the static root" not in body

"""Starts relim-serve on a free port and checks the HTTP layer end to end."""

import json
import socket
import subprocess
import sys
import time
import urllib.error
import urllib.request
from pathlib import Path

import jsonschema

serve, cli, schema_path, golden = sys.argv[1], sys.argv[2], Path(sys.argv[3]), Path(sys.argv[4])
schema = json.loads(schema_path.read_text())

with socket.socket() as s:
    s.bind(("127.0.0.1", 0))
    port = s.getsockname()[1]
base = f"http://127.0.0.1:{port}/v1"


def request(method, path, body=None):
    data = None if body is None else (body if isinstance(body, bytes) else json.dumps(body).encode())
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json", "Origin": "http://localhost:5173"})
    try:
        with urllib.request.urlopen(req, timeout=30) as r:
            return r.status, dict(r.headers), r.read().decode()
    except urllib.error.HTTPError as e:
        return e.code, dict(e.headers), e.read().decode()


def valid(doc, kind):
    jsonschema.Draft202012Validator({**schema, "$ref": f"#/$defs/{kind}"}).validate(doc)


failures = []


def expect(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


server = subprocess.Popen([serve, "--host", "127.0.0.1", "--port", str(port)],
                          stdout=subprocess.DEVNULL, stderr=subprocess.DEVNULL)
try:
    for _ in range(200):
        try:
            if request("GET", "/health")[0] == 200:
                break
        except OSError:
            pass
        time.sleep(0.05)

    status, headers, body = request("POST", "/re", {"problem": (golden / "mis3.problem").read_text()})
    cli_bytes = subprocess.run([cli, "re", golden / "mis3.problem", "--format", "json"],
                               capture_output=True, text=True).stdout
    expect(status == 200, "POST /v1/re answers 200")
    expect(body == cli_bytes, "POST /v1/re body equals the CLI JSON bytes")
    stats = json.loads(headers.get("X-Relim-Stats", "{}"))
    valid(stats, "searchStats")
    expect("seconds" in stats and stats.get("exit_code") == 0, "stats header carries timing and exit code")
    expect(headers.get("Access-Control-Allow-Origin") == "http://localhost:5173", "CORS origin header")

    for path, payload, code in [
        ("/re", b"{broken", 400),
        ("/family", {"delta": 4, "a": 9, "x": 0}, 422),
        ("/re", {"problem": (golden / "family_5_4_1.problem").read_text(), "max_labels": 2}, 503),
        ("/nope", {}, 404),
    ]:
        status, _, body = request("POST", path, payload)
        doc = json.loads(body)
        valid(doc, "error")
        expect(status == code, f"POST /v1{path} -> {code} ({doc['error']['code']})")

    status, _, body = request("POST", "/sessions", {"name": "smoke"})
    sid = json.loads(body)["id"]
    expect(status == 201, "session created")
    status, _, _ = request("PUT", f"/sessions/{sid}/problems/mis3", {"problem": (golden / "mis3.problem").read_text()})
    expect(status == 201, "problem stored")
    for _ in range(2):
        status, _, body = request("POST", f"/sessions/{sid}/steps", {"op": "re", "input": "mis3"})
        expect(status == 201, "step recorded")
    history = json.loads(request("GET", f"/sessions/{sid}/history")[2])
    expect(len(history["nodes"]) == 2, "history has two nodes")
finally:
    server.terminate()
    server.wait(timeout=10)

sys.exit(1 if failures else 0)

"""Localhost server backing the calibration UI.

Serves frames and clock scores from the primary pipeline plus a config
validation endpoint; the UI itself is static assets built separately. All
pixel math stays on this side so the frontend only displays and maps
coordinates.

Endpoints:
    GET  /api/meta         -> {"frames": n, "width": w, "height": h}
    GET  /api/frame/{i}    -> lossless PNG
    GET  /api/clock-scores -> scores.csv content (computed once, cached)
    POST /api/config       -> {"ok": bool, "errors": [...]}
"""

from __future__ import annotations

import json
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Optional

from . import clock as clockmod
from .errors import AtdeError, ConfigError
from .frames import FrameSource, open_frame_source
from .model import ProjectConfig, config_from_dict

_ASSET_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".svg": "image/svg+xml",
    ".png": "image/png",
    ".ico": "image/x-icon",
}

_FALLBACK_PAGE = b"""<!doctype html>
<html><head><title>atde calibrate</title></head>
<body><h1>atde calibration API</h1>
<p>No UI assets found. Build the frontend and pass --ui-dir, or use the
JSON API directly: /api/meta, /api/frame/{i}, /api/clock-scores,
POST /api/config.</p></body></html>
"""


class CalibrationState:
    """Shared read-only pipeline state plus a lazily computed score cache."""

    def __init__(self, config: ProjectConfig, out_dir: Optional[Path], ui_dir: Optional[Path]):
        self.config = config
        self.out_dir = out_dir
        self.ui_dir = ui_dir
        self.source: FrameSource = open_frame_source(config.frames)
        self._scores_csv: Optional[str] = None
        self._lock = threading.Lock()

    def scores_csv(self) -> str:
        with self._lock:
            if self._scores_csv is None:
                precomputed = self.out_dir / "scores.csv" if self.out_dir else None
                if precomputed and precomputed.is_file():
                    self._scores_csv = precomputed.read_text()
                else:
                    series = clockmod.scan_clock(
                        iter(self.source), self.config.clock_region, self.config.clock_threshold
                    )
                    self._scores_csv = "t,score\n" + "".join(
                        f"{t},{s}\n" for t, s in enumerate(series.scores, start=1)
                    )
            return self._scores_csv

    def validate_config(self, doc: dict) -> tuple[bool, list[str]]:
        try:
            accepted = config_from_dict(doc)
        except ConfigError as exc:
            return False, [str(exc)]
        if self.out_dir is not None:
            self.out_dir.mkdir(parents=True, exist_ok=True)
            path = self.out_dir / "config.json"
            path.write_text(json.dumps(accepted.to_dict(), indent=2) + "\n")
        return True, []


class CalibrationHandler(BaseHTTPRequestHandler):
    state: CalibrationState  # set on the server class by make_server

    def log_message(self, fmt, *args):  # quiet by default
        pass

    def _send(self, status: HTTPStatus, content_type: str, body: bytes):
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-store")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, payload: dict, status: HTTPStatus = HTTPStatus.OK):
        self._send(status, "application/json", json.dumps(payload).encode())

    def do_GET(self):
        state = self.state
        path = self.path.split("?", 1)[0]
        if path == "/api/meta":
            self._send_json(
                {
                    "frames": len(state.source),
                    "width": state.source.width,
                    "height": state.source.height,
                    "path": state.config.frames,
                }
            )
        elif path.startswith("/api/frame/"):
            tail = path[len("/api/frame/") :]
            try:
                index = int(tail)
            except ValueError:
                self._send_json({"error": f"bad frame index {tail!r}"}, HTTPStatus.NOT_FOUND)
                return
            if not 0 <= index < len(state.source):
                self._send_json(
                    {"error": f"frame {index} out of range [0, {len(state.source)})"},
                    HTTPStatus.NOT_FOUND,
                )
                return
            self._send(HTTPStatus.OK, "image/png", state.source.path_of(index).read_bytes())
        elif path == "/api/clock-scores":
            try:
                body = state.scores_csv().encode()
            except AtdeError as exc:
                self._send_json({"error": str(exc)}, HTTPStatus.INTERNAL_SERVER_ERROR)
                return
            self._send(HTTPStatus.OK, "text/csv; charset=utf-8", body)
        else:
            self._serve_asset(path)

    def _serve_asset(self, path: str):
        if path in ("", "/"):
            path = "/index.html"
        ui_dir = self.state.ui_dir
        if ui_dir is not None:
            target = (ui_dir / path.lstrip("/")).resolve()
            if target.is_file() and str(target).startswith(str(ui_dir.resolve())):
                ctype = _ASSET_TYPES.get(target.suffix, "application/octet-stream")
                self._send(HTTPStatus.OK, ctype, target.read_bytes())
                return
        if path == "/index.html":
            self._send(HTTPStatus.OK, "text/html; charset=utf-8", _FALLBACK_PAGE)
        else:
            self._send_json({"error": f"not found: {path}"}, HTTPStatus.NOT_FOUND)

    def do_POST(self):
        if self.path.split("?", 1)[0] != "/api/config":
            self._send_json({"error": f"not found: {self.path}"}, HTTPStatus.NOT_FOUND)
            return
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length)
        try:
            doc = json.loads(raw.decode())
        except (ValueError, UnicodeDecodeError) as exc:
            self._send_json({"ok": False, "errors": [f"invalid JSON: {exc}"]})
            return
        ok, errors = self.state.validate_config(doc)
        self._send_json({"ok": ok, "errors": errors})


def default_ui_dir() -> Optional[Path]:
    """Locate built frontend assets next to an installed or checked-out tree."""
    candidates = [
        Path(__file__).resolve().parent / "ui",
        Path(__file__).resolve().parents[2] / "frontend" / "dist",
        Path.cwd() / "frontend" / "dist",
    ]
    for candidate in candidates:
        if (candidate / "index.html").is_file():
            return candidate
    return None


def make_server(
    config: ProjectConfig,
    port: int,
    out_dir: Optional[Path] = None,
    ui_dir: Optional[Path] = None,
    host: str = "127.0.0.1",
) -> ThreadingHTTPServer:
    state = CalibrationState(config, out_dir, ui_dir if ui_dir else default_ui_dir())
    handler = type("BoundHandler", (CalibrationHandler,), {"state": state})
    return ThreadingHTTPServer((host, port), handler)


def serve_calibration(
    config: ProjectConfig,
    port: int,
    out_dir: Optional[Path] = None,
    ui_dir: Optional[Path] = None,
) -> None:
    """Run the calibration server until interrupted."""
    server = make_server(config, port, out_dir=out_dir, ui_dir=ui_dir)
    host, actual_port = server.server_address[:2]
    print(f"calibration UI at http://{host}:{actual_port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()

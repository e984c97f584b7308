"""Local HTTP facade over a session, for the browser explorer.

Single dataset at a time. All request handling runs under one lock, so
mutations are strictly serial and every response is a deterministic
function of the request log since the last reset. Mutating endpoints
return the refreshed grids and histograms so a UI updates in one round
trip. Responses carry permissive CORS headers; grid and histogram bodies
are byte-identical to the files the command line writes.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import dataio
from .errors import DensifyError, InputDataError, NoDatasetError, SpecError
from .session import GRID_KINDS, METHODS, Session


class _BadRequest(Exception):
    def __init__(self, message: str, field: str | None = None):
        self.message = message
        self.field = field
        super().__init__(message)


def state_obj(session: Session, include_grids: bool = True) -> dict:
    """The session as one JSON-ready document."""
    filter_obj = None
    if session.filter is not None:
        filter_obj = {
            "kind": session.filter.kind,
            "min": session.filter.lo,
            "max": session.filter.hi,
        }
    obj = {
        "loaded": session.loaded,
        "config": {
            "screen_width": session.config.screen_width,
            "screen_height": session.config.screen_height,
            "sa_side": session.config.sa_side,
        },
        "settings": {
            "method": session.method,
            "ratio": session.ratio,
            "levels": session.levels,
            "seed": session.seed,
            "filter": filter_obj,
        },
        "meta": None,
        "viewport": None,
        "counts": None,
        "plan": None,
    }
    if not session.loaded:
        return obj
    obj["meta"] = asdict(session.meta)
    obj["viewport"] = asdict(session.viewport)
    obj["counts"] = {
        "loaded": len(session.points),
        "working": len(session.working),
    }
    if session.plan is not None:
        obj["plan"] = dataio.plan_to_obj(session.plan)
    if include_grids:
        art = session.artifacts
        obj["grids"] = {
            "data": dataio.grid_to_obj(art.data_grid),
            "represented": dataio.grid_to_obj(art.represented_grid),
        }
        obj["histograms"] = {
            "data": dataio.histogram_to_obj(art.data_histogram),
            "represented": dataio.histogram_to_obj(art.represented_histogram),
        }
    return obj


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):
        pass

    @property
    def session(self) -> Session:
        return self.server.session

    # -- response plumbing

    def _send_bytes(self, code: int, payload: bytes, content_type: str):
        self.send_response(code)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def _send_document(self, text: str):
        self._send_bytes(200, text.encode(), "application/json")

    def _send_json(self, code: int, obj: dict):
        self._send_bytes(code, dataio.dumps(obj).encode(), "application/json")

    def _fail(self, code: int, message: str, field: str | None = None):
        error = {"error": message}
        if field:
            error["field"] = field
        self._send_json(code, error)

    def _body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise _BadRequest(f"request body is not valid JSON: {exc}")
        if not isinstance(obj, dict):
            raise _BadRequest("request body must be a JSON object")
        return obj

    # -- verbs

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        self._dispatch("GET")

    def do_POST(self):
        self._dispatch("POST")

    def _dispatch(self, verb: str):
        url = urlparse(self.path)
        handler = _ROUTES.get((verb, url.path))
        if handler is None:
            self._fail(404, f"no such endpoint: {verb} {url.path}")
            return
        query = {key: values[-1] for key, values in parse_qs(url.query).items()}
        with self.server.state_lock:
            try:
                handler(self, query)
            except _BadRequest as exc:
                self._fail(400, exc.message, exc.field)
            except NoDatasetError as exc:
                self._fail(409, str(exc))
            except SpecError as exc:
                self._fail(400, str(exc))
            except InputDataError as exc:
                self._fail(400, str(exc), "path")
            except (DensifyError, ValueError) as exc:
                self._fail(500, str(exc))

    # -- reads

    def _artifacts(self):
        if not self.session.loaded:
            raise NoDatasetError("no dataset loaded")
        return self.session.artifacts

    def _kind(self, query: dict) -> str:
        kind = query.get("kind", "data")
        if kind not in GRID_KINDS:
            raise _BadRequest(
                f"kind must be one of {GRID_KINDS}, got {kind!r}", "kind"
            )
        return kind

    def _get_meta(self, query):
        self._send_json(200, state_obj(self.session, include_grids=False))

    def _get_grid(self, query):
        art = self._artifacts()
        kind = self._kind(query)
        grid = art.data_grid if kind == "data" else art.represented_grid
        self._send_document(dataio.dumps(dataio.grid_to_obj(grid)))

    def _get_histogram(self, query):
        art = self._artifacts()
        kind = self._kind(query)
        hist = art.data_histogram if kind == "data" else art.represented_histogram
        self._send_document(dataio.dumps(dataio.histogram_to_obj(hist)))

    def _get_raster(self, query):
        payload = dataio.raster_to_pgm(self._artifacts().raster)
        self._send_bytes(200, payload, "image/x-portable-graymap")

    # -- mutations

    def _post_load(self, query):
        body = self._body()
        path = body.get("path")
        if not isinstance(path, str) or not path:
            raise _BadRequest("load needs a server-local file path", "path")
        points, meta = dataio.load_points(
            path,
            x_column=_string(body, "x_column", "x"),
            y_column=_string(body, "y_column", "y"),
            delimiter=_string(body, "delimiter", ","),
        )
        self.session.load(points, meta)
        self._send_json(200, state_obj(self.session))

    def _post_sample(self, query):
        body = self._body()
        method = body.get("method")
        if method not in METHODS:
            raise _BadRequest(f"method must be one of {METHODS}", "method")
        ratio = body.get("ratio")
        if ratio is not None and not isinstance(ratio, (int, float)):
            raise _BadRequest("ratio must be a number", "ratio")
        levels = body.get("levels", "auto")
        if levels != "auto" and not _is_int(levels):
            raise _BadRequest('levels must be an integer or "auto"', "levels")
        seed = body.get("seed", 0)
        if not _is_int(seed):
            raise _BadRequest("seed must be an integer", "seed")
        self.session.set_sampling(method, ratio=ratio, levels=levels, seed=seed)
        self._send_json(200, state_obj(self.session))

    def _post_filter(self, query):
        body = self._body()
        kind = body.get("kind", "data")
        if kind not in GRID_KINDS:
            raise _BadRequest(f"kind must be one of {GRID_KINDS}", "kind")
        if "min" not in body:
            raise _BadRequest("filter needs a min density", "min")
        lo = body["min"]
        if not _is_int(lo):
            raise _BadRequest("min must be an integer", "min")
        hi = body.get("max")
        if hi is not None and not _is_int(hi):
            raise _BadRequest("max must be an integer", "max")
        self.session.set_filter(kind, lo, hi)
        self._send_json(200, state_obj(self.session))

    def _post_reset(self, query):
        self.session.reset()
        self._send_json(200, state_obj(self.session))


_ROUTES = {
    ("GET", "/meta"): _Handler._get_meta,
    ("GET", "/grid"): _Handler._get_grid,
    ("GET", "/histogram"): _Handler._get_histogram,
    ("GET", "/raster"): _Handler._get_raster,
    ("POST", "/load"): _Handler._post_load,
    ("POST", "/sample"): _Handler._post_sample,
    ("POST", "/filter"): _Handler._post_filter,
    ("POST", "/reset"): _Handler._post_reset,
}


def _string(body: dict, key: str, default: str) -> str:
    value = body.get(key, default)
    if not isinstance(value, str):
        raise _BadRequest(f"{key} must be a string", key)
    return value


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class DensifyServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, session: Session):
        super().__init__(address, _Handler)
        self.session = session
        self.state_lock = threading.Lock()


def make_server(
    session: Session, port: int = 0, host: str = "127.0.0.1"
) -> DensifyServer:
    """Bind a server; port 0 picks a free port (see server_address)."""
    return DensifyServer((host, port), session)


def run(session: Session, port: int, host: str = "127.0.0.1"):
    """Blocking entry point used by the command line."""
    server = make_server(session, port, host)
    print(f"listening on http://{host}:{server.server_address[1]}", flush=True)
    try:
        server.serve_forever()
    finally:
        server.server_close()

"""HTTP front end for a registry: publish, list, fetch, and match services.

Plain stdlib http.server; each request runs in its own thread. Reads
capture the current registry snapshot once and never look back, so a
concurrent publish can only ever make a whole new snapshot visible.
Mutations are serialized by a lock and persisted to disk before the
response goes out.
"""

from __future__ import annotations

import json
import logging
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import unquote, urlparse

from . import registry as registry_mod
from .errors import SemMatchError
from .matchmaker import InputDirection
from .ontology import OntologyError, UnknownConceptError
from .registry import (
    DuplicateServiceNameError,
    PersistenceError,
    Registry,
    ServiceNotFoundError,
)
from .services import InvalidDocumentError, service_from_document
from .wire import MODES, build_match_payload, payload_bytes

log = logging.getLogger("semmatch.server")

MAX_BODY_BYTES = 4 * 1024 * 1024


class BindError(SemMatchError):
    """The server socket could not be bound."""


class RegistryServer(ThreadingHTTPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, registry: Registry, bind: tuple[str, int]):
        self.registry = registry
        self.mutation_lock = threading.Lock()
        try:
            super().__init__(bind, RegistryRequestHandler)
        except OSError as exc:
            raise BindError(f"cannot bind {bind[0]}:{bind[1]}: {exc}") from exc

    @property
    def port(self) -> int:
        return self.server_address[1]


def make_server(registry: Registry, host: str = "127.0.0.1", port: int = 8080) -> RegistryServer:
    return RegistryServer(registry, (host, port))


def serve(registry: Registry, host: str = "127.0.0.1", port: int = 8080) -> None:
    """Run the API until interrupted."""
    server = make_server(registry, host, port)
    log.info("serving registry %s on %s:%d", registry.root, host, server.port)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


class RegistryRequestHandler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"
    server: RegistryServer

    # -- routing ---------------------------------------------------------

    def do_GET(self) -> None:
        snapshot = self.server.registry
        path = urlparse(self.path).path
        if path == "/healthz":
            self._send_json(
                200,
                {
                    "status": "ok",
                    "services": len(snapshot.records),
                    "version": snapshot.version,
                },
            )
        elif path == "/services":
            self._send_json(200, [s.to_document() for s in snapshot.services])
        elif path.startswith("/services/"):
            name = unquote(path[len("/services/"):])
            service = snapshot.get(name)
            if service is None:
                self._send_error(404, "not-found", f"no service named {name!r}")
            else:
                self._send_json(200, service.to_document())
        elif path == "/ontology":
            body = snapshot.ontology_text.encode("utf-8")
            self._send_bytes(200, body, "text/plain; charset=utf-8")
        else:
            self._send_error(404, "not-found", f"no route for GET {path}")

    def do_POST(self) -> None:
        path = urlparse(self.path).path
        if path == "/services":
            self._handle_publish()
        elif path == "/match":
            self._handle_match()
        else:
            self._send_error(404, "not-found", f"no route for POST {path}")

    def do_DELETE(self) -> None:
        path = urlparse(self.path).path
        if not path.startswith("/services/"):
            self._send_error(404, "not-found", f"no route for DELETE {path}")
            return
        name = unquote(path[len("/services/"):])
        with self.server.mutation_lock:
            try:
                self.server.registry = registry_mod.remove(self.server.registry, name)
            except ServiceNotFoundError as exc:
                self._send_error(404, "not-found", str(exc))
                return
            except PersistenceError as exc:
                self._send_error(500, "persistence", str(exc))
                return
        self.send_response(204)
        self.send_header("Content-Length", "0")
        self.end_headers()

    # -- handlers --------------------------------------------------------

    def _handle_publish(self) -> None:
        body = self._read_json_body()
        if body is _BAD_BODY:
            return
        try:
            service = service_from_document(body)
        except InvalidDocumentError as exc:
            self._send_error(400, "validation", str(exc))
            return
        with self.server.mutation_lock:
            try:
                self.server.registry = registry_mod.publish(self.server.registry, service)
            except DuplicateServiceNameError as exc:
                self._send_error(409, "duplicate-name", str(exc))
                return
            except (InvalidDocumentError, UnknownConceptError, OntologyError) as exc:
                self._send_error(400, "validation", str(exc))
                return
            except PersistenceError as exc:
                self._send_error(500, "persistence", str(exc))
                return
            version = self.server.registry.version
        self._send_json(201, {"name": service.name, "version": version})

    def _handle_match(self) -> None:
        snapshot = self.server.registry
        body = self._read_json_body()
        if body is _BAD_BODY:
            return
        if not isinstance(body, dict):
            self._send_error(400, "validation", "match request must be a JSON object")
            return
        unknown = set(body) - {"service", "exclude", "mode", "input_direction"}
        if unknown:
            self._send_error(400, "validation", f"unknown keys: {', '.join(sorted(unknown))}")
            return
        if "service" not in body:
            self._send_error(400, "validation", "missing key: service")
            return
        mode = body.get("mode", "best")
        if mode not in MODES:
            self._send_error(400, "validation", f"mode must be one of {MODES}")
            return
        exclude = body.get("exclude", [])
        if not isinstance(exclude, list) or not all(isinstance(n, str) for n in exclude):
            self._send_error(400, "validation", "'exclude' must be a list of service names")
            return
        try:
            direction = InputDirection.from_label(body.get("input_direction", "as-paper"))
        except ValueError as exc:
            self._send_error(400, "validation", str(exc))
            return
        try:
            crashed = service_from_document(body["service"])
            crashed.validate_concepts(snapshot.ontology)
        except (InvalidDocumentError, UnknownConceptError) as exc:
            self._send_error(400, "validation", str(exc))
            return

        excluded = set(exclude)
        repository = [s for s in snapshot.services if s.name not in excluded]
        payload = build_match_payload(snapshot.ontology, crashed, repository, mode, direction)
        self._send_bytes(200, payload_bytes(payload), "application/json")

    # -- plumbing --------------------------------------------------------

    def _read_json_body(self):
        try:
            length = int(self.headers.get("Content-Length", 0))
        except ValueError:
            length = -1
        if length < 0 or length > MAX_BODY_BYTES:
            self._send_error(400, "bad-request", "invalid Content-Length")
            return _BAD_BODY
        raw = self.rfile.read(length) if length else b""
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            self._send_error(400, "bad-request", f"invalid JSON body: {exc}")
            return _BAD_BODY

    def _send_json(self, status: int, payload) -> None:
        self._send_bytes(status, (json.dumps(payload) + "\n").encode("utf-8"), "application/json")

    def _send_error(self, status: int, code: str, detail: str) -> None:
        self._send_json(status, {"error": code, "detail": detail})

    def _send_bytes(self, status: int, body: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def log_message(self, format: str, *args) -> None:
        log.debug("%s %s", self.address_string(), format % args)


_BAD_BODY = object()

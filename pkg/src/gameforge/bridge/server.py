"""JSON-RPC bridge exposing the virtual engine as a tool server.

The wire protocol is JSON-RPC 2.0 over Content-Length framed byte streams
(stdio by default, TCP behind a flag). Engine functionality is published
as tools reachable through ``tools/list`` and ``tools/call``, one session
per connection.
"""

from __future__ import annotations

import json
import socketserver
import sys
from dataclasses import dataclass, field
from typing import BinaryIO, Callable

from gameforge.engine.execute import DEFAULT_BOUNDS, Box, SceneLayout, execute_graph
from gameforge.engine.runtime import (
    INTERACTION_RADIUS,
    VISIBILITY_RADIUS,
    RuntimeWorld,
    exec_command,
    spawn_world,
)
from gameforge.engine.validate import validate_graph
from gameforge.errors import GameForgeError, MalformedInput, WorldNotSpawned
from gameforge.forge.flow import ModuleRegistry
from gameforge.forge.ir import InteractionIR, ModuleIR
from gameforge.pcg.graph import PcgGraph, parse_graph

from gameforge.bridge.framing import read_frame, write_frame

PARSE_ERROR = -32700
INVALID_REQUEST = -32600
METHOD_NOT_FOUND = -32601
INVALID_PARAMS = -32602
APPLICATION_ERROR = -32000


@dataclass(frozen=True)
class ToolDescriptor:
    name: str
    description: str
    params: dict[str, str]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "description": self.description,
            "params": dict(self.params),
        }


TOOLS = (
    ToolDescriptor(
        "exec_command",
        "Run one play-test command against the spawned world.",
        {"kind": "MoveTo or Interact", "object": "object name", "action": "action verb (Interact only)"},
    ),
    ToolDescriptor(
        "execute_graph",
        "Execute the imported scene graph into a layout of placed instances.",
        {"seed": "integer seed", "bounds": "optional world bounds"},
    ),
    ToolDescriptor(
        "fetch_logs",
        "Return world log entries, optionally only those after a tick.",
        {"after": "optional tick; only newer entries are returned"},
    ),
    ToolDescriptor(
        "fetch_snapshot",
        "Return the current world snapshot.",
        {},
    ),
    ToolDescriptor(
        "import_graph",
        "Load a serialized scene graph into the session.",
        {"graph": "serialized scene graph object"},
    ),
    ToolDescriptor(
        "register_modules",
        "Install gameplay modules and interaction flows into the session.",
        {"modules": "list of module objects", "interactions": "list of interaction objects"},
    ),
    ToolDescriptor(
        "spawn_world",
        "Create the runtime world from the executed layout.",
        {
            "interaction_radius": "optional override",
            "visibility_radius": "optional override",
        },
    ),
    ToolDescriptor(
        "validate_graph",
        "Check the imported scene graph against the node registry.",
        {},
    ),
)

_TOOL_NAMES = tuple(t.name for t in TOOLS)
assert list(_TOOL_NAMES) == sorted(_TOOL_NAMES)


@dataclass
class BridgeSession:
    """Per-connection state: graph, layout, modules, and the live world."""

    graph: PcgGraph | None = None
    layout: SceneLayout | None = None
    registry: ModuleRegistry = field(default_factory=ModuleRegistry)
    interactions: list[InteractionIR] = field(default_factory=list)
    world: RuntimeWorld | None = None

    def call_tool(self, name: str, params: dict) -> dict:
        handler = _HANDLERS.get(name)
        if handler is None:
            raise KeyError(name)
        return handler(self, params)

    # -- tool handlers ------------------------------------------------------

    def _import_graph(self, params: dict) -> dict:
        payload = params.get("graph")
        if not isinstance(payload, dict):
            raise MalformedInput("import_graph needs a 'graph' object")
        self.graph = parse_graph(payload)
        self.layout = None
        self.world = None
        return {
            "chains": len(self.graph.chains),
            "nodes": sum(len(c.nodes) for c in self.graph.chains),
        }

    def _validate_graph(self, params: dict) -> dict:
        del params
        return validate_graph(self._require_graph()).to_dict()

    def _execute_graph(self, params: dict) -> dict:
        seed = params.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise MalformedInput("execute_graph seed must be an integer")
        bounds = DEFAULT_BOUNDS
        if params.get("bounds") is not None:
            bounds = Box.from_dict(params["bounds"])
        self.layout = execute_graph(self._require_graph(), seed=seed, bounds=bounds)
        self.world = None
        return {"instances": len(self.layout.instances), "bounds": bounds.to_dict()}

    def _register_modules(self, params: dict) -> dict:
        modules = params.get("modules", [])
        interactions = params.get("interactions", [])
        if not isinstance(modules, list) or not isinstance(interactions, list):
            raise MalformedInput("register_modules needs list-valued params")
        registry = ModuleRegistry()
        for payload in modules:
            registry.register(ModuleIR.from_dict(payload))
        self.registry = registry
        self.interactions = [InteractionIR.from_dict(p) for p in interactions]
        self.world = None
        return {"modules": len(registry), "interactions": len(self.interactions)}

    def _spawn_world(self, params: dict) -> dict:
        if self.layout is None:
            raise MalformedInput("spawn_world requires an executed layout")
        self.world = spawn_world(
            self.layout,
            self.interactions,
            self.registry,
            interaction_radius=float(params.get("interaction_radius", INTERACTION_RADIUS)),
            visibility_radius=float(params.get("visibility_radius", VISIBILITY_RADIUS)),
        )
        return self.world.snapshot().to_dict()

    def _exec_command(self, params: dict) -> dict:
        world = self._require_world()
        kind = params.get("kind")
        object_name = params.get("object")
        if not isinstance(kind, str) or not isinstance(object_name, str):
            raise MalformedInput("exec_command needs string 'kind' and 'object'")
        action = params.get("action", "")
        if not isinstance(action, str):
            raise MalformedInput("exec_command action must be a string")
        return exec_command(world, kind, object_name, action).to_dict()

    def _fetch_snapshot(self, params: dict) -> dict:
        del params
        return self._require_world().snapshot().to_dict()

    def _fetch_logs(self, params: dict) -> dict:
        world = self._require_world()
        after = params.get("after", 0)
        if not isinstance(after, int) or isinstance(after, bool):
            raise MalformedInput("fetch_logs 'after' must be an integer tick")
        entries = [e.to_dict() for e in world.log if e.tick > after]
        return {"entries": entries}

    # -- state gates --------------------------------------------------------

    def _require_graph(self) -> PcgGraph:
        if self.graph is None:
            raise MalformedInput("no graph imported yet")
        return self.graph

    def _require_world(self) -> RuntimeWorld:
        if self.world is None:
            raise WorldNotSpawned("spawn_world has not been called in this session")
        return self.world


_HANDLERS: dict[str, Callable[[BridgeSession, dict], dict]] = {
    "exec_command": BridgeSession._exec_command,
    "execute_graph": BridgeSession._execute_graph,
    "fetch_logs": BridgeSession._fetch_logs,
    "fetch_snapshot": BridgeSession._fetch_snapshot,
    "import_graph": BridgeSession._import_graph,
    "register_modules": BridgeSession._register_modules,
    "spawn_world": BridgeSession._spawn_world,
    "validate_graph": BridgeSession._validate_graph,
}


def _error(request_id, code: int, message: str) -> dict:
    return {
        "jsonrpc": "2.0",
        "id": request_id,
        "error": {"code": code, "message": message},
    }


def _result(request_id, payload: dict) -> dict:
    return {"jsonrpc": "2.0", "id": request_id, "result": payload}


def dispatch(session: BridgeSession, request: object) -> dict:
    """Answer one JSON-RPC request object with a response object."""
    if not isinstance(request, dict) or request.get("jsonrpc") != "2.0":
        return _error(None, INVALID_REQUEST, "not a JSON-RPC 2.0 request")
    request_id = request.get("id")
    method = request.get("method")
    params = request.get("params", {})
    if not isinstance(method, str):
        return _error(request_id, INVALID_REQUEST, "method must be a string")
    if not isinstance(params, dict):
        return _error(request_id, INVALID_PARAMS, "params must be an object")

    if method == "tools/list":
        return _result(request_id, {"tools": [t.to_dict() for t in TOOLS]})
    if method == "tools/call":
        name = params.get("name")
        arguments = params.get("arguments", {})
        if not isinstance(name, str) or not isinstance(arguments, dict):
            return _error(
                request_id, INVALID_PARAMS, "tools/call needs 'name' and object 'arguments'"
            )
        try:
            payload = session.call_tool(name, arguments)
        except KeyError:
            return _error(request_id, INVALID_PARAMS, f"unknown tool: {name}")
        except GameForgeError as exc:
            return _error(
                request_id, APPLICATION_ERROR, f"{type(exc).__name__}: {exc}"
            )
        return _result(request_id, payload)
    return _error(request_id, METHOD_NOT_FOUND, f"unknown method: {method}")


def handle_payload(session: BridgeSession, payload: bytes) -> dict:
    """Decode one frame payload and produce the response object."""
    try:
        request = json.loads(payload.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return _error(None, PARSE_ERROR, f"request is not valid JSON: {exc}")
    return dispatch(session, request)


def serve_stream(reader: BinaryIO, writer: BinaryIO) -> None:
    """Serve one session over a framed byte stream until end-of-stream."""
    session = BridgeSession()
    while True:
        payload = read_frame(reader)
        if payload is None:
            return
        response = handle_payload(session, payload)
        write_frame(writer, json.dumps(response).encode("utf-8"))


class _TcpHandler(socketserver.StreamRequestHandler):
    def handle(self):
        serve_stream(self.rfile, self.wfile)


class BridgeTcpServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _TcpHandler)

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]


def serve_stdio() -> None:
    serve_stream(sys.stdin.buffer, sys.stdout.buffer)


def serve_tcp(host: str, port: int) -> None:
    with BridgeTcpServer(host, port) as server:
        server.serve_forever()

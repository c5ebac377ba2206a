"""Client-side access to a bridge server, in-process or over a stream."""

from __future__ import annotations

import json
import socket
from typing import BinaryIO, Protocol

from gameforge.errors import BridgeCallError, BridgeUnavailable, FramingError

from gameforge.bridge.framing import read_frame, write_frame
from gameforge.bridge.server import BridgeSession, handle_payload


class Bridge(Protocol):
    """Anything that can answer tool calls on behalf of the engine."""

    def call_tool(self, name: str, arguments: dict) -> dict: ...


def _raise_for_error(response: dict) -> dict:
    error = response.get("error")
    if error is not None:
        raise BridgeCallError(int(error.get("code", 0)), str(error.get("message", "")))
    result = response.get("result")
    if not isinstance(result, dict):
        raise BridgeUnavailable("response carried neither result nor error")
    return result


class InProcessBridge:
    """Runs a session locally but routes every call through the wire codec.

    Requests are serialized to the same framed JSON-RPC payloads a remote
    server would see, so behaviour matches the stdio and TCP transports.
    """

    def __init__(self):
        self._session = BridgeSession()
        self._next_id = 1

    def request(self, method: str, params: dict) -> dict:
        request = {
            "jsonrpc": "2.0",
            "id": self._next_id,
            "method": method,
            "params": params,
        }
        self._next_id += 1
        payload = json.dumps(request).encode("utf-8")
        return _raise_for_error(handle_payload(self._session, payload))

    def call_tool(self, name: str, arguments: dict) -> dict:
        return self.request("tools/call", {"name": name, "arguments": arguments})

    def list_tools(self) -> list[dict]:
        return self.request("tools/list", {})["tools"]


class StreamBridgeClient:
    """Framed JSON-RPC client over a pair of byte streams."""

    def __init__(self, reader: BinaryIO, writer: BinaryIO):
        self._reader = reader
        self._writer = writer
        self._next_id = 1

    def request(self, method: str, params: dict) -> dict:
        request = {
            "jsonrpc": "2.0",
            "id": self._next_id,
            "method": method,
            "params": params,
        }
        self._next_id += 1
        try:
            write_frame(self._writer, json.dumps(request).encode("utf-8"))
            payload = read_frame(self._reader)
        except (OSError, ValueError, FramingError) as exc:
            raise BridgeUnavailable(f"bridge transport failed: {exc}") from exc
        if payload is None:
            raise BridgeUnavailable("bridge closed the connection")
        try:
            response = json.loads(payload.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as exc:
            raise BridgeUnavailable(f"bridge sent undecodable payload: {exc}") from exc
        if response.get("id") != request["id"]:
            raise BridgeUnavailable("bridge answered with a mismatched request id")
        return _raise_for_error(response)

    def call_tool(self, name: str, arguments: dict) -> dict:
        return self.request("tools/call", {"name": name, "arguments": arguments})

    def list_tools(self) -> list[dict]:
        return self.request("tools/list", {})["tools"]


class TcpBridgeClient(StreamBridgeClient):
    def __init__(self, host: str, port: int, timeout: float = 10.0):
        try:
            self._sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as exc:
            raise BridgeUnavailable(f"cannot reach bridge at {host}:{port}: {exc}") from exc
        super().__init__(self._sock.makefile("rb"), self._sock.makefile("wb"))

    def close(self) -> None:
        self._sock.close()

    def __enter__(self) -> "TcpBridgeClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()

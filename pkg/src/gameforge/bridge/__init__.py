from gameforge.bridge.client import (
    Bridge,
    InProcessBridge,
    StreamBridgeClient,
    TcpBridgeClient,
)
from gameforge.bridge.framing import encode_frame, read_frame, write_frame
from gameforge.bridge.server import (
    TOOLS,
    BridgeSession,
    BridgeTcpServer,
    dispatch,
    serve_stdio,
    serve_stream,
    serve_tcp,
)

__all__ = [
    "Bridge",
    "BridgeSession",
    "BridgeTcpServer",
    "InProcessBridge",
    "StreamBridgeClient",
    "TOOLS",
    "TcpBridgeClient",
    "dispatch",
    "encode_frame",
    "read_frame",
    "serve_stdio",
    "serve_stream",
    "serve_tcp",
    "write_frame",
]

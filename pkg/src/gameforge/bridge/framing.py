"""Content-Length byte framing for the engine bridge protocol.

Each frame is an ASCII header block terminated by a blank line, then the
payload: ``Content-Length: <n>\\r\\n\\r\\n<n bytes>``. Unknown header lines
are tolerated and ignored.
"""

from __future__ import annotations

from typing import BinaryIO

from gameforge.errors import FramingError

HEADER_SEPARATOR = b"\r\n"
MAX_FRAME_BYTES = 16 * 1024 * 1024


def encode_frame(payload: bytes) -> bytes:
    return b"Content-Length: %d\r\n\r\n%b" % (len(payload), payload)


def write_frame(stream: BinaryIO, payload: bytes) -> None:
    stream.write(encode_frame(payload))
    stream.flush()


def _read_line(stream: BinaryIO) -> bytes:
    line = stream.readline()
    if line and not line.endswith(b"\n"):
        raise FramingError("stream ended inside a header line")
    return line


def read_frame(stream: BinaryIO) -> bytes | None:
    """Read one frame payload; None means clean end-of-stream."""
    first = _read_line(stream)
    if first == b"":
        return None
    headers = {}
    line = first
    while line not in (HEADER_SEPARATOR, b"\n"):
        name, sep, value = line.decode("ascii", "replace").partition(":")
        if not sep:
            raise FramingError(f"header line without a colon: {line!r}")
        headers[name.strip().lower()] = value.strip()
        line = _read_line(stream)
        if line == b"":
            raise FramingError("stream ended before the header block finished")
    raw_length = headers.get("content-length")
    if raw_length is None:
        raise FramingError("frame is missing the Content-Length header")
    try:
        length = int(raw_length)
    except ValueError:
        raise FramingError(f"Content-Length is not an integer: {raw_length!r}") from None
    if length < 0 or length > MAX_FRAME_BYTES:
        raise FramingError(f"Content-Length out of range: {length}")
    payload = b""
    while len(payload) < length:
        chunk = stream.read(length - len(payload))
        if not chunk:
            raise FramingError(
                f"payload truncated: expected {length} bytes, got {len(payload)}"
            )
        payload += chunk
    return payload

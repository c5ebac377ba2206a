"""Deterministic text embeddings via token feature hashing.

Tokens are hashed onto a fixed number of coordinates and counted, then the
vector is L2-normalised. The construction needs no model weights, is stable
across processes and platforms, and gives disjoint-token texts near-zero
cosine (exactly zero absent hash collisions).
"""

from __future__ import annotations

import hashlib
import re

import numpy as np

from gameforge.errors import EmptyText

EMBED_DIM = 256

_TOKEN = re.compile(r"[a-z0-9]+")


def _tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


def _coordinate(token: str, dim: int) -> int:
    digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") % dim


class HashingEmbedder:
    """Token-count feature hashing into a unit-norm float32 vector."""

    def __init__(self, dim: int = EMBED_DIM):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.provider_id = f"hash-v1-d{dim}"

    def embed(self, text: str) -> np.ndarray:
        tokens = _tokenize(text)
        if not tokens:
            raise EmptyText("cannot embed empty text")
        vector = np.zeros(self.dim, dtype=np.float64)
        for token in tokens:
            vector[_coordinate(token, self.dim)] += 1.0
        vector /= np.linalg.norm(vector)
        return vector.astype(np.float32)


_DEFAULT = HashingEmbedder()


def embed_text(text: str) -> np.ndarray:
    """Embed with the default provider (dimension EMBED_DIM)."""
    return _DEFAULT.embed(text)

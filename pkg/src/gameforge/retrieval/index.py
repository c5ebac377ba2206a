"""Asset index: build from a manifest, persist, prefilter, rank."""

from __future__ import annotations

import json
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from gameforge.categories import is_category
from gameforge.errors import EmptyCorpus, NoCandidates, ParseError, ProviderMismatch
from gameforge.retrieval.embedding import HashingEmbedder
from gameforge.retrieval.types import ModelRecord, ObjectAttrs

MAGIC = b"GFAI"
FORMAT_VERSION = 1


@dataclass
class AssetIndex:
    records: tuple[ModelRecord, ...]
    vectors: np.ndarray  # (n, dim) float32, rows unit-norm
    provider_id: str
    buckets: dict[str, np.ndarray] = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.records) != self.vectors.shape[0]:
            raise ValueError("record/vector count mismatch")
        buckets: dict[str, list[int]] = {}
        for i, record in enumerate(self.records):
            buckets.setdefault(record.category, []).append(i)
        self.buckets = {
            cat: np.asarray(rows, dtype=np.int64) for cat, rows in buckets.items()
        }

    @property
    def dim(self) -> int:
        return int(self.vectors.shape[1])


@dataclass(frozen=True)
class RetrievalResult:
    """Cosine-ranked candidates plus the size of the pool they came from."""

    ranked: tuple[tuple[ModelRecord, float], ...]
    pool_size: int


def build_index(
    manifest_path: str | Path, embedder: HashingEmbedder | None = None
) -> AssetIndex:
    """Build an index from a JSONL manifest of model records."""
    embedder = embedder or HashingEmbedder()
    path = Path(manifest_path)
    records: list[ModelRecord] = []
    seen: set[str] = set()
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ParseError(f"manifest {path}: {exc}") from exc
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            data = json.loads(line)
            record = ModelRecord.from_dict(data)
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"{path}:{lineno}: bad record: {exc}") from exc
        if not is_category(record.category):
            raise ParseError(
                f"{path}:{lineno}: unknown category {record.category!r}"
            )
        if record.model_id in seen:
            raise ParseError(f"{path}:{lineno}: duplicate model_id {record.model_id}")
        seen.add(record.model_id)
        records.append(record)
    if not records:
        raise EmptyCorpus(f"manifest {path} holds no records")
    vectors = np.stack([embedder.embed(r.description) for r in records])
    return AssetIndex(tuple(records), vectors, embedder.provider_id)


def _pack_str(value: str) -> bytes:
    raw = value.encode("utf-8")
    return struct.pack("<I", len(raw)) + raw


class _Reader:
    def __init__(self, blob: bytes):
        self.blob = blob
        self.offset = 0

    def take(self, n: int) -> bytes:
        if self.offset + n > len(self.blob):
            raise ParseError("index file truncated")
        chunk = self.blob[self.offset : self.offset + n]
        self.offset += n
        return chunk

    def u16(self) -> int:
        return struct.unpack("<H", self.take(2))[0]

    def u32(self) -> int:
        return struct.unpack("<I", self.take(4))[0]

    def string(self) -> str:
        return self.take(self.u32()).decode("utf-8")


def save_index(index: AssetIndex, path: str | Path) -> None:
    """Write the little-endian binary index file."""
    parts = [
        MAGIC,
        struct.pack("<H", FORMAT_VERSION),
        struct.pack("<I", index.dim),
        struct.pack("<H", len(index.provider_id.encode("utf-8"))),
        index.provider_id.encode("utf-8"),
        struct.pack("<I", len(index.records)),
    ]
    for record in index.records:
        for value in (
            record.model_id,
            record.name,
            record.category,
            record.description,
            record.uri,
        ):
            parts.append(_pack_str(value))
    vectors = np.ascontiguousarray(index.vectors, dtype="<f4")
    parts.append(vectors.tobytes())
    Path(path).write_bytes(b"".join(parts))


def load_index(path: str | Path) -> AssetIndex:
    reader = _Reader(Path(path).read_bytes())
    if reader.take(4) != MAGIC:
        raise ParseError(f"{path}: not an index file")
    version = reader.u16()
    if version != FORMAT_VERSION:
        raise ParseError(f"{path}: unsupported index version {version}")
    dim = reader.u32()
    provider_id = reader.take(reader.u16()).decode("utf-8")
    count = reader.u32()
    records = tuple(
        ModelRecord(
            model_id=reader.string(),
            name=reader.string(),
            category=reader.string(),
            description=reader.string(),
            uri=reader.string(),
        )
        for _ in range(count)
    )
    vectors = np.frombuffer(reader.take(count * dim * 4), dtype="<f4").reshape(
        count, dim
    )
    return AssetIndex(records, np.array(vectors, dtype=np.float32), provider_id)


def prefilter(index: AssetIndex, categories: set[str] | None) -> np.ndarray:
    """Row indices of records in the given categories (None = everything)."""
    if categories is None:
        return np.arange(len(index.records), dtype=np.int64)
    chunks = [index.buckets[c] for c in sorted(categories) if c in index.buckets]
    if not chunks:
        return np.empty(0, dtype=np.int64)
    return np.sort(np.concatenate(chunks))


_OWN_CATEGORY = "own-category"


def retrieve_topk(
    index: AssetIndex,
    obj: ObjectAttrs,
    k: int = 20,
    embedder: HashingEmbedder | None = None,
    categories: set[str] | None | str = _OWN_CATEGORY,
) -> RetrievalResult:
    """Rank the object's category bucket by cosine against its description.

    Ties are broken by ascending model_id. Pass categories=None to rank the
    whole corpus. Raises NoCandidates when the prefilter leaves nothing;
    callers may then widen to the whole corpus.
    """
    if k < 1:
        raise ValueError("k must be positive")
    embedder = embedder or HashingEmbedder(dim=index.dim)
    if embedder.provider_id != index.provider_id:
        raise ProviderMismatch(
            f"index built with {index.provider_id}, query uses {embedder.provider_id}"
        )
    if categories == _OWN_CATEGORY:
        categories = {obj.category}
    rows = prefilter(index, categories)
    if rows.size == 0:
        raise NoCandidates(f"no records in categories {sorted(categories)}")
    query = embedder.embed(obj.description).astype(np.float64)
    scores = index.vectors[rows].astype(np.float64) @ query
    order = sorted(
        range(rows.size),
        key=lambda i: (-scores[i], index.records[rows[i]].model_id),
    )
    ranked = tuple(
        (index.records[rows[i]], float(scores[i])) for i in order[:k]
    )
    return RetrievalResult(ranked=ranked, pool_size=int(rows.size))

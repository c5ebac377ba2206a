"""Node documentation corpus: chunking and retrieval for node specification."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from gameforge.errors import EmptyCorpus
from gameforge.retrieval.embedding import HashingEmbedder

CHUNK_CHAR_LIMIT = 2000


@dataclass(frozen=True)
class DocChunk:
    chunk_id: str
    source_doc: str
    heading: str
    body: str
    embedding: np.ndarray

    def text(self) -> str:
        return f"{self.heading}\n{self.body}".strip()


def _split_sections(text: str) -> list[tuple[str, str]]:
    """(heading, body) pairs; content before the first heading gets ''."""
    sections: list[tuple[str, str]] = []
    heading = ""
    lines: list[str] = []
    for line in text.splitlines():
        if line.startswith("#"):
            if lines or heading:
                sections.append((heading, "\n".join(lines).strip()))
            heading = line.lstrip("#").strip()
            lines = []
        else:
            lines.append(line)
    sections.append((heading, "\n".join(lines).strip()))
    return [(h, b) for h, b in sections if h or b]


def _split_oversize(body: str, limit: int) -> list[str]:
    """Greedily pack paragraphs so each piece stays within the limit."""
    paragraphs = body.split("\n\n")
    pieces: list[str] = []
    current = ""
    for paragraph in paragraphs:
        candidate = f"{current}\n\n{paragraph}" if current else paragraph
        if current and len(candidate) > limit:
            pieces.append(current)
            current = paragraph
        else:
            current = candidate
    if current:
        pieces.append(current)
    return pieces


def chunk_documents(
    docs_dir: str | Path,
    embedder: HashingEmbedder | None = None,
    char_limit: int = CHUNK_CHAR_LIMIT,
    strip_heading: str | None = None,
) -> list[DocChunk]:
    """Chunk every Markdown file in the corpus directory.

    Boundaries fall on headings; a section longer than char_limit is split
    at paragraph breaks. Chunk ids are {filename}:{seq} with a per-document
    counter, so identical corpora always chunk identically. strip_heading
    removes matching sections before chunking (ablation runs).
    """
    embedder = embedder or HashingEmbedder()
    docs_dir = Path(docs_dir)
    files = sorted(docs_dir.glob("*.md"))
    if not files:
        raise EmptyCorpus(f"no documentation files under {docs_dir}")
    chunks: list[DocChunk] = []
    for path in files:
        title = path.stem
        seq = 0
        text = path.read_text(encoding="utf-8")
        if strip_heading is not None:
            text = strip_sections(text, strip_heading)
        for heading, body in _split_sections(text):
            bodies = [body] if len(body) <= char_limit else _split_oversize(body, char_limit)
            for piece in bodies:
                chunks.append(
                    DocChunk(
                        chunk_id=f"{path.name}:{seq:03d}",
                        source_doc=path.name,
                        heading=heading,
                        body=piece,
                        embedding=embedder.embed(f"{title} {heading} {piece}"),
                    )
                )
                seq += 1
    return chunks


def retrieve_chunks(
    chunks: list[DocChunk],
    query: str,
    c: int = 5,
    embedder: HashingEmbedder | None = None,
) -> list[DocChunk]:
    """Top-c chunks by cosine against the query; ties break on chunk_id."""
    if c < 1:
        raise ValueError("c must be positive")
    embedder = embedder or HashingEmbedder()
    query_vec = embedder.embed(query).astype(np.float64)
    scored = sorted(
        chunks,
        key=lambda ch: (-float(ch.embedding.astype(np.float64) @ query_vec), ch.chunk_id),
    )
    return scored[:c]


def strip_sections(text: str, heading_word: str) -> str:
    """Drop every section whose heading mentions the word (ablation helper)."""
    kept: list[str] = []
    dropping = False
    for line in text.splitlines():
        if line.startswith("#"):
            dropping = heading_word.lower() in line.lower()
        if not dropping:
            kept.append(line)
    return "\n".join(kept) + "\n"

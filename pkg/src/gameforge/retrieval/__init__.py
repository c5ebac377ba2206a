from gameforge.retrieval.agent import generate_object_list, rerank, resolve_model
from gameforge.retrieval.embedding import EMBED_DIM, HashingEmbedder, embed_text
from gameforge.retrieval.index import (
    AssetIndex,
    RetrievalResult,
    build_index,
    load_index,
    prefilter,
    retrieve_topk,
    save_index,
)
from gameforge.retrieval.types import ModelRecord, ObjectAttrs

__all__ = [
    "AssetIndex",
    "EMBED_DIM",
    "HashingEmbedder",
    "ModelRecord",
    "ObjectAttrs",
    "RetrievalResult",
    "build_index",
    "embed_text",
    "generate_object_list",
    "load_index",
    "prefilter",
    "rerank",
    "resolve_model",
    "retrieve_topk",
    "save_index",
]

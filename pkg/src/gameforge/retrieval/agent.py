"""Gateway-driven steps of asset retrieval: object planning and reranking."""

from __future__ import annotations

import json
import logging

from gameforge.categories import CATEGORIES
from gameforge.errors import GameForgeError, MalformedOutput, NoCandidates
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES
from gameforge.retrieval.embedding import HashingEmbedder
from gameforge.retrieval.index import AssetIndex, RetrievalResult, retrieve_topk
from gameforge.retrieval.types import ModelRecord, ObjectAttrs

log = logging.getLogger(__name__)


def generate_object_list(scene: str, gateway: LlmGateway) -> list[ObjectAttrs]:
    """Plan the scene's object inventory from its description.

    Duplicate names are disambiguated with _2, _3, ... suffixes in arrival
    order, so downstream stages can key everything by object name.
    """
    payload = gateway.complete_structured(
        TEMPLATES["GenerateObj"],
        {"scene": scene, "categories": ", ".join(CATEGORIES)},
    )
    raw_objects = payload["objects"]
    if not raw_objects:
        raise MalformedOutput("object planner returned an empty object list")
    seen: dict[str, int] = {}
    objects: list[ObjectAttrs] = []
    for entry in raw_objects:
        name = entry["name"]
        count = seen.get(name, 0) + 1
        seen[name] = count
        if count > 1:
            name = f"{name}_{count}"
        objects.append(
            ObjectAttrs(
                name=name,
                category=entry["category"],
                description=entry["description"],
                placement=entry["placement"],
            )
        )
    return objects


def rerank(
    obj: ObjectAttrs, result: RetrievalResult, gateway: LlmGateway
) -> ModelRecord:
    """Pick the best candidate; fall back to cosine top-1 on any failure.

    A single candidate is returned directly without consulting the backend.
    """
    if not result.ranked:
        raise NoCandidates(f"nothing to rerank for {obj.name}")
    if len(result.ranked) == 1:
        return result.ranked[0][0]
    candidates = [
        {
            "index": i,
            "name": record.name,
            "category": record.category,
            "description": record.description,
            "score": round(score, 6),
        }
        for i, (record, score) in enumerate(result.ranked)
    ]
    try:
        payload = gateway.complete_structured(
            TEMPLATES["Rerank"],
            {
                "object_json": json.dumps(obj.to_dict(), sort_keys=True),
                "candidates_json": json.dumps(candidates, sort_keys=True),
            },
        )
        choice = payload["choice"]
    except GameForgeError as exc:
        log.warning("rerank for %s fell back to top-1: %s", obj.name, exc)
        return result.ranked[0][0]
    if not 0 <= choice < len(result.ranked):
        log.warning(
            "rerank for %s chose out-of-range index %d; using top-1",
            obj.name, choice,
        )
        return result.ranked[0][0]
    return result.ranked[choice][0]


def resolve_model(
    index: AssetIndex,
    obj: ObjectAttrs,
    gateway: LlmGateway,
    k: int = 20,
    embedder: HashingEmbedder | None = None,
) -> tuple[ModelRecord, RetrievalResult]:
    """Retrieve-then-rerank with category widening when the bucket is empty."""
    try:
        result = retrieve_topk(index, obj, k=k, embedder=embedder)
    except NoCandidates:
        log.info("category %s empty for %s; widening to corpus", obj.category, obj.name)
        result = retrieve_topk(index, obj, k=k, embedder=embedder, categories=None)
    return rerank(obj, result, gateway), result

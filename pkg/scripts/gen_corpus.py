#!/usr/bin/env python3
"""Regenerate the bundled asset manifest.

The manifest is a deterministic function of the tables below: no RNG, no
timestamps, so rerunning this script reproduces the committed fixture
byte for byte. Every scene-object archetype the rule-based author can
emit gets one aligned record, and each category is padded with varied
filler assets up to a fixed total.
"""

from __future__ import annotations

import argparse
import itertools
import json
from collections import Counter
from pathlib import Path

from gameforge.categories import CATEGORIES
from gameforge.gateway.author import LEXICON

TOTAL_RECORDS = 1000

FILLER_NOUNS: dict[str, tuple[str, ...]] = {
    "animals-pets": (
        "red fox", "barn owl", "tabby cat", "shepherd dog", "river otter",
        "highland cow",
    ),
    "architecture": (
        "stone archway", "brick chimney", "timber gazebo", "clock tower",
        "garden wall", "covered bridge",
    ),
    "art-abstract": (
        "spiral sculpture", "mosaic panel", "wire mobile", "resin prism",
        "mural fragment", "kinetic ring",
    ),
    "cars-vehicles": (
        "delivery van", "farm tractor", "touring bicycle", "rowing boat",
        "steam locomotive", "hay cart",
    ),
    "characters-creatures": (
        "forest troll", "clay golem", "swamp lurker", "cave imp",
        "marsh wisp", "bog wraith",
    ),
    "cultural-heritage-history": (
        "burial urn", "rune stone", "bronze amphora", "temple relief",
        "ceremonial mask", "votive altar",
    ),
    "electronics-gadgets": (
        "signal beacon", "field radio", "brass telescope", "weather sensor",
        "portable generator", "arc lamp",
    ),
    "fashion-style": (
        "leather satchel", "woolen cloak", "feathered hat", "buckled boot",
        "silk scarf stand", "tailor dummy",
    ),
    "food-drink": (
        "bread basket", "cheese wheel", "cider jug", "fruit crate",
        "honey pot", "grain sack",
    ),
    "furniture-home": (
        "oak wardrobe", "rocking chair", "writing desk", "canopy bed",
        "kitchen dresser", "storage trunk",
    ),
    "music": (
        "street organ", "hide drum", "silver flute", "carved lute",
        "choir stall", "gramophone",
    ),
    "nature-plants": (
        "birch sapling", "fern cluster", "bramble hedge", "pond reed",
        "moss boulder", "willow stump",
    ),
    "news-politics": (
        "ballot box", "podium stand", "press kiosk", "proclamation scroll",
        "petition table", "herald board",
    ),
    "people": (
        "town guard", "fisher woman", "wandering bard", "farmhand",
        "innkeeper", "stonemason",
    ),
    "places-travel": (
        "milestone marker", "rope bridge", "ferry dock", "trail shelter",
        "harbor buoy", "caravan wagon",
    ),
    "science-technology": (
        "alembic set", "brass orrery", "gear assembly", "vacuum chamber",
        "surveying tripod", "copper boiler",
    ),
    "sports-fitness": (
        "archery target", "climbing wall", "training dummy", "horseshoe pit",
        "rowing machine", "balance beam",
    ),
    "weapons-military": (
        "guard halberd", "siege catapult", "arrow quiver", "round shield",
        "cannon barrel", "watch brazier",
    ),
}

ADJECTIVES = (
    "weathered", "polished", "rustic", "ornate", "mossy", "gilded",
    "carved", "painted", "ancient", "plain", "battered", "pristine",
)

DETAILS = (
    "with hand-painted textures",
    "scanned at high resolution",
    "with a clean low-poly silhouette",
    "tiled for modular reuse",
    "with baked ambient lighting",
)


def _target_counts() -> dict[str, int]:
    anchored = Counter(spec.category for spec in LEXICON)
    filler_total = TOTAL_RECORDS - sum(anchored.values())
    base, extra = divmod(filler_total, len(CATEGORIES))
    return {
        category: anchored.get(category, 0) + base + (1 if i < extra else 0)
        for i, category in enumerate(CATEGORIES)
    }


def build_records() -> list[dict]:
    counts = _target_counts()
    records: list[dict] = []
    serial = 0

    def emit(name: str, category: str, description: str) -> None:
        nonlocal serial
        model_id = f"asset-{serial:04d}"
        records.append(
            {
                "model_id": model_id,
                "name": name,
                "category": category,
                "description": description,
                "uri": f"vault://assets/{model_id}.glb",
            }
        )
        serial += 1

    for category in CATEGORIES:
        produced = 0
        for spec in LEXICON:
            if spec.category == category:
                emit(spec.name, category, f"{spec.description} asset")
                produced += 1
        filler = itertools.product(ADJECTIVES, FILLER_NOUNS[category], DETAILS)
        while produced < counts[category]:
            adjective, noun, detail = next(filler)
            emit(
                f"{adjective.title()} {noun.title()}",
                category,
                f"A {adjective} {noun} {detail}",
            )
            produced += 1
    assert len(records) == TOTAL_RECORDS
    return records


def main() -> None:
    default_out = (
        Path(__file__).resolve().parent.parent
        / "src" / "gameforge" / "fixtures" / "corpus_manifest.jsonl"
    )
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, default=default_out)
    args = parser.parse_args()
    lines = [json.dumps(record, sort_keys=True) for record in build_records()]
    args.out.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(lines)} records to {args.out}")


if __name__ == "__main__":
    main()

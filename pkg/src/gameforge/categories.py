"""Asset category taxonomy, version 1.

Mirrors the 18 top-level categories used by the public Sketchfab corpus.
The tuple is ordered and versioned; retrieval indexes record the version
so a future taxonomy change cannot silently reshuffle category buckets.
"""

from __future__ import annotations

TAXONOMY_VERSION = 1

CATEGORIES: tuple[str, ...] = (
    "animals-pets",
    "architecture",
    "art-abstract",
    "cars-vehicles",
    "characters-creatures",
    "cultural-heritage-history",
    "electronics-gadgets",
    "fashion-style",
    "food-drink",
    "furniture-home",
    "music",
    "nature-plants",
    "news-politics",
    "people",
    "places-travel",
    "science-technology",
    "sports-fitness",
    "weapons-military",
)

CATEGORY_SET = frozenset(CATEGORIES)


def is_category(value: str) -> bool:
    return value in CATEGORY_SET

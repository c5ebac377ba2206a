"""Record types shared by object planning and asset retrieval."""

from __future__ import annotations

from dataclasses import dataclass

from gameforge.categories import is_category


@dataclass(frozen=True)
class ObjectAttrs:
    """One scene object as planned from the description."""

    name: str
    category: str
    description: str
    placement: str

    def __post_init__(self):
        if not is_category(self.category):
            raise ValueError(f"object {self.name}: unknown category {self.category!r}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "category": self.category,
            "description": self.description,
            "placement": self.placement,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ObjectAttrs":
        return cls(
            name=data["name"],
            category=data["category"],
            description=data["description"],
            placement=data["placement"],
        )


@dataclass(frozen=True)
class ModelRecord:
    """One 3D asset in the corpus."""

    model_id: str
    name: str
    category: str
    description: str
    uri: str

    def to_dict(self) -> dict:
        return {
            "model_id": self.model_id,
            "name": self.name,
            "category": self.category,
            "description": self.description,
            "uri": self.uri,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModelRecord":
        return cls(
            model_id=data["model_id"],
            name=data["name"],
            category=data["category"],
            description=data["description"],
            uri=data["uri"],
        )

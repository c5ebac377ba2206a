"""Node type registry, catalog version 1.

Each schema declares the node's parameter contract, its input and output
pins, and one or more behaviour classes. Graph validation and execution
are both driven from this table; the authored documentation corpus under
fixtures/docs mirrors it one file per node type.
"""

from __future__ import annotations

from dataclasses import dataclass, field

REGISTRY_VERSION = 1

# behaviour classes
SAMPLER = "sampler"
TRANSFORM = "transform"
PRUNE = "prune"
BOUNDS = "bounds"
EXCLUSION = "exclusion"
SPAWN = "spawn"
DATA = "data"


@dataclass(frozen=True)
class ParamSpec:
    name: str
    kind: str  # number | integer | text
    minimum: float | None = None
    maximum: float | None = None
    default: object | None = None

    @property
    def required(self) -> bool:
        return self.default is None

    def check(self, value: object) -> str | None:
        """Return a diagnostic for a bad value, or None when it fits."""
        if self.kind == "text":
            if not isinstance(value, str):
                return f"{self.name}: expected text"
            return None
        if self.kind == "integer":
            if isinstance(value, bool) or not isinstance(value, int):
                return f"{self.name}: expected integer"
        elif self.kind == "number":
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                return f"{self.name}: expected number"
        else:
            raise AssertionError(f"unknown param kind {self.kind}")
        if self.minimum is not None and value < self.minimum:
            return f"{self.name}: {value} below minimum {self.minimum}"
        if self.maximum is not None and value > self.maximum:
            return f"{self.name}: {value} above maximum {self.maximum}"
        return None


@dataclass(frozen=True)
class NodeSchema:
    node_type: str
    classes: frozenset[str]
    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    params: dict[str, ParamSpec] = field(default_factory=dict)


def _schema(
    node_type: str,
    classes: set[str],
    inputs: tuple[str, ...],
    outputs: tuple[str, ...],
    *params: ParamSpec,
) -> NodeSchema:
    return NodeSchema(
        node_type=node_type,
        classes=frozenset(classes),
        inputs=inputs,
        outputs=outputs,
        params={p.name: p for p in params},
    )


REGISTRY: dict[str, NodeSchema] = {
    s.node_type: s
    for s in (
        _schema(
            "SurfaceSampler",
            {SAMPLER},
            (),
            ("Out",),
            ParamSpec("points_per_squared_meter", "number", 0.0001, 10.0),
            ParamSpec("seed", "integer", 0, 2**31 - 1, default=0),
        ),
        _schema(
            "TransformPoints",
            {TRANSFORM},
            ("In",),
            ("Out",),
            ParamSpec("offset_z", "number", -1000.0, 1000.0, default=0.0),
            ParamSpec("rotation_max", "number", 0.0, 360.0, default=360.0),
            ParamSpec("scale_min", "number", 0.01, 100.0, default=0.8),
            ParamSpec("scale_max", "number", 0.01, 100.0, default=1.2),
        ),
        _schema(
            "SelfPruning",
            {PRUNE},
            ("In",),
            ("Out",),
            ParamSpec("radius", "number", 0.0, 10000.0),
        ),
        _schema(
            "BoundsModifier",
            {BOUNDS},
            ("In",),
            ("Out",),
            ParamSpec("margin", "number", 0.0, 5000.0, default=0.0),
        ),
        _schema(
            "Difference",
            {EXCLUSION},
            ("Source", "Exclusions"),
            ("Out",),
            ParamSpec("padding", "number", 0.0, 2000.0, default=0.0),
        ),
        _schema(
            "GetActorData",
            {DATA},
            (),
            ("Out",),
            ParamSpec("actor_filter", "text", default="large"),
            ParamSpec("half_extent", "number", 1.0, 5000.0, default=150.0),
        ),
        _schema(
            "StaticMeshSpawner",
            {SPAWN},
            ("In",),
            (),
            ParamSpec("mesh", "text"),
        ),
    )
}

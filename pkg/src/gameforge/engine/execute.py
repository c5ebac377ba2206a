"""Deterministic graph execution: points in, scene layout out.

World positions are in centimetre-scale units; sampler densities are per
squared metre (100 units to the metre). Sampling lays a near-square grid
of exactly floor(density * area) cells and jitters each point by up to
0.4 cell, so instance counts follow the closed-form grid count and every
jittered point stays inside its own cell.
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass

from gameforge.engine.registry import (
    BOUNDS,
    DATA,
    EXCLUSION,
    PRUNE,
    REGISTRY,
    SAMPLER,
    SPAWN,
    TRANSFORM,
)
from gameforge.engine.validate import validate_graph
from gameforge.errors import DegenerateBounds, InvalidGraph
from gameforge.pcg.graph import NodeAttrs, NodeChain, PcgGraph
from gameforge.pcg.planner import LARGE_OBJECT

UNITS_PER_METER = 100.0
JITTER_FRACTION = 0.4


@dataclass(frozen=True)
class Box:
    min_corner: tuple[float, float, float]
    max_corner: tuple[float, float, float]

    @property
    def width(self) -> float:
        return self.max_corner[0] - self.min_corner[0]

    @property
    def depth(self) -> float:
        return self.max_corner[1] - self.min_corner[1]

    @property
    def area_xy(self) -> float:
        return self.width * self.depth

    def shrink(self, margin: float) -> "Box":
        return Box(
            (
                self.min_corner[0] + margin,
                self.min_corner[1] + margin,
                self.min_corner[2],
            ),
            (
                self.max_corner[0] - margin,
                self.max_corner[1] - margin,
                self.max_corner[2],
            ),
        )

    def expand_xy(self, pad: float) -> "Box":
        return self.shrink(-pad)

    def contains(self, p: tuple[float, float, float]) -> bool:
        return all(
            self.min_corner[i] <= p[i] <= self.max_corner[i] for i in range(3)
        )

    def contains_xy_strict(self, p: tuple[float, float, float]) -> bool:
        return (
            self.min_corner[0] < p[0] < self.max_corner[0]
            and self.min_corner[1] < p[1] < self.max_corner[1]
        )

    def to_dict(self) -> dict:
        return {"min": list(self.min_corner), "max": list(self.max_corner)}

    @classmethod
    def from_dict(cls, data: dict) -> "Box":
        return cls(tuple(data["min"]), tuple(data["max"]))


DEFAULT_BOUNDS = Box((-2500.0, -2500.0, 0.0), (2500.0, 2500.0, 1000.0))


@dataclass(frozen=True)
class PointSample:
    position: tuple[float, float, float]
    rotation: float  # yaw, degrees
    scale: float
    seed: int


@dataclass(frozen=True)
class PointSet:
    points: tuple[PointSample, ...]
    bounds: Box


@dataclass(frozen=True)
class Instance:
    instance_id: str
    model_id: str
    object_name: str
    position: tuple[float, float, float]
    rotation: float
    scale: float

    def to_dict(self) -> dict:
        return {
            "instance_id": self.instance_id,
            "model_id": self.model_id,
            "object_name": self.object_name,
            "position": list(self.position),
            "rotation": self.rotation,
            "scale": self.scale,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Instance":
        return cls(
            instance_id=data["instance_id"],
            model_id=data["model_id"],
            object_name=data["object_name"],
            position=tuple(data["position"]),
            rotation=data["rotation"],
            scale=data["scale"],
        )


@dataclass(frozen=True)
class SceneLayout:
    instances: tuple[Instance, ...]
    bounds: Box

    def to_dict(self) -> dict:
        return {
            "bounds": self.bounds.to_dict(),
            "instances": [i.to_dict() for i in self.instances],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SceneLayout":
        return cls(
            instances=tuple(Instance.from_dict(i) for i in data["instances"]),
            bounds=Box.from_dict(data["bounds"]),
        )


def grid_count(density: float, bounds: Box) -> int:
    """Closed-form sampler count: floor(density * area in squared metres)."""
    area_m2 = bounds.area_xy / (UNITS_PER_METER * UNITS_PER_METER)
    return int(math.floor(density * area_m2))


def _node_rng(seed: int, node_uid: str) -> random.Random:
    digest = hashlib.blake2b(
        f"{seed}|{node_uid}".encode("utf-8"), digest_size=8
    ).digest()
    return random.Random(int.from_bytes(digest, "little"))


def execute_graph(
    graph: PcgGraph, seed: int, bounds: Box = DEFAULT_BOUNDS
) -> SceneLayout:
    """Run a validated graph deterministically.

    LargeObject chains run first so their placements define the exclusion
    volumes available to scatter chains; the merged instance list is then
    ordered by the chain's position in the graph and by point index.
    """
    report = validate_graph(graph)
    if not report.all_valid:
        bad = [n for n in report.nodes if n.diagnostics]
        raise InvalidGraph(
            f"graph failed validation: {bad[0].node_uid}: {bad[0].diagnostics[0]}"
        )
    if bounds.area_xy <= 0:
        raise DegenerateBounds(f"world bounds enclose no area: {bounds}")

    ordered = sorted(
        enumerate(graph.chains),
        key=lambda pair: (pair[1].pattern != LARGE_OBJECT, pair[0]),
    )
    large_instances: list[Instance] = []
    per_chain: dict[int, list[Instance]] = {}
    for chain_index, chain in ordered:
        instances = _execute_chain(graph, chain, seed, bounds, large_instances)
        per_chain[chain_index] = instances
        if chain.pattern == LARGE_OBJECT:
            large_instances.extend(instances)

    merged = tuple(
        instance
        for chain_index in sorted(per_chain)
        for instance in per_chain[chain_index]
    )
    return SceneLayout(instances=merged, bounds=bounds)


def _node_attrs(graph: PcgGraph, node_uid: str) -> NodeAttrs:
    attrs = graph.attrs.get(node_uid)
    return attrs if attrs is not None else NodeAttrs(node_uid=node_uid)


def _chain_topo_order(graph: PcgGraph, chain: NodeChain) -> list[int]:
    position = {n.node_uid: i for i, n in enumerate(chain.nodes)}
    incoming: dict[int, set[int]] = {i: set() for i in range(len(chain.nodes))}
    for node in chain.nodes:
        for conn in _node_attrs(graph, node.node_uid).connections:
            if conn.from_uid in position:
                incoming[position[conn.to_uid]].add(position[conn.from_uid])
    order: list[int] = []
    ready = sorted(i for i, deps in incoming.items() if not deps)
    placed: set[int] = set()
    while ready:
        i = ready.pop(0)
        order.append(i)
        placed.add(i)
        newly = sorted(
            j
            for j, deps in incoming.items()
            if j not in placed and j not in ready and deps <= placed
        )
        ready = sorted(ready + newly)
    if len(order) != len(chain.nodes):
        raise InvalidGraph(f"chain {chain.object_name} wiring is cyclic")
    return order


def _execute_chain(
    graph: PcgGraph,
    chain: NodeChain,
    seed: int,
    bounds: Box,
    large_instances: list[Instance],
) -> list[Instance]:
    outputs: dict[tuple[str, str], object] = {}
    instances: list[Instance] = []
    for i in _chain_topo_order(graph, chain):
        node = chain.nodes[i]
        schema = REGISTRY[node.node_type]
        attrs = _node_attrs(graph, node.node_uid)
        params = {
            name: attrs.parameters.get(name, spec.default)
            for name, spec in schema.params.items()
        }
        inputs = {
            conn.to_pin: outputs.get((conn.from_uid, conn.from_pin))
            for conn in attrs.connections
        }
        rng = _node_rng(seed, node.node_uid)

        if SAMPLER in schema.classes:
            result = _sample(params, bounds, rng)
        elif TRANSFORM in schema.classes:
            result = _transform(_pointset(inputs.get("In"), bounds), params, rng)
        elif PRUNE in schema.classes:
            result = _prune(_pointset(inputs.get("In"), bounds), params)
        elif BOUNDS in schema.classes:
            result = _bound(_pointset(inputs.get("In"), bounds), params)
        elif EXCLUSION in schema.classes:
            result = _difference(
                _pointset(inputs.get("Source"), bounds),
                inputs.get("Exclusions") or [],
                params,
            )
        elif DATA in schema.classes:
            result = _actor_volumes(params, large_instances, bounds)
        elif SPAWN in schema.classes:
            pointset = _pointset(inputs.get("In"), bounds)
            for point in pointset.points:
                instances.append(
                    Instance(
                        instance_id=f"{chain.object_name}-{len(instances):04d}",
                        model_id=str(params["mesh"]),
                        object_name=chain.object_name,
                        position=point.position,
                        rotation=point.rotation,
                        scale=point.scale,
                    )
                )
            result = None
        else:
            raise InvalidGraph(f"no executor for {node.node_type}")

        for pin in schema.outputs:
            outputs[(node.node_uid, pin)] = result
    return instances


def _pointset(value: object, bounds: Box) -> PointSet:
    if isinstance(value, PointSet):
        return value
    return PointSet(points=(), bounds=bounds)


def _sample(params: dict, bounds: Box, rng: random.Random) -> PointSet:
    density = float(params["points_per_squared_meter"])
    count = grid_count(density, bounds)
    if count <= 0:
        return PointSet(points=(), bounds=bounds)
    width, depth = bounds.width, bounds.depth
    columns = max(1, round(math.sqrt(count * width / depth)))
    rows = math.ceil(count / columns)
    cell_x = width / columns
    cell_y = depth / rows
    points = []
    for i in range(count):
        column, row = i % columns, i // columns
        x = bounds.min_corner[0] + (column + 0.5) * cell_x
        y = bounds.min_corner[1] + (row + 0.5) * cell_y
        x += rng.uniform(-JITTER_FRACTION, JITTER_FRACTION) * cell_x
        y += rng.uniform(-JITTER_FRACTION, JITTER_FRACTION) * cell_y
        points.append(
            PointSample(
                position=(x, y, bounds.min_corner[2]),
                rotation=0.0,
                scale=1.0,
                seed=rng.getrandbits(31),
            )
        )
    return PointSet(points=tuple(points), bounds=bounds)


def _transform(pointset: PointSet, params: dict, rng: random.Random) -> PointSet:
    points = []
    for point in pointset.points:
        rotation = rng.uniform(0.0, float(params["rotation_max"]))
        scale = rng.uniform(float(params["scale_min"]), float(params["scale_max"]))
        x, y, z = point.position
        points.append(
            PointSample(
                position=(x, y, z + float(params["offset_z"])),
                rotation=rotation,
                scale=scale,
                seed=point.seed,
            )
        )
    return PointSet(points=tuple(points), bounds=pointset.bounds)


def _prune(pointset: PointSet, params: dict) -> PointSet:
    radius = float(params["radius"])
    kept: list[PointSample] = []
    for point in pointset.points:
        x, y = point.position[0], point.position[1]
        if all(
            math.hypot(x - k.position[0], y - k.position[1]) >= radius
            for k in kept
        ):
            kept.append(point)
    return PointSet(points=tuple(kept), bounds=pointset.bounds)


def _bound(pointset: PointSet, params: dict) -> PointSet:
    box = pointset.bounds.shrink(float(params["margin"]))
    kept = tuple(p for p in pointset.points if box.contains(p.position))
    return PointSet(points=kept, bounds=pointset.bounds)


def _difference(pointset: PointSet, volumes: list[Box], params: dict) -> PointSet:
    padded = [box.expand_xy(float(params["padding"])) for box in volumes]
    kept = tuple(
        p
        for p in pointset.points
        if not any(box.contains_xy_strict(p.position) for box in padded)
    )
    return PointSet(points=kept, bounds=pointset.bounds)


def _actor_volumes(
    params: dict, large_instances: list[Instance], bounds: Box
) -> list[Box]:
    half = float(params["half_extent"])
    name_filter = str(params["actor_filter"])
    selected = [
        inst
        for inst in large_instances
        if name_filter == "large" or inst.object_name == name_filter
    ]
    return [
        Box(
            (inst.position[0] - half, inst.position[1] - half, bounds.min_corner[2]),
            (inst.position[0] + half, inst.position[1] + half, bounds.max_corner[2]),
        )
        for inst in selected
    ]

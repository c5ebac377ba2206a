"""Runtime world: player state, command execution, logs, and snapshots."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from gameforge.engine.execute import Box, Instance, SceneLayout
from gameforge.errors import (
    FlowError,
    MalformedInput,
    ObjectNotFound,
    OutOfRange,
    UnboundInteraction,
)
from gameforge.forge.flow import ModuleRegistry, execute_flow
from gameforge.forge.ir import InteractionIR

INTERACTION_RADIUS = 200.0
VISIBILITY_RADIUS = 3000.0


@dataclass(frozen=True)
class LogEntry:
    tick: int
    source: str
    message: str

    def to_dict(self) -> dict:
        return {"tick": self.tick, "source": self.source, "message": self.message}


@dataclass(frozen=True)
class Snapshot:
    tick: int
    player_position: tuple[float, float, float]
    visible: tuple[tuple[str, str, float], ...]  # (instance_id, object, distance)
    flags: dict[str, bool]

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "player_position": list(self.player_position),
            "visible": [
                {"instance_id": i, "object_name": o, "distance": round(d, 3)}
                for i, o, d in self.visible
            ],
            "flags": dict(sorted(self.flags.items())),
        }


@dataclass
class RuntimeWorld:
    layout: SceneLayout
    interactions: dict[str, dict[str, InteractionIR]]
    registry: ModuleRegistry
    interaction_radius: float = INTERACTION_RADIUS
    visibility_radius: float = VISIBILITY_RADIUS
    player_position: tuple[float, float, float] = (0.0, 0.0, 0.0)
    inventory: list[str] = field(default_factory=list)
    flags: dict[str, bool] = field(default_factory=dict)
    log: list[LogEntry] = field(default_factory=list)
    _tick: int = 0

    def append_log(self, source: str, message: str) -> None:
        self._tick += 1
        self.log.append(LogEntry(tick=self._tick, source=source, message=message))

    def snapshot(self) -> Snapshot:
        px, py, pz = self.player_position
        visible = sorted(
            (
                (inst.instance_id, inst.object_name, distance)
                for inst in self.layout.instances
                if (distance := _distance_xy(self.player_position, inst.position))
                <= self.visibility_radius
            ),
            key=lambda row: (row[2], row[0]),
        )
        return Snapshot(
            tick=self._tick,
            player_position=(px, py, pz),
            visible=tuple(visible),
            flags=dict(self.flags),
        )


def _distance_xy(a: tuple[float, float, float], b: tuple[float, float, float]) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _project_into(bounds: Box, point: tuple[float, float, float]) -> tuple[float, float, float]:
    return (
        min(max(point[0], bounds.min_corner[0]), bounds.max_corner[0]),
        min(max(point[1], bounds.min_corner[1]), bounds.max_corner[1]),
        min(max(point[2], bounds.min_corner[2]), bounds.max_corner[2]),
    )


def spawn_world(
    layout: SceneLayout,
    interactions: list[InteractionIR],
    registry: ModuleRegistry,
    interaction_radius: float = INTERACTION_RADIUS,
    visibility_radius: float = VISIBILITY_RADIUS,
) -> RuntimeWorld:
    """Stand the world up with the player projected into bounds at origin.

    Every interaction must target an object with at least one instance in
    the layout; a decorative world with no interactions is fine.
    """
    spawned = {inst.object_name for inst in layout.instances}
    bound: dict[str, dict[str, InteractionIR]] = {}
    for ir in interactions:
        if ir.object_name not in spawned:
            raise UnboundInteraction(
                f"interaction {ir.object_name}:{ir.action} has no instance to bind to"
            )
        bound.setdefault(ir.object_name, {})[ir.action] = ir
    return RuntimeWorld(
        layout=layout,
        interactions=bound,
        registry=registry,
        interaction_radius=interaction_radius,
        visibility_radius=visibility_radius,
        player_position=_project_into(layout.bounds, (0.0, 0.0, 0.0)),
    )


def _nearest_instance(world: RuntimeWorld, object_name: str) -> tuple[Instance, float]:
    candidates = [
        inst for inst in world.layout.instances if inst.object_name == object_name
    ]
    if not candidates:
        raise ObjectNotFound(f"no instance of {object_name} in the layout")
    best = min(
        candidates,
        key=lambda inst: (_distance_xy(world.player_position, inst.position), inst.instance_id),
    )
    return best, _distance_xy(world.player_position, best.position)


def exec_command(
    world: RuntimeWorld, kind: str, object_name: str, action: str = ""
) -> Snapshot:
    """Execute one test command; the layout itself is never mutated.

    MoveTo places the player adjacent to the nearest instance of the
    object. Interact requires the player within the interaction radius and
    runs the interaction flow bound to (object, action).
    """
    if kind == "MoveTo":
        target, distance = _nearest_instance(world, object_name)
        offset = world.interaction_radius / 2.0
        direction = (
            world.player_position[0] - target.position[0],
            world.player_position[1] - target.position[1],
        )
        norm = math.hypot(*direction)
        if norm < 1e-9:
            direction, norm = (1.0, 0.0), 1.0
        world.player_position = _project_into(
            world.layout.bounds,
            (
                target.position[0] + direction[0] / norm * offset,
                target.position[1] + direction[1] / norm * offset,
                target.position[2],
            ),
        )
        world.append_log(
            "player",
            f"moved to {target.instance_id} (travelled {distance:.1f})",
        )
        return world.snapshot()
    if kind == "Interact":
        target, distance = _nearest_instance(world, object_name)
        if distance > world.interaction_radius:
            raise OutOfRange(
                f"{object_name} is {distance:.1f} away; interaction radius is "
                f"{world.interaction_radius:.1f}"
            )
        by_action = world.interactions.get(object_name, {})
        ir = by_action.get(action)
        if ir is None:
            raise FlowError(0, f"no interaction bound for {object_name}:{action}")
        execute_flow(ir, world, world.registry)
        return world.snapshot()
    raise MalformedInput(f"unknown command kind {kind}")

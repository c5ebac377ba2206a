from gameforge.engine.execute import Box, PointSet, SceneLayout, execute_graph
from gameforge.engine.registry import REGISTRY, NodeSchema, ParamSpec
from gameforge.engine.runtime import RuntimeWorld, Snapshot, exec_command, spawn_world
from gameforge.engine.validate import NodeVerdict, ValidationReport, validate_graph

__all__ = [
    "Box",
    "NodeSchema",
    "NodeVerdict",
    "ParamSpec",
    "PointSet",
    "REGISTRY",
    "RuntimeWorld",
    "SceneLayout",
    "Snapshot",
    "ValidationReport",
    "exec_command",
    "execute_graph",
    "spawn_world",
    "validate_graph",
]

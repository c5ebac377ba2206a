"""Graph validation against the node registry."""

from __future__ import annotations

from dataclasses import dataclass, field

from gameforge.engine.registry import REGISTRY
from gameforge.pcg.graph import NodeAttrs, PcgGraph


@dataclass(frozen=True)
class NodeVerdict:
    node_uid: str
    node_type: str
    type_known: bool
    params_valid: bool
    pins_valid: bool
    diagnostics: tuple[str, ...] = ()


@dataclass
class ValidationReport:
    nodes: list[NodeVerdict] = field(default_factory=list)

    @property
    def all_valid(self) -> bool:
        return all(
            n.type_known and n.params_valid and n.pins_valid for n in self.nodes
        )

    def counts(self) -> dict[str, int]:
        return {
            "nodes": len(self.nodes),
            "type_known": sum(n.type_known for n in self.nodes),
            "params_valid": sum(n.params_valid for n in self.nodes),
            "pins_valid": sum(n.pins_valid for n in self.nodes),
        }

    def to_dict(self) -> dict:
        return {
            "nodes": [
                {
                    "uid": n.node_uid,
                    "type": n.node_type,
                    "type_known": n.type_known,
                    "params_valid": n.params_valid,
                    "pins_valid": n.pins_valid,
                    "diagnostics": list(n.diagnostics),
                }
                for n in self.nodes
            ]
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ValidationReport":
        return cls(
            nodes=[
                NodeVerdict(
                    node_uid=n["uid"],
                    node_type=n["type"],
                    type_known=n["type_known"],
                    params_valid=n["params_valid"],
                    pins_valid=n["pins_valid"],
                    diagnostics=tuple(n["diagnostics"]),
                )
                for n in data["nodes"]
            ]
        )


_EMPTY = NodeAttrs(node_uid="")


def validate_graph(graph: PcgGraph) -> ValidationReport:
    """Check every node's type, parameters, and pin wiring.

    A node with an unknown type cannot violate a parameter schema, so its
    params verdict stays vacuously true; connections touching it do fail,
    because its pins cannot be verified. An input pin driven by two
    connections invalidates every node declaring a connection into it.
    """
    specs = graph.node_specs()

    drive_counts: dict[tuple[str, str], int] = {}
    for attrs in graph.attrs.values():
        for conn in attrs.connections:
            key = (conn.to_uid, conn.to_pin)
            drive_counts[key] = drive_counts.get(key, 0) + 1

    report = ValidationReport()
    for uid, spec in specs.items():
        attrs = graph.attrs.get(uid, _EMPTY)
        diagnostics: list[str] = []
        schema = REGISTRY.get(spec.node_type)
        type_known = schema is not None
        if not type_known:
            diagnostics.append(f"unknown node type {spec.node_type}")

        params_valid = True
        if schema is not None:
            for name, value in attrs.parameters.items():
                if name not in schema.params:
                    params_valid = False
                    diagnostics.append(
                        f"parameter {name} is not in the {spec.node_type} schema"
                    )
                    continue
                problem = schema.params[name].check(value)
                if problem:
                    params_valid = False
                    diagnostics.append(problem)
            for name, param in schema.params.items():
                if param.required and name not in attrs.parameters:
                    params_valid = False
                    diagnostics.append(f"required parameter {name} missing")

        pins_valid = True
        for conn in attrs.connections:
            for problem in _connection_problems(conn, specs):
                pins_valid = False
                diagnostics.append(problem)
            if drive_counts.get((conn.to_uid, conn.to_pin), 0) > 1:
                pins_valid = False
                diagnostics.append(
                    f"input pin {conn.to_uid}.{conn.to_pin} driven more than once"
                )

        report.nodes.append(
            NodeVerdict(
                node_uid=uid,
                node_type=spec.node_type,
                type_known=type_known,
                params_valid=params_valid,
                pins_valid=pins_valid,
                diagnostics=tuple(diagnostics),
            )
        )
    return report


def _connection_problems(conn, specs) -> list[str]:
    problems: list[str] = []
    source = specs.get(conn.from_uid)
    target = specs.get(conn.to_uid)
    if source is None:
        problems.append(f"connection source {conn.from_uid} not in graph")
    else:
        schema = REGISTRY.get(source.node_type)
        if schema is None or conn.from_pin not in schema.outputs:
            problems.append(
                f"no output pin {conn.from_pin} on {conn.from_uid} ({source.node_type})"
            )
    if target is None:
        problems.append(f"connection target {conn.to_uid} not in graph")
    else:
        schema = REGISTRY.get(target.node_type)
        if schema is None or conn.to_pin not in schema.inputs:
            problems.append(
                f"no input pin {conn.to_pin} on {conn.to_uid} ({target.node_type})"
            )
    return problems

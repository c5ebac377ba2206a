"""Scene graph data model and its on-disk JSON form.

Chains hold the per-object node sequences with editor coordinates; attrs
hold parameters and incoming pin connections per node; bindings map each
spawner node to the asset model it places. Serialization is deterministic
(sorted attrs and bindings) and parse(serialize(g)) reproduces g exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gameforge.errors import ParseError

# editor layout rule: one row per chain, fixed pitch
ROW_PITCH = 200
COLUMN_PITCH = 300


@dataclass(frozen=True)
class PcgNodeSpec:
    node_uid: str
    node_type: str
    editor_x: int
    editor_y: int


@dataclass(frozen=True)
class Connection:
    from_uid: str
    from_pin: str
    to_uid: str
    to_pin: str


@dataclass(frozen=True)
class NodeAttrs:
    node_uid: str
    parameters: dict[str, object] = field(default_factory=dict)
    connections: tuple[Connection, ...] = ()

    def __eq__(self, other):  # dict field defeats generated eq on frozen=True
        if not isinstance(other, NodeAttrs):
            return NotImplemented
        return (
            self.node_uid == other.node_uid
            and self.parameters == other.parameters
            and self.connections == other.connections
        )

    def __hash__(self):
        return hash(self.node_uid)


@dataclass(frozen=True)
class NodeChain:
    object_name: str
    pattern: str
    nodes: tuple[PcgNodeSpec, ...]


@dataclass
class PcgGraph:
    chains: tuple[NodeChain, ...]
    attrs: dict[str, NodeAttrs]
    bindings: dict[str, str]  # spawner node_uid -> model_id

    def node_specs(self) -> dict[str, PcgNodeSpec]:
        return {n.node_uid: n for chain in self.chains for n in chain.nodes}

    def __eq__(self, other):
        if not isinstance(other, PcgGraph):
            return NotImplemented
        return (
            self.chains == other.chains
            and self.attrs == other.attrs
            and self.bindings == other.bindings
        )


def serialize_graph(graph: PcgGraph) -> dict:
    return {
        "chains": [
            {
                "object": chain.object_name,
                "pattern": chain.pattern,
                "nodes": [
                    {
                        "uid": n.node_uid,
                        "type": n.node_type,
                        "x": n.editor_x,
                        "y": n.editor_y,
                    }
                    for n in chain.nodes
                ],
            }
            for chain in graph.chains
        ],
        "attrs": [
            {
                "uid": attrs.node_uid,
                "parameters": attrs.parameters,
                "connections": [
                    [c.from_uid, c.from_pin, c.to_uid, c.to_pin]
                    for c in attrs.connections
                ],
            }
            for _, attrs in sorted(graph.attrs.items())
        ],
        "bindings": dict(sorted(graph.bindings.items())),
    }


def parse_graph(data: dict) -> PcgGraph:
    try:
        chains = tuple(
            NodeChain(
                object_name=chain["object"],
                pattern=chain["pattern"],
                nodes=tuple(
                    PcgNodeSpec(
                        node_uid=n["uid"],
                        node_type=n["type"],
                        editor_x=n["x"],
                        editor_y=n["y"],
                    )
                    for n in chain["nodes"]
                ),
            )
            for chain in data["chains"]
        )
        attrs = {
            entry["uid"]: NodeAttrs(
                node_uid=entry["uid"],
                parameters=dict(entry["parameters"]),
                connections=tuple(
                    Connection(*conn) for conn in entry["connections"]
                ),
            )
            for entry in data["attrs"]
        }
        bindings = dict(data["bindings"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph document: {exc!r}") from exc
    return PcgGraph(chains=chains, attrs=attrs, bindings=bindings)

"""Scene-graph planning: pattern choice, chain planning, node specification."""

from __future__ import annotations

import json
import logging

from gameforge.engine.registry import EXCLUSION, REGISTRY, SPAWN, NodeSchema
from gameforge.errors import (
    DanglingAttrs,
    GameForgeError,
    MalformedInput,
    MalformedOutput,
    SchemaViolation,
    UnboundSpawner,
    UnknownNodeType,
)
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES
from gameforge.pcg.docs import DocChunk
from gameforge.pcg.graph import (
    COLUMN_PITCH,
    ROW_PITCH,
    Connection,
    NodeAttrs,
    NodeChain,
    PcgGraph,
    PcgNodeSpec,
)
from gameforge.retrieval.types import ObjectAttrs

log = logging.getLogger(__name__)

LARGE_OBJECT = "LargeObject"
SMALL_SCATTER = "SmallScatter"

SKELETONS: dict[str, tuple[str, ...]] = {
    LARGE_OBJECT: ("SurfaceSampler", "SelfPruning", "BoundsModifier", "StaticMeshSpawner"),
    SMALL_SCATTER: (
        "SurfaceSampler",
        "GetActorData",
        "Difference",
        "TransformPoints",
        "StaticMeshSpawner",
    ),
}

_GUIDANCE = {
    LARGE_OBJECT: (
        "Follow the LargeObject pattern: sample candidate points, prune them "
        "to a minimum spacing, keep them inside the world bounds, then spawn "
        "the mesh. Canonical chain: {}.\n"
    ),
    SMALL_SCATTER: (
        "Follow the SmallScatter pattern: sample densely, subtract the "
        "volumes occupied by large placements, randomise per-instance "
        "transforms, then spawn the mesh. Canonical chain: {}.\n"
    ),
}

# categories that are landmark placements no matter how the note reads
_ALWAYS_LARGE = {"architecture"}
# categories whose members are usually strewn in quantity
_DEFAULT_SCATTER = {"nature-plants", "animals-pets"}
# categories with no useful prior; ask the backend when one is available
_AMBIGUOUS = {"art-abstract", "news-politics"}

_SCATTER_CUES = (
    "scattered", "scatter", "spread", "sprinkled", "dotted", "strewn",
    "throughout", "clustered", "clusters", "patches", "everywhere", "lining",
)
_SINGULAR_CUES = (
    "single", "centered", "centre", "center", "beside", "corner", "landmark",
    "one ", "middle", "front of",
)


def classify_pattern(obj: ObjectAttrs, gateway: LlmGateway | None = None) -> str:
    """Deterministic rule table; the backend only breaks genuine ties."""
    if obj.category in _ALWAYS_LARGE:
        return LARGE_OBJECT
    placement = obj.placement.lower()
    scatter_hit = any(cue in placement for cue in _SCATTER_CUES)
    singular_hit = any(cue in placement for cue in _SINGULAR_CUES)
    if scatter_hit and not singular_hit:
        return SMALL_SCATTER
    if singular_hit and not scatter_hit:
        return LARGE_OBJECT
    if obj.category in _DEFAULT_SCATTER:
        return SMALL_SCATTER
    if obj.category in _AMBIGUOUS and gateway is not None:
        try:
            payload = gateway.complete_structured(
                TEMPLATES["ClassifyPattern"],
                {"object_json": json.dumps(obj.to_dict(), sort_keys=True)},
            )
            return payload["pattern"]
        except GameForgeError as exc:
            log.info("pattern classifier declined for %s (%s)", obj.name, exc)
    return LARGE_OBJECT


def _chain_problems(pattern: str, node_types: list[str]) -> list[str]:
    problems = []
    unknown = [t for t in node_types if t not in REGISTRY]
    problems.extend(f"unknown node type {t}" for t in unknown)
    known: list[NodeSchema] = [REGISTRY[t] for t in node_types if t in REGISTRY]
    if pattern == LARGE_OBJECT:
        if not node_types or node_types[-1] not in REGISTRY or SPAWN not in REGISTRY[node_types[-1]].classes:
            problems.append("LargeObject chain must end with a spawn-class node")
    elif pattern == SMALL_SCATTER:
        if not any(EXCLUSION in s.classes for s in known):
            problems.append("SmallScatter chain must contain an exclusion-class node")
    return problems


def plan_node_chain(
    obj: ObjectAttrs,
    pattern: str,
    gateway: LlmGateway,
    chain_index: int,
    enforce: bool = True,
) -> NodeChain:
    """Plan the node type sequence for one object and lay it out.

    An off-registry or off-pattern chain is retried once with the registry
    type list appended to the prompt. With enforce=False the first answer
    is accepted verbatim; ablation studies use that to let malformed graphs
    reach validation.
    """
    bindings = {
        "object_json": json.dumps(obj.to_dict(), sort_keys=True),
        "pattern": pattern,
        "pattern_guidance": _GUIDANCE[pattern].format(
            " -> ".join(SKELETONS[pattern])
        ) if enforce else "",
        "registry_hint": "",
    }
    payload = gateway.complete_structured(TEMPLATES["PlanNode"], bindings)
    node_types = list(payload["nodes"])
    if not node_types:
        raise MalformedOutput(f"empty node chain planned for {obj.name}")
    if enforce:
        problems = _chain_problems(pattern, node_types)
        if problems:
            bindings = dict(bindings)
            bindings["registry_hint"] = (
                "Use only these registered node types: "
                + ", ".join(sorted(REGISTRY)) + ".\n"
                + "Previous attempt was rejected: " + "; ".join(problems) + "\n"
            )
            payload = gateway.complete_structured(TEMPLATES["PlanNode"], bindings)
            node_types = list(payload["nodes"])
            problems = _chain_problems(pattern, node_types)
            if problems:
                unknown = [p for p in problems if p.startswith("unknown node type")]
                if unknown:
                    raise UnknownNodeType(f"{obj.name}: " + "; ".join(unknown))
                raise MalformedOutput(f"{obj.name}: " + "; ".join(problems))
    nodes = tuple(
        PcgNodeSpec(
            node_uid=f"{obj.name}.{j:02d}",
            node_type=node_type,
            editor_x=COLUMN_PITCH * j,
            editor_y=ROW_PITCH * chain_index,
        )
        for j, node_type in enumerate(node_types)
    )
    return NodeChain(object_name=obj.name, pattern=pattern, nodes=nodes)


def _chain_context(chain: NodeChain) -> str:
    return json.dumps(
        {
            "object": chain.object_name,
            "pattern": chain.pattern,
            "nodes": [
                {
                    "uid": n.node_uid,
                    "type": n.node_type,
                    "inputs": list(REGISTRY[n.node_type].inputs)
                    if n.node_type in REGISTRY else [],
                    "outputs": list(REGISTRY[n.node_type].outputs)
                    if n.node_type in REGISTRY else [],
                }
                for n in chain.nodes
            ],
        },
        sort_keys=True,
    )


def _attr_problems(node: PcgNodeSpec, chain: NodeChain, attrs: NodeAttrs) -> list[str]:
    problems: list[str] = []
    schema = REGISTRY.get(node.node_type)
    chain_uids = {n.node_uid: n for n in chain.nodes}
    if schema is not None:
        for name, value in attrs.parameters.items():
            if name not in schema.params:
                problems.append(f"parameter {name} is not in the {node.node_type} schema")
                continue
            diagnostic = schema.params[name].check(value)
            if diagnostic:
                problems.append(diagnostic)
        for name, spec in schema.params.items():
            if spec.required and name not in attrs.parameters:
                problems.append(f"required parameter {name} missing")
        for conn in attrs.connections:
            if conn.to_uid != node.node_uid:
                problems.append(f"connection targets {conn.to_uid}, not this node")
            elif conn.to_pin not in schema.inputs:
                problems.append(f"no input pin {conn.to_pin} on {node.node_type}")
            if conn.from_uid not in chain_uids:
                problems.append(f"connection source {conn.from_uid} not in chain")
            else:
                source = REGISTRY.get(chain_uids[conn.from_uid].node_type)
                if source is not None and conn.from_pin not in source.outputs:
                    problems.append(
                        f"no output pin {conn.from_pin} on {source.node_type}"
                    )
    return problems


def specify_node(
    node: PcgNodeSpec,
    chain: NodeChain,
    chunks: list[DocChunk],
    gateway: LlmGateway,
    model_id: str = "",
    strict: bool = True,
) -> NodeAttrs:
    """Fill one node's parameters and incoming connections from the docs.

    Schema violations are retried once with the diagnostics appended; with
    strict=False the response is accepted unchecked.
    """
    bindings = {
        "node_uid": node.node_uid,
        "node_type": node.node_type,
        "object_name": chain.object_name,
        "chain_json": _chain_context(chain),
        "chunks": "\n\n".join(ch.text() for ch in chunks),
        "model_id": model_id,
        "diagnostics": "",
    }
    payload = gateway.complete_structured(TEMPLATES["GenerateNode"], bindings)
    attrs = _parse_attrs(node, payload)
    if not strict:
        return attrs
    problems = _attr_problems(node, chain, attrs)
    if problems:
        bindings = dict(bindings)
        bindings["diagnostics"] = (
            "Previous attempt violated the node schema:\n- "
            + "\n- ".join(problems) + "\n"
        )
        payload = gateway.complete_structured(TEMPLATES["GenerateNode"], bindings)
        attrs = _parse_attrs(node, payload)
        problems = _attr_problems(node, chain, attrs)
        if problems:
            raise SchemaViolation(f"{node.node_uid}: " + "; ".join(problems))
    return attrs


def _parse_attrs(node: PcgNodeSpec, payload: dict) -> NodeAttrs:
    return NodeAttrs(
        node_uid=node.node_uid,
        parameters=dict(payload["parameters"]),
        connections=tuple(
            Connection(
                from_uid=c["from_uid"],
                from_pin=c["from_pin"],
                to_uid=c["to_uid"],
                to_pin=c["to_pin"],
            )
            for c in payload["connections"]
        ),
    )


def assemble_graph(
    chains: list[NodeChain],
    attrs: dict[str, NodeAttrs],
    bindings: dict[str, str],
) -> PcgGraph:
    """Join chains, attrs, and spawner bindings into one validated graph.

    The binding map is authoritative for spawner meshes: the bound model_id
    is written into the spawner's mesh parameter.
    """
    chain_uids: dict[str, PcgNodeSpec] = {}
    coordinates: set[tuple[int, int]] = set()
    for chain in chains:
        for node in chain.nodes:
            if node.node_uid in chain_uids:
                raise MalformedInput(f"duplicate node uid {node.node_uid}")
            chain_uids[node.node_uid] = node
            position = (node.editor_x, node.editor_y)
            if position in coordinates:
                raise MalformedInput(
                    f"editor position {position} reused by {node.node_uid}"
                )
            coordinates.add(position)
    stray = sorted(set(attrs) - set(chain_uids))
    if stray:
        raise DanglingAttrs(f"attrs for nodes absent from chains: {', '.join(stray)}")
    missing = sorted(set(chain_uids) - set(attrs))
    if missing:
        raise DanglingAttrs(f"chain nodes without attrs: {', '.join(missing)}")
    merged = dict(attrs)
    for uid, node in chain_uids.items():
        schema = REGISTRY.get(node.node_type)
        if schema is not None and SPAWN in schema.classes:
            if uid not in bindings:
                raise UnboundSpawner(f"spawner {uid} has no model binding")
            entry = merged[uid]
            merged[uid] = NodeAttrs(
                node_uid=uid,
                parameters={**entry.parameters, "mesh": bindings[uid]},
                connections=entry.connections,
            )
    return PcgGraph(chains=tuple(chains), attrs=merged, bindings=dict(bindings))

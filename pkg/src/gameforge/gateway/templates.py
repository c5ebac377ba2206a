"""Prompt templates for every backend call the pipeline makes.

Placeholders use ``<<name>>`` markers and are substituted in a single pass,
so binding values are inserted verbatim and never re-expanded. Each template
carries the schema its response must satisfy and a version string that is
echoed into evaluation report provenance.
"""

from __future__ import annotations

from dataclasses import dataclass

from gameforge.categories import CATEGORIES
from gameforge.gateway.schema import Field, StructuredSchema


@dataclass(frozen=True)
class PromptTemplate:
    name: str
    body: str
    output_schema: StructuredSchema
    version: str = "1"


def _schema(*fields: Field) -> StructuredSchema:
    return StructuredSchema(fields=tuple(fields))


_CONNECTION = Field(
    "connections",
    "list",
    item=Field(
        "connection",
        "object",
        fields=(
            Field("from_uid", "text"),
            Field("from_pin", "text"),
            Field("to_uid", "text"),
            Field("to_pin", "text"),
        ),
    ),
)

_FLOW = Field(
    "flow",
    "list",
    item=Field(
        "step",
        "object",
        fields=(
            Field("module", "text"),
            Field("method", "text"),
            Field("args", "object", required=False),
        ),
    ),
)

_JUDGE_RUBRIC = (
    "Score strictly on the evidence provided. Use the full 1-10 scale and "
    "respond with JSON only, no commentary."
)

TEMPLATES: dict[str, PromptTemplate] = {}


def _register(name: str, body: str, schema: StructuredSchema) -> None:
    TEMPLATES[name] = PromptTemplate(name=name, body=body, output_schema=schema)


_register(
    "Decompose",
    "You prepare a game build request for downstream agents.\n"
    "Split the description below into the part that describes the static "
    "scene (objects, setting, atmosphere) and the part that describes "
    "gameplay (player actions, goals, interactions).\n"
    "Description:\n<<description>>\n\n"
    'Respond with JSON {"scene": str, "gameplay": str}. If the description '
    "contains no gameplay, omit the gameplay field.",
    _schema(Field("scene", "text"), Field("gameplay", "text", required=False)),
)

_register(
    "GenerateObj",
    "You plan the object inventory for a 3D game scene.\n"
    "Scene description:\n<<scene>>\n\n"
    "List every distinct object the scene needs. For each give a CamelCase "
    "name, one category from this taxonomy:\n<<categories>>\n"
    "a one-sentence visual description suitable for asset search, and a "
    "short placement note (where and how it sits in the scene).\n"
    'Respond with JSON {"objects": [{"name", "category", "description", '
    '"placement"}]}.',
    _schema(
        Field(
            "objects",
            "list",
            item=Field(
                "object",
                "object",
                fields=(
                    Field("name", "text"),
                    Field("category", "enum", choices=CATEGORIES),
                    Field("description", "text"),
                    Field("placement", "text"),
                ),
            ),
        )
    ),
)

_register(
    "Rerank",
    "You pick the best 3D model for a scene object.\n"
    "Object:\n<<object_json>>\n"
    "Candidates (cosine-ranked):\n<<candidates_json>>\n"
    'Respond with JSON {"choice": i} where i is the 0-based index of the '
    "best candidate.",
    _schema(Field("choice", "integer", minimum=0, maximum=999)),
)

_register(
    "ClassifyPattern",
    "Choose the placement pattern for this scene object: LargeObject for "
    "a discrete landmark placed a few times, SmallScatter for small props "
    "distributed in quantity across the ground.\n"
    "Object:\n<<object_json>>\n"
    'Respond with JSON {"pattern": "LargeObject"|"SmallScatter"}.',
    _schema(Field("pattern", "enum", choices=("LargeObject", "SmallScatter"))),
)

_register(
    "PlanNode",
    "You design a procedural-placement node chain for one scene object.\n"
    "Object:\n<<object_json>>\n"
    "Pattern: <<pattern>>\n"
    "<<pattern_guidance>>"
    "<<registry_hint>>"
    'Respond with JSON {"nodes": [node_type, ...]} listing node types in '
    "execution order.",
    _schema(Field("nodes", "list", item=Field("node", "text"))),
)

_register(
    "GenerateNode",
    "You fill in the attributes of one node in a placement graph.\n"
    "Node: uid=<<node_uid>> type=<<node_type>> for object <<object_name>> "
    "(bound model: <<model_id>>).\n"
    "Chain context:\n<<chain_json>>\n"
    "Reference documentation:\n<<chunks>>\n"
    "<<diagnostics>>"
    "Set every documented parameter to a sensible in-range value and wire "
    "the node's input pins from its upstream nodes.\n"
    'Respond with JSON {"parameters": {...}, "connections": [{"from_uid", '
    '"from_pin", "to_uid", "to_pin"}]} where connections list this node\'s '
    "incoming edges.",
    _schema(Field("parameters", "object"), _CONNECTION),
)

_register(
    "PlanCode",
    "You plan the gameplay C++ modules for a game.\n"
    "Gameplay description:\n<<gameplay>>\n\n"
    "Decide which modules are needed. For each give its name, purpose, a "
    "usage note, and the other planned modules it depends on.\n"
    'Respond with JSON {"modules": [{"module_name", "purpose", "usage", '
    '"dependencies"}]}.',
    _schema(
        Field(
            "modules",
            "list",
            item=Field(
                "module",
                "object",
                fields=(
                    Field("module_name", "text"),
                    Field("purpose", "text"),
                    Field("usage", "text"),
                    Field("dependencies", "list", item=Field("dep", "text")),
                ),
            ),
        )
    ),
)

_register(
    "GenerateCode",
    "You write one gameplay module against the engine's module API.\n"
    "Module plan:\n<<module_json>>\n"
    "Already generated dependencies:\n<<modules_context>>\n"
    "Engine constraints:\n<<constraints>>\n"
    "<<diagnostics>>"
    "Respond with JSON {\"module_name\", \"methods\": [{\"name\", \"params\", "
    "\"effects\"}], \"state\": {...}, \"registration\": 0|1, \"includes\": "
    "[...], \"source\": str}. Effects use the engine effect vocabulary; a "
    "dependency call is written calls-dependency:Module.method.",
    _schema(
        Field("module_name", "text"),
        Field(
            "methods",
            "list",
            item=Field(
                "method",
                "object",
                fields=(
                    Field("name", "text"),
                    Field("params", "list", item=Field("param", "text")),
                    Field("effects", "list", item=Field("effect", "text")),
                ),
            ),
        ),
        Field("state", "object", required=False),
        Field("registration", "integer", minimum=0, maximum=1),
        Field("includes", "list", item=Field("include", "text")),
        Field("source", "text"),
    ),
)

_register(
    "PlanInt",
    "You plan the player interactions for a game scene.\n"
    "Gameplay description:\n<<gameplay>>\n"
    "Scene objects:\n<<objects_json>>\n"
    "Available modules:\n<<modules_json>>\n\n"
    "For each object the player acts on, give the interaction: the verb, a "
    "description, which modules it uses, and the ordered flow of module "
    "method calls with argument bindings. Flag any external systems "
    "(combat, navigation) the interaction would touch.\n"
    'Respond with JSON {"interactions": [{"object_name", "action", '
    '"description", "dependencies", "flow", "external"}]}.',
    _schema(
        Field(
            "interactions",
            "list",
            item=Field(
                "interaction",
                "object",
                fields=(
                    Field("object_name", "text"),
                    Field("action", "text"),
                    Field("description", "text"),
                    Field("dependencies", "list", item=Field("dep", "text")),
                    _FLOW,
                    Field("external", "object", required=False),
                ),
            ),
        )
    ),
)

_register(
    "GenerateInt",
    "You write the interaction handler for one scene object.\n"
    "Interaction plan:\n<<interaction_json>>\n"
    "Module exports:\n<<modules_context>>\n"
    "<<diagnostics>>"
    "The flow must call the planned module methods in the planned order.\n"
    'Respond with JSON {"object_name", "action", "flow": [{"module", '
    '"method", "args"}], "source": str}.',
    _schema(
        Field("object_name", "text"),
        Field("action", "text"),
        _FLOW,
        Field("source", "text"),
    ),
)

_register(
    "GenerateTest",
    "You script an automated play-test for a generated game.\n"
    "Interactions:\n<<interactions_json>>\n"
    "Scene objects:\n<<objects_json>>\n\n"
    "Emit a command list that walks to and exercises every interaction; "
    "approach an object with MoveTo before interacting with it. If there "
    "are no interactions, emit MoveTo commands over the key objects.\n"
    'Respond with JSON {"commands": [{"kind": "MoveTo"|"Interact", '
    '"object_name", "action"}]}.',
    _schema(
        Field(
            "commands",
            "list",
            item=Field(
                "command",
                "object",
                fields=(
                    Field("kind", "enum", choices=("MoveTo", "Interact")),
                    Field("object_name", "text"),
                    Field("action", "text", required=False),
                ),
            ),
        )
    ),
)

_register(
    "JudgeGame",
    "You evaluate a generated game (difficulty tier: <<difficulty>>).\n"
    "Evidence (scene graph chains, gameplay code, play-test snapshots):\n"
    "<<evidence_json>>\n\n"
    "Rate scene quality, gameplay quality, and visual quality from 1 to "
    "10. " + _JUDGE_RUBRIC + "\n"
    'Respond with JSON {"scene", "gameplay", "visual"}.',
    _schema(
        Field("scene", "number", minimum=1, maximum=10),
        Field("gameplay", "number", minimum=1, maximum=10),
        Field("visual", "number", minimum=1, maximum=10),
    ),
)

_register(
    "JudgePcg",
    "You evaluate the procedural scene graph of a generated game "
    "(difficulty tier: <<difficulty>>).\n"
    "Evidence (graph, validation summary, build logs):\n<<evidence_json>>\n\n"
    "Rate the graph's structural quality from 1 to 10. " + _JUDGE_RUBRIC + "\n"
    'Respond with JSON {"score"}.',
    _schema(Field("score", "number", minimum=1, maximum=10)),
)

_register(
    "JudgeCode",
    "You evaluate generated gameplay code (difficulty tier: "
    "<<difficulty>>).\n"
    "Evidence (module plans, code, compile report):\n<<evidence_json>>\n\n"
    "Rate module attribute quality (mas), module code quality (mcs), and "
    "interaction code quality (iis) from 1 to 10. " + _JUDGE_RUBRIC + "\n"
    'Respond with JSON {"mas", "mcs", "iis"}.',
    _schema(
        Field("mas", "number", minimum=1, maximum=10),
        Field("mcs", "number", minimum=1, maximum=10),
        Field("iis", "number", minimum=1, maximum=10),
    ),
)

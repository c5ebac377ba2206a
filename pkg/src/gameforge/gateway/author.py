"""Deterministic rule-based author standing in for a live backend.

Paired with RecordingBackend it produces the replay scripts committed
under fixtures/. Every answer is derived from the prompt bindings alone,
so recording the same inputs twice yields byte-identical scripts. The
rules are intentionally simple: a lexicon of scene nouns, a verb table
for gameplay, a fixed module library, and canned judge scores keyed by
difficulty tier.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Mapping

from gameforge.engine.registry import DATA, REGISTRY
from gameforge.errors import GatewayError
from gameforge.gateway.templates import PromptTemplate
from gameforge.pcg.planner import SKELETONS, SMALL_SCATTER


@dataclass(frozen=True)
class FlowCall:
    module: str
    method: str
    args: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NounSpec:
    noun: str
    name: str
    category: str
    description: str
    placement: str
    verb: str = ""  # gameplay verb that activates the interaction
    flow: tuple[FlowCall, ...] = ()
    external: tuple[str, ...] = ()


LEXICON: tuple[NounSpec, ...] = (
    NounSpec(
        "stone well", "StoneWell", "architecture",
        "A weathered round stone well with a wooden crank",
        "a single landmark at the center of the clearing",
    ),
    NounSpec(
        "watchtower", "Watchtower", "architecture",
        "A tall stone watchtower with a conical roof",
        "a landmark at the hilltop",
    ),
    NounSpec(
        "fountain", "MarbleFountain", "architecture",
        "A two-tier carved marble fountain",
        "centered in the courtyard",
    ),
    NounSpec(
        "gate", "IronGate", "architecture",
        "A tall wrought-iron gate with twin doors",
        "a landmark at the north edge",
        verb="unlock",
        flow=(FlowCall("LockModule", "unlock", {"key": "iron-key"}),),
    ),
    NounSpec(
        "market stall", "MarketStall", "architecture",
        "A timber market stall with a striped awning",
        "a single stall in front of the fountain",
    ),
    NounSpec(
        "statue", "AncientStatue", "cultural-heritage-history",
        "A moss-covered ancient stone statue",
        "a single statue in the middle of the plaza",
        verb="inspect",
        flow=(FlowCall("InspectionModule", "inspect", {"target": "statue"}),),
    ),
    NounSpec(
        "merchant", "Merchant", "people",
        "A robed market merchant with a leather satchel",
        "standing in front of the stall",
        verb="talk",
        flow=(FlowCall("DialogueModule", "talk", {"topic": "wares"}),),
    ),
    NounSpec(
        "scarecrow", "Scarecrow", "characters-creatures",
        "A straw-stuffed scarecrow on a wooden pole",
        "one scarecrow in the middle of the field",
        verb="defeat",
        flow=(FlowCall("CombatModule", "engage", {"enemy": "scarecrow"}),),
        external=("combat",),
    ),
    NounSpec(
        "chest", "TreasureChest", "furniture-home",
        "An iron-banded wooden treasure chest",
        "beside the largest landmark",
        verb="open",
        flow=(FlowCall("ChestModule", "open_chest", {"item": "old-coin"}),),
    ),
    NounSpec(
        "bell", "BronzeBell", "music",
        "A patinated bronze temple bell",
        "a single bell beside the gate",
        verb="ring",
        flow=(FlowCall("ChimeModule", "ring"),),
    ),
    NounSpec(
        "notice board", "NoticeBoard", "news-politics",
        "A pinewood notice board covered in parchment notes",
        "a single board in front of the tavern",
        verb="quest",
        flow=(
            FlowCall("DialogueModule", "talk", {"topic": "notices"}),
            FlowCall("QuestModule", "start_quest", {"quest_id": "board-posting"}),
        ),
    ),
    NounSpec(
        "banner", "FestivalBanner", "art-abstract",
        "A bright festival banner strung between poles",
        "hung along the plaza from pole to pole",
    ),
    NounSpec(
        "signpost", "Signpost", "places-travel",
        "A wooden signpost with carved direction arrows",
        "a single signpost beside the crossroads",
        verb="inspect",
        flow=(FlowCall("InspectionModule", "inspect", {"target": "signpost"}),),
    ),
    NounSpec(
        "campfire", "Campfire", "places-travel",
        "A stone-ringed campfire stacked with kindling",
        "a single campfire in the middle of the camp",
        verb="light",
        flow=(FlowCall("SwitchModule", "toggle", {"switch_id": "campfire"}),),
    ),
    NounSpec(
        "lantern", "IronLantern", "electronics-gadgets",
        "A wrought-iron lantern with a glass pane",
        "dotted along the garden paths",
        verb="light",
        flow=(FlowCall("SwitchModule", "toggle", {"switch_id": "lantern"}),),
    ),
    NounSpec(
        "oak tree", "OakTree", "nature-plants",
        "A tall oak tree with a broad leafy crown",
        "clustered in patches across the grounds",
    ),
    NounSpec(
        "pine tree", "PineTree", "nature-plants",
        "A slender pine tree with dense needles",
        "spread along the ridge line",
    ),
    NounSpec(
        "mushroom", "Mushroom", "nature-plants",
        "A small red-capped forest mushroom",
        "scattered throughout the clearing",
        verb="collect",
        flow=(FlowCall("InventoryModule", "add_item", {"item": "mushroom"}),),
    ),
    NounSpec(
        "pumpkin", "Pumpkin", "food-drink",
        "A plump orange field pumpkin",
        "strewn across the field rows",
        verb="collect",
        flow=(FlowCall("InventoryModule", "add_item", {"item": "pumpkin"}),),
    ),
    NounSpec(
        "crystal", "GlowCrystal", "science-technology",
        "A faintly glowing blue crystal shard",
        "sprinkled across the cavern floor",
        verb="collect",
        flow=(FlowCall("InventoryModule", "add_item", {"item": "crystal"}),),
    ),
    NounSpec(
        "flower", "FlowerBed", "nature-plants",
        "A bed of bright mixed wildflowers",
        "patches of flowers everywhere along the lawn",
        verb="tend",
        flow=(FlowCall("CareModule", "tend", {"target": "flowers"}),),
    ),
    NounSpec(
        "bench", "ParkBench", "furniture-home",
        "A slatted wooden park bench with iron legs",
        "lining the gravel walkways",
    ),
    NounSpec(
        "barrel", "OakBarrel", "food-drink",
        "A banded oak storage barrel",
        "clustered by the warehouse wall",
    ),
)

_BY_NAME = {spec.name: spec for spec in LEXICON}

# pattern answers for objects whose category has no deterministic rule
_PATTERN_CALLS = {"FestivalBanner": SMALL_SCATTER}

_FALLBACK_OBJECT = {
    "name": "Boulder",
    "category": "nature-plants",
    "description": "A rounded granite boulder",
    "placement": "a single boulder at the center",
}


@dataclass(frozen=True)
class ModuleSpec:
    name: str
    purpose: str
    usage: str
    deps: tuple[str, ...]
    methods: tuple[dict, ...]
    state: dict


def _method(name: str, params: tuple[str, ...], effects: tuple[str, ...]) -> dict:
    return {"name": name, "params": list(params), "effects": list(effects)}


MODULE_LIBRARY: dict[str, ModuleSpec] = {
    spec.name: spec
    for spec in (
        ModuleSpec(
            "InventoryModule",
            "Tracks the items the player is carrying",
            "Call add_item when the player picks something up",
            (),
            (
                _method("add_item", ("item",), ("mutates-inventory", "emits-log")),
                _method("has_item", ("item",), ("reads-flag", "emits-log")),
            ),
            {"items": []},
        ),
        ModuleSpec(
            "ChestModule",
            "Opens containers and grants their contents",
            "Call open_chest from a container interaction",
            ("InventoryModule",),
            (
                _method(
                    "open_chest",
                    ("item",),
                    (
                        "sets-flag",
                        "calls-dependency:InventoryModule.add_item",
                        "emits-log",
                    ),
                ),
            ),
            {"opened": 0},
        ),
        ModuleSpec(
            "DialogueModule",
            "Runs conversations with characters",
            "Call talk with the topic to start a conversation",
            (),
            (_method("talk", ("topic",), ("sets-flag", "emits-log")),),
            {"lines_spoken": 0},
        ),
        ModuleSpec(
            "InspectionModule",
            "Describes objects the player examines",
            "Call inspect with the examined target",
            (),
            (_method("inspect", ("target",), ("emits-log",)),),
            {},
        ),
        ModuleSpec(
            "SwitchModule",
            "Toggles lightable and switchable scene objects",
            "Call toggle with the switch identifier",
            (),
            (_method("toggle", ("switch_id",), ("sets-flag", "emits-log")),),
            {"lit": 0},
        ),
        ModuleSpec(
            "ChimeModule",
            "Rings bells and chimes",
            "Call ring when the player strikes the bell",
            (),
            (_method("ring", (), ("sets-flag", "emits-log")),),
            {},
        ),
        ModuleSpec(
            "LockModule",
            "Locks and unlocks gated passages",
            "Call unlock with the required key name",
            ("InventoryModule",),
            (
                _method(
                    "unlock",
                    ("key",),
                    (
                        "calls-dependency:InventoryModule.has_item",
                        "sets-flag",
                        "emits-log",
                    ),
                ),
            ),
            {"locked": 1},
        ),
        ModuleSpec(
            "CombatModule",
            "Resolves fights against hostile actors",
            "Call engage with the enemy name",
            (),
            (_method("engage", ("enemy",), ("sets-flag", "emits-log")),),
            {"in_combat": 0},
        ),
        ModuleSpec(
            "CareModule",
            "Handles tending and watering chores",
            "Call tend with the tended target",
            (),
            (_method("tend", ("target",), ("sets-flag", "emits-log")),),
            {},
        ),
        ModuleSpec(
            "QuestModule",
            "Starts and completes quests",
            "Call start_quest when the player accepts a posting",
            ("DialogueModule", "InventoryModule"),
            (
                _method("start_quest", ("quest_id",), ("sets-flag", "emits-log")),
                _method(
                    "complete_quest",
                    ("quest_id",),
                    (
                        "reads-flag",
                        "calls-dependency:InventoryModule.add_item",
                        "sets-flag",
                        "emits-log",
                    ),
                ),
            ),
            {"active": 0},
        ),
    )
}

# scan order matters: first verb hit wins nothing, all hits contribute
VERB_MODULES: tuple[tuple[str, str], ...] = (
    ("collect", "InventoryModule"),
    ("open", "ChestModule"),
    ("talk", "DialogueModule"),
    ("inspect", "InspectionModule"),
    ("light", "SwitchModule"),
    ("ring", "ChimeModule"),
    ("unlock", "LockModule"),
    ("defeat", "CombatModule"),
    ("tend", "CareModule"),
    ("quest", "QuestModule"),
)

_INCLUDES = ["engine/module_api.h", "engine/log.h"]

GAME_SCORES = {
    "Easy": (10.0, 8.30, 7.70),
    "Medium": (9.79, 8.29, 8.14),
    "Hard": (9.94, 8.19, 7.50),
}
CODE_SCORES = {
    "Easy": (8.00, 7.50, 6.70),
    "Medium": (8.07, 7.57, 6.79),
    "Hard": (8.06, 7.56, 6.73),
}
PCG_SCORES = {"Easy": 8.38, "Medium": 8.46, "Hard": 8.40}

_FREEFORM_CHAIN = ("SurfaceSampler", "PointScatterer", "StaticMeshSpawner")

_FIXED_PARAMS: dict[tuple[str, str], object] = {
    ("TransformPoints", "offset_z"): 0.0,
    ("TransformPoints", "rotation_max"): 360.0,
    ("TransformPoints", "scale_min"): 0.8,
    ("TransformPoints", "scale_max"): 1.2,
    ("SelfPruning", "radius"): 600.0,
    ("BoundsModifier", "margin"): 100.0,
    ("Difference", "padding"): 25.0,
    ("GetActorData", "actor_filter"): "large",
    ("GetActorData", "half_extent"): 200.0,
}

# types the author guesses parameters for when the docs say nothing
_HALLUCINATION_PRONE = {"SurfaceSampler", "TransformPoints", "SelfPruning"}

_PARAM_LINE = re.compile(r"(?m)^- ([a-z0-9_]+) \((number|integer|text)")
_SENTENCE = re.compile(r"(?<=[.!?])\s+")


def _verb_present(verb: str, text: str) -> bool:
    return re.search(rf"\b{re.escape(verb)}\b", text.lower()) is not None


class SyntheticAuthor:
    """Answers every prompt template deterministically from its bindings."""

    def __call__(
        self, template: PromptTemplate, prompt: str, bindings: Mapping[str, str]
    ) -> str:
        handler = getattr(self, f"answer_{template.name.lower()}", None)
        if handler is None:
            raise GatewayError(f"author has no rule for template {template.name}")
        return json.dumps(handler(bindings), sort_keys=True)

    # -- decomposition and object planning -----------------------------------

    def answer_decompose(self, bindings: Mapping[str, str]) -> dict:
        description = bindings["description"].strip()
        sentences = [s for s in _SENTENCE.split(description) if s.strip()]
        gameplay = [s for s in sentences if "player" in s.lower()]
        scene = [s for s in sentences if "player" not in s.lower()]
        payload = {"scene": " ".join(scene).strip() or description}
        if gameplay:
            payload["gameplay"] = " ".join(gameplay).strip()
        return payload

    def answer_generateobj(self, bindings: Mapping[str, str]) -> dict:
        scene = bindings["scene"].lower()
        objects = [
            {
                "name": spec.name,
                "category": spec.category,
                "description": spec.description,
                "placement": spec.placement,
            }
            for spec in LEXICON
            if spec.noun in scene
        ]
        return {"objects": objects or [dict(_FALLBACK_OBJECT)]}

    def answer_rerank(self, bindings: Mapping[str, str]) -> dict:
        del bindings
        return {"choice": 0}

    def answer_classifypattern(self, bindings: Mapping[str, str]) -> dict:
        obj = json.loads(bindings["object_json"])
        return {"pattern": _PATTERN_CALLS.get(obj["name"], "LargeObject")}

    # -- scene graph ----------------------------------------------------------

    def answer_plannode(self, bindings: Mapping[str, str]) -> dict:
        guided = bool(
            bindings.get("pattern_guidance", "").strip()
            or bindings.get("registry_hint", "").strip()
        )
        if guided:
            return {"nodes": list(SKELETONS[bindings["pattern"]])}
        return {"nodes": list(_FREEFORM_CHAIN)}

    def answer_generatenode(self, bindings: Mapping[str, str]) -> dict:
        node_type = bindings["node_type"]
        chain = json.loads(bindings["chain_json"])
        documented = {
            name for name, _ in _PARAM_LINE.findall(bindings.get("chunks", ""))
        }
        parameters: dict[str, object] = {}
        for name in sorted(documented):
            value = self._param_value(node_type, name, chain["pattern"], bindings)
            if value is not None:
                parameters[name] = value
        if not documented and node_type in _HALLUCINATION_PRONE:
            parameters = {"intensity": 1.0}
        return {
            "parameters": parameters,
            "connections": self._wire(chain, bindings["node_uid"]),
        }

    def _param_value(
        self, node_type: str, name: str, pattern: str, bindings: Mapping[str, str]
    ) -> object | None:
        if (node_type, name) == ("SurfaceSampler", "points_per_squared_meter"):
            return 0.02 if pattern == SMALL_SCATTER else 0.0004
        if (node_type, name) == ("SurfaceSampler", "seed"):
            # Placement randomness comes from the run seed at execution time,
            # so the node-level seed stays at its documented default.
            return 0
        if (node_type, name) == ("StaticMeshSpawner", "mesh"):
            return bindings.get("model_id") or "missing-mesh"
        return _FIXED_PARAMS.get((node_type, name))

    @staticmethod
    def _row_pins(row: dict) -> tuple[tuple[str, ...], tuple[str, ...], bool]:
        schema = REGISTRY.get(row["type"])
        if schema is None:
            return ("In",), ("Out",), False
        return schema.inputs, schema.outputs, DATA in schema.classes

    def _wire(self, chain: dict, target_uid: str) -> list[dict]:
        stream: tuple[str, str] | None = None
        data_src: tuple[str, str] | None = None
        target: dict | None = None
        for row in chain["nodes"]:
            if row["uid"] == target_uid:
                target = row
                break
            ins, outs, is_data = self._row_pins(row)
            if is_data:
                if outs:
                    data_src = (row["uid"], outs[0])
                continue
            if outs:
                stream = (row["uid"], outs[0])
        if target is None:
            return []
        ins, _, _ = self._row_pins(target)
        connections: list[dict] = []

        def _edge(src: tuple[str, str], pin: str) -> dict:
            return {
                "from_uid": src[0],
                "from_pin": src[1],
                "to_uid": target_uid,
                "to_pin": pin,
            }

        if tuple(ins) == ("Source", "Exclusions"):
            if stream is not None:
                connections.append(_edge(stream, "Source"))
            if data_src is not None:
                connections.append(_edge(data_src, "Exclusions"))
        elif ins and stream is not None:
            connections.append(_edge(stream, ins[0]))
        return connections

    # -- gameplay code --------------------------------------------------------

    def _active_modules(self, gameplay: str) -> set[str]:
        chosen: set[str] = set()
        for verb, module in VERB_MODULES:
            if _verb_present(verb, gameplay):
                chosen.add(module)
        closure = set(chosen)
        frontier = list(chosen)
        while frontier:
            for dep in MODULE_LIBRARY[frontier.pop()].deps:
                if dep not in closure:
                    closure.add(dep)
                    frontier.append(dep)
        return closure

    def answer_plancode(self, bindings: Mapping[str, str]) -> dict:
        modules = [
            {
                "module_name": name,
                "purpose": MODULE_LIBRARY[name].purpose,
                "usage": MODULE_LIBRARY[name].usage,
                "dependencies": sorted(MODULE_LIBRARY[name].deps),
            }
            for name in sorted(self._active_modules(bindings["gameplay"]))
        ]
        return {"modules": modules}

    def answer_generatecode(self, bindings: Mapping[str, str]) -> dict:
        name = json.loads(bindings["module_json"])["module_name"]
        spec = MODULE_LIBRARY.get(name)
        if spec is None:
            methods = [_method("update", (), ("emits-log",))]
            state: dict = {}
        else:
            methods = [dict(m) for m in spec.methods]
            state = dict(spec.state)
        lines = [f'#include "{inc}"' for inc in _INCLUDES]
        lines.append(f"GF_REGISTER_MODULE({name});")
        for method in methods:
            args = ", ".join(f"const FString& {p}" for p in method["params"])
            lines.append(
                f"void {name}::{method['name']}({args}) "
                f"{{ GF_LOG(\"{method['name']}\"); }}"
            )
        return {
            "module_name": name,
            "methods": methods,
            "state": state,
            "registration": 1,
            "includes": list(_INCLUDES),
            "source": "\n".join(lines),
        }

    def answer_planint(self, bindings: Mapping[str, str]) -> dict:
        gameplay = bindings["gameplay"]
        objects = json.loads(bindings["objects_json"])
        interactions = []
        for obj in objects:
            base = re.sub(r"_\d+$", "", obj["name"])
            spec = _BY_NAME.get(base)
            if spec is None or not spec.verb or not _verb_present(spec.verb, gameplay):
                continue
            interactions.append(
                {
                    "object_name": obj["name"],
                    "action": spec.verb,
                    "description": f"{spec.verb} the {spec.noun}",
                    "dependencies": sorted({call.module for call in spec.flow}),
                    "flow": [
                        {"module": c.module, "method": c.method, "args": dict(c.args)}
                        for c in spec.flow
                    ],
                    "external": {name: True for name in spec.external},
                }
            )
        return {"interactions": interactions}

    def answer_generateint(self, bindings: Mapping[str, str]) -> dict:
        plan = json.loads(bindings["interaction_json"])
        steps = [
            {
                "module": s["module"],
                "method": s["method"],
                "args": dict(s.get("args", {})),
            }
            for s in plan["flow"]
        ]
        calls = "; ".join(f"{s['module']}.{s['method']}()" for s in steps)
        source = (
            f"void On{plan['object_name']}{plan['action'].title()}() "
            f"{{ {calls}; }}"
        )
        return {
            "object_name": plan["object_name"],
            "action": plan["action"],
            "flow": steps,
            "source": source,
        }

    def answer_generatetest(self, bindings: Mapping[str, str]) -> dict:
        interactions = json.loads(bindings["interactions_json"])
        objects = json.loads(bindings["objects_json"])
        commands: list[dict] = []
        covered: set[str] = set()
        for entry in interactions:
            commands.append({"kind": "MoveTo", "object_name": entry["object_name"]})
            commands.append(
                {
                    "kind": "Interact",
                    "object_name": entry["object_name"],
                    "action": entry["action"],
                }
            )
            covered.add(entry["object_name"])
        for obj in objects:
            if obj["name"] not in covered:
                commands.append({"kind": "MoveTo", "object_name": obj["name"]})
        return {"commands": commands}

    # -- judging --------------------------------------------------------------

    def answer_judgegame(self, bindings: Mapping[str, str]) -> dict:
        scene, gameplay, visual = GAME_SCORES[bindings["difficulty"]]
        return {"scene": scene, "gameplay": gameplay, "visual": visual}

    def answer_judgepcg(self, bindings: Mapping[str, str]) -> dict:
        return {"score": PCG_SCORES[bindings["difficulty"]]}

    def answer_judgecode(self, bindings: Mapping[str, str]) -> dict:
        mas, mcs, iis = CODE_SCORES[bindings["difficulty"]]
        return {"mas": mas, "mcs": mcs, "iis": iis}

"""Intermediate representations for gameplay modules and interactions.

Generated "code" is carried both as opaque source text and as a structured
summary (methods, state, effects) that the virtual engine can check and
run. Effects come from a closed vocabulary; a dependency call is written
``calls-dependency:Module.method`` so the compile step can resolve it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from gameforge.errors import ParseError

EFFECT_KINDS = (
    "mutates-inventory",
    "sets-flag",
    "reads-flag",
    "emits-log",
    "calls-dependency",
)


def effect_kind(effect: str) -> str:
    return effect.split(":", 1)[0]


def effect_target(effect: str) -> tuple[str, str] | None:
    """(module, method) named by a calls-dependency effect, if well-formed."""
    if ":" not in effect:
        return None
    payload = effect.split(":", 1)[1]
    if "." not in payload:
        return None
    module, method = payload.split(".", 1)
    return module, method


@dataclass(frozen=True)
class ModuleAttrs:
    module_name: str
    purpose: str
    usage: str
    dependencies: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "module_name": self.module_name,
            "purpose": self.purpose,
            "usage": self.usage,
            "dependencies": list(self.dependencies),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModuleAttrs":
        return cls(
            module_name=data["module_name"],
            purpose=data["purpose"],
            usage=data["usage"],
            dependencies=tuple(data["dependencies"]),
        )


@dataclass(frozen=True)
class Method:
    name: str
    params: tuple[str, ...] = ()
    effects: tuple[str, ...] = ()


@dataclass(frozen=True)
class ModuleIR:
    module_name: str
    methods: tuple[Method, ...]
    state: tuple[str, ...] = ()
    registration: bool = False
    includes: tuple[str, ...] = ()
    dependencies: tuple[str, ...] = ()
    source_text: str = ""

    def exports(self) -> frozenset[str]:
        return frozenset(m.name for m in self.methods)

    def method(self, name: str) -> Method | None:
        for method in self.methods:
            if method.name == name:
                return method
        return None

    def to_dict(self) -> dict:
        return {
            "module_name": self.module_name,
            "methods": [
                {"name": m.name, "params": list(m.params), "effects": list(m.effects)}
                for m in self.methods
            ],
            "state": list(self.state),
            "registration": self.registration,
            "includes": list(self.includes),
            "dependencies": list(self.dependencies),
            "source": self.source_text,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ModuleIR":
        return cls(
            module_name=data["module_name"],
            methods=tuple(
                Method(
                    name=m["name"],
                    params=tuple(m["params"]),
                    effects=tuple(m["effects"]),
                )
                for m in data["methods"]
            ),
            state=tuple(data["state"]),
            registration=bool(data["registration"]),
            includes=tuple(data["includes"]),
            dependencies=tuple(data["dependencies"]),
            source_text=data["source"],
        )


@dataclass(frozen=True)
class EngineConstraints:
    include_whitelist: tuple[str, ...]
    registration_required: bool = True
    logging_required: bool = True
    cross_module_rule: str = "declared-dependencies-only"

    def __post_init__(self):
        if not self.include_whitelist:
            raise ValueError("include whitelist must not be empty")

    @classmethod
    def from_file(cls, path: str | Path) -> "EngineConstraints":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
            return cls(
                include_whitelist=tuple(data["include_whitelist"]),
                registration_required=bool(data["registration_required"]),
                logging_required=bool(data["logging_required"]),
                cross_module_rule=data["cross_module_rule"],
            )
        except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"constraints file {path}: {exc!r}") from exc

    def render(self) -> str:
        return (
            f"allowed includes: {', '.join(self.include_whitelist)}; "
            f"registration macro {'required' if self.registration_required else 'optional'}; "
            f"logging in every exported method "
            f"{'required' if self.logging_required else 'optional'}; "
            f"cross-module access: {self.cross_module_rule}"
        )


@dataclass(frozen=True)
class FlowStep:
    module: str
    method: str
    args: dict[str, object] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, FlowStep):
            return NotImplemented
        return (
            self.module == other.module
            and self.method == other.method
            and self.args == other.args
        )

    def __hash__(self):
        return hash((self.module, self.method))

    def to_dict(self) -> dict:
        return {"module": self.module, "method": self.method, "args": self.args}

    @classmethod
    def from_dict(cls, data: dict) -> "FlowStep":
        return cls(
            module=data["module"],
            method=data["method"],
            args=dict(data.get("args", {})),
        )


@dataclass(frozen=True)
class InteractionAttrs:
    object_name: str
    action: str
    description: str
    dependencies: tuple[str, ...]
    flow: tuple[FlowStep, ...]
    external: dict[str, bool] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, InteractionAttrs):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.object_name, self.action))

    def to_dict(self) -> dict:
        return {
            "object_name": self.object_name,
            "action": self.action,
            "description": self.description,
            "dependencies": list(self.dependencies),
            "flow": [s.to_dict() for s in self.flow],
            "external": dict(self.external),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InteractionAttrs":
        return cls(
            object_name=data["object_name"],
            action=data["action"],
            description=data["description"],
            dependencies=tuple(data["dependencies"]),
            flow=tuple(FlowStep.from_dict(s) for s in data["flow"]),
            external={k: bool(v) for k, v in data["external"].items()},
        )


@dataclass(frozen=True)
class InteractionIR:
    object_name: str
    action: str
    flow: tuple[FlowStep, ...]
    source_text: str = ""

    def __eq__(self, other):
        if not isinstance(other, InteractionIR):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __hash__(self):
        return hash((self.object_name, self.action))

    def to_dict(self) -> dict:
        return {
            "object_name": self.object_name,
            "action": self.action,
            "flow": [s.to_dict() for s in self.flow],
            "source": self.source_text,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "InteractionIR":
        return cls(
            object_name=data["object_name"],
            action=data["action"],
            flow=tuple(FlowStep.from_dict(s) for s in data["flow"]),
            source_text=data["source"],
        )


@dataclass(frozen=True)
class CompileReport:
    target: str
    diagnostics: tuple[str, ...] = ()

    @property
    def compiled(self) -> bool:
        return not self.diagnostics

    def to_dict(self) -> dict:
        return {
            "target": self.target,
            "compiled": self.compiled,
            "diagnostics": list(self.diagnostics),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CompileReport":
        return cls(target=data["target"], diagnostics=tuple(data["diagnostics"]))

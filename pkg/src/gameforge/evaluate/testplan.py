"""Play-test planning and execution against a bridge session."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from typing import Sequence

from gameforge.bridge.client import Bridge
from gameforge.errors import BridgeCallError, GameForgeError, MalformedOutput
from gameforge.forge.ir import InteractionIR
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES
from gameforge.retrieval.types import ObjectAttrs

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TestCommand:
    kind: str  # MoveTo or Interact
    object_name: str
    action: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "object_name": self.object_name, "action": self.action}

    @classmethod
    def from_dict(cls, data: dict) -> "TestCommand":
        return cls(
            kind=data["kind"],
            object_name=data["object_name"],
            action=data.get("action", ""),
        )


@dataclass(frozen=True)
class CommandOutcome:
    command: TestCommand
    ok: bool
    detail: str = ""

    def to_dict(self) -> dict:
        return {"command": self.command.to_dict(), "ok": self.ok, "detail": self.detail}

    @classmethod
    def from_dict(cls, data: dict) -> "CommandOutcome":
        return cls(
            command=TestCommand.from_dict(data["command"]),
            ok=bool(data["ok"]),
            detail=data.get("detail", ""),
        )


@dataclass(frozen=True)
class ExecutionTrace:
    outcomes: tuple[CommandOutcome, ...]
    log_entries: tuple[dict, ...] = ()

    @property
    def passed(self) -> int:
        return sum(1 for o in self.outcomes if o.ok)

    @property
    def failed(self) -> int:
        return len(self.outcomes) - self.passed

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def to_dict(self) -> dict:
        return {
            "outcomes": [o.to_dict() for o in self.outcomes],
            "log_entries": [dict(e) for e in self.log_entries],
            "passed": self.passed,
            "failed": self.failed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ExecutionTrace":
        return cls(
            outcomes=tuple(CommandOutcome.from_dict(o) for o in data["outcomes"]),
            log_entries=tuple(dict(e) for e in data["log_entries"]),
        )


def fallback_plan(
    objects: Sequence[ObjectAttrs], interactions: Sequence[InteractionIR]
) -> tuple[TestCommand, ...]:
    """Deterministic plan: exercise each interaction, then tour the rest."""
    plan: list[TestCommand] = []
    covered: set[str] = set()
    for ir in interactions:
        plan.append(TestCommand("MoveTo", ir.object_name))
        plan.append(TestCommand("Interact", ir.object_name, ir.action))
        covered.add(ir.object_name)
    for obj in objects:
        if obj.name not in covered:
            plan.append(TestCommand("MoveTo", obj.name))
    return tuple(plan)


def normalize_plan(commands: Sequence[TestCommand]) -> tuple[TestCommand, ...]:
    """Insert the approach step wherever an Interact lacks one."""
    plan: list[TestCommand] = []
    last_moveto: str | None = None
    for command in commands:
        if command.kind == "Interact" and last_moveto != command.object_name:
            plan.append(TestCommand("MoveTo", command.object_name))
            last_moveto = command.object_name
        plan.append(command)
        if command.kind == "MoveTo":
            last_moveto = command.object_name
    return tuple(plan)


def generate_test_plan(
    objects: Sequence[ObjectAttrs],
    interactions: Sequence[InteractionIR],
    gateway: LlmGateway | None = None,
) -> tuple[TestCommand, ...]:
    if gateway is None:
        return normalize_plan(fallback_plan(objects, interactions))
    bindings = {
        "interactions_json": json.dumps(
            [{"object_name": i.object_name, "action": i.action} for i in interactions],
            indent=1,
        ),
        "objects_json": json.dumps(
            [{"name": o.name, "placement": o.placement} for o in objects], indent=1
        ),
    }
    try:
        payload = gateway.complete_structured(TEMPLATES["GenerateTest"], bindings)
        commands = [TestCommand.from_dict(c) for c in payload["commands"]]
        if not commands:
            raise MalformedOutput("test plan is empty")
    except GameForgeError as exc:
        log.warning("test planner fell back to the deterministic plan: %s", exc)
        commands = list(fallback_plan(objects, interactions))
    return normalize_plan(commands)


def run_tests(plan: Sequence[TestCommand], bridge: Bridge) -> ExecutionTrace:
    """Execute the plan; a failing command is recorded, never fatal.

    Exactly one exec_command call is issued per planned command. Transport
    loss (BridgeUnavailable) aborts the run and propagates.
    """
    outcomes: list[CommandOutcome] = []
    for command in plan:
        arguments = {"kind": command.kind, "object": command.object_name}
        if command.kind == "Interact":
            arguments["action"] = command.action
        try:
            bridge.call_tool("exec_command", arguments)
        except BridgeCallError as exc:
            outcomes.append(CommandOutcome(command, ok=False, detail=exc.message))
        else:
            outcomes.append(CommandOutcome(command, ok=True))
    try:
        entries = bridge.call_tool("fetch_logs", {"after": 0})["entries"]
    except BridgeCallError:
        entries = []
    return ExecutionTrace(outcomes=tuple(outcomes), log_entries=tuple(entries))

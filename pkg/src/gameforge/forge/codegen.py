"""Gateway-driven code generation for modules and interactions."""

from __future__ import annotations

import json
from typing import Mapping

from gameforge.errors import (
    ConstraintViolation,
    FlowMismatch,
    MalformedOutput,
    UnresolvedStep,
)
from gameforge.forge.compile import validate_module
from gameforge.forge.ir import (
    EngineConstraints,
    FlowStep,
    InteractionAttrs,
    InteractionIR,
    Method,
    ModuleAttrs,
    ModuleIR,
)
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES
from gameforge.retrieval.types import ObjectAttrs


def _exports_context(modules: Mapping[str, ModuleIR]) -> str:
    return json.dumps(
        {name: sorted(ir.exports()) for name, ir in sorted(modules.items())},
        sort_keys=True,
    )


def generate_module_code(
    attrs: ModuleAttrs,
    gateway: LlmGateway,
    constraints: EngineConstraints,
    generated: Mapping[str, ModuleIR],
) -> ModuleIR:
    """Generate one module in dependency order.

    A constraint-violating module is regenerated once with the compile
    diagnostics appended to the prompt; a second failure raises.
    """
    bindings = {
        "module_json": json.dumps(attrs.to_dict(), sort_keys=True),
        "modules_context": _exports_context(generated),
        "constraints": constraints.render(),
        "diagnostics": "",
    }
    exports = {name: ir.exports() for name, ir in generated.items()}
    ir = _parse_module(attrs, gateway.complete_structured(TEMPLATES["GenerateCode"], bindings))
    report = validate_module(ir, constraints, exports)
    if not report.compiled:
        bindings = dict(bindings)
        bindings["diagnostics"] = (
            "Previous attempt failed the engine checks:\n- "
            + "\n- ".join(report.diagnostics) + "\n"
        )
        ir = _parse_module(
            attrs, gateway.complete_structured(TEMPLATES["GenerateCode"], bindings)
        )
        report = validate_module(ir, constraints, exports)
        if not report.compiled:
            raise ConstraintViolation(
                f"{attrs.module_name}: " + "; ".join(report.diagnostics)
            )
    return ir


def _parse_module(attrs: ModuleAttrs, payload: dict) -> ModuleIR:
    if payload["module_name"] != attrs.module_name:
        raise MalformedOutput(
            f"asked for module {attrs.module_name}, got {payload['module_name']}"
        )
    return ModuleIR(
        module_name=payload["module_name"],
        methods=tuple(
            Method(
                name=m["name"],
                params=tuple(m["params"]),
                effects=tuple(m["effects"]),
            )
            for m in payload["methods"]
        ),
        state=tuple(sorted(payload.get("state", {}))),
        registration=bool(payload["registration"]),
        includes=tuple(payload["includes"]),
        dependencies=attrs.dependencies,
        source_text=payload["source"],
    )


def plan_interactions(
    objects: list[ObjectAttrs],
    modules: Mapping[str, ModuleIR],
    gameplay: str,
    gateway: LlmGateway,
) -> list[InteractionAttrs]:
    """Plan per-object interactions; a decorative scene yields none."""
    payload = gateway.complete_structured(
        TEMPLATES["PlanInt"],
        {
            "gameplay": gameplay,
            "objects_json": json.dumps(
                [o.to_dict() for o in objects], sort_keys=True
            ),
            "modules_json": _exports_context(modules),
        },
    )
    object_names = {o.name for o in objects}
    interactions: list[InteractionAttrs] = []
    for entry in payload["interactions"]:
        attrs = InteractionAttrs(
            object_name=entry["object_name"],
            action=entry["action"],
            description=entry["description"],
            dependencies=tuple(entry["dependencies"]),
            flow=tuple(FlowStep.from_dict(s) for s in entry["flow"]),
            external={k: bool(v) for k, v in entry.get("external", {}).items()},
        )
        if attrs.object_name not in object_names:
            raise MalformedOutput(
                f"interaction targets unknown object {attrs.object_name}"
            )
        for index, step in enumerate(attrs.flow):
            if step.module not in attrs.dependencies:
                raise UnresolvedStep(
                    f"{attrs.object_name}: step {index} uses {step.module} "
                    "outside the declared dependencies"
                )
            module = modules.get(step.module)
            if module is None or module.method(step.method) is None:
                raise UnresolvedStep(
                    f"{attrs.object_name}: step {index} cannot resolve "
                    f"{step.module}.{step.method}"
                )
        interactions.append(attrs)
    return interactions


def generate_interaction_code(
    attrs: InteractionAttrs,
    gateway: LlmGateway,
    modules: Mapping[str, ModuleIR],
) -> InteractionIR:
    """Generate one interaction; the flow must follow the plan step-for-step."""
    bindings = {
        "interaction_json": json.dumps(attrs.to_dict(), sort_keys=True),
        "modules_context": _exports_context(modules),
        "diagnostics": "",
    }
    ir = _parse_interaction(gateway.complete_structured(TEMPLATES["GenerateInt"], bindings))
    problems = _flow_problems(attrs, ir)
    if problems:
        bindings = dict(bindings)
        bindings["diagnostics"] = (
            "Previous attempt diverged from the plan:\n- "
            + "\n- ".join(problems) + "\n"
        )
        ir = _parse_interaction(
            gateway.complete_structured(TEMPLATES["GenerateInt"], bindings)
        )
        problems = _flow_problems(attrs, ir)
        if problems:
            raise FlowMismatch(f"{attrs.object_name}: " + "; ".join(problems))
    return ir


def _parse_interaction(payload: dict) -> InteractionIR:
    return InteractionIR(
        object_name=payload["object_name"],
        action=payload["action"],
        flow=tuple(FlowStep.from_dict(s) for s in payload["flow"]),
        source_text=payload["source"],
    )


def _flow_problems(attrs: InteractionAttrs, ir: InteractionIR) -> list[str]:
    problems = []
    if ir.object_name != attrs.object_name:
        problems.append(f"object {ir.object_name} != planned {attrs.object_name}")
    if ir.action != attrs.action:
        problems.append(f"action {ir.action} != planned {attrs.action}")
    generated = [(s.module, s.method) for s in ir.flow]
    planned = [(s.module, s.method) for s in attrs.flow]
    if generated != planned:
        problems.append(f"flow {generated} != planned {planned}")
    return problems

"""Virtual compile: constraint checking for generated modules and interactions.

Checks are independent of each other, so fixing one reported violation
never introduces another and the diagnostics list enumerates every broken
rule at once.
"""

from __future__ import annotations

from typing import Mapping

from gameforge.forge.ir import (
    EFFECT_KINDS,
    CompileReport,
    EngineConstraints,
    InteractionIR,
    ModuleIR,
    effect_kind,
    effect_target,
)


def validate_module(
    ir: ModuleIR,
    constraints: EngineConstraints,
    exports: Mapping[str, frozenset[str]] | None = None,
) -> CompileReport:
    """Check one module against the engine constraints.

    exports maps already-compiled module names to their exported methods;
    it is consulted for cross-module calls.
    """
    exports = exports or {}
    diagnostics: list[str] = []
    if constraints.registration_required and not ir.registration:
        diagnostics.append("module does not declare engine registration")
    whitelist = set(constraints.include_whitelist)
    for include in ir.includes:
        if include not in whitelist:
            diagnostics.append(f"include {include} is not on the engine whitelist")
    for method in ir.methods:
        kinds = {effect_kind(e) for e in method.effects}
        unknown = sorted(k for k in kinds if k not in EFFECT_KINDS)
        for kind in unknown:
            diagnostics.append(
                f"method {method.name}: unknown effect kind {kind}"
            )
        if constraints.logging_required and "emits-log" not in kinds:
            diagnostics.append(f"method {method.name} never logs")
        for effect in method.effects:
            if effect_kind(effect) != "calls-dependency":
                continue
            target = effect_target(effect)
            if target is None:
                diagnostics.append(
                    f"method {method.name}: malformed dependency call {effect!r}"
                )
                continue
            target_module, target_method = target
            if target_module not in ir.dependencies:
                diagnostics.append(
                    f"method {method.name} calls {target_module} which is not a "
                    "declared dependency"
                )
            elif target_method not in exports.get(target_module, frozenset()):
                diagnostics.append(
                    f"method {method.name} calls unknown method "
                    f"{target_module}.{target_method}"
                )
    return CompileReport(target=ir.module_name, diagnostics=tuple(diagnostics))


def validate_interaction(
    ir: InteractionIR, modules: Mapping[str, ModuleIR]
) -> CompileReport:
    """Check that every flow step resolves to a generated module method."""
    diagnostics: list[str] = []
    for index, step in enumerate(ir.flow):
        module = modules.get(step.module)
        if module is None:
            diagnostics.append(f"step {index} uses unknown module {step.module}")
            continue
        if module.method(step.method) is None:
            diagnostics.append(
                f"step {index} calls unknown method {step.module}.{step.method}"
            )
    return CompileReport(
        target=f"{ir.object_name}:{ir.action}", diagnostics=tuple(diagnostics)
    )

from gameforge.forge.codegen import (
    generate_interaction_code,
    generate_module_code,
    plan_interactions,
)
from gameforge.forge.compile import validate_interaction, validate_module
from gameforge.forge.flow import ModuleRegistry, execute_flow
from gameforge.forge.ir import (
    CompileReport,
    EngineConstraints,
    FlowStep,
    InteractionAttrs,
    InteractionIR,
    Method,
    ModuleAttrs,
    ModuleIR,
)
from gameforge.forge.planner import plan_modules, topo_sort

__all__ = [
    "CompileReport",
    "EngineConstraints",
    "FlowStep",
    "InteractionAttrs",
    "InteractionIR",
    "Method",
    "ModuleAttrs",
    "ModuleIR",
    "ModuleRegistry",
    "execute_flow",
    "generate_interaction_code",
    "generate_module_code",
    "plan_interactions",
    "plan_modules",
    "topo_sort",
    "validate_interaction",
    "validate_module",
]

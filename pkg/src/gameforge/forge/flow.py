"""Module registry and interaction flow execution against world state."""

from __future__ import annotations

from typing import Protocol

from gameforge.errors import FlowError, MalformedInput
from gameforge.forge.ir import InteractionIR, Method, ModuleIR, effect_kind, effect_target


class WorldState(Protocol):
    """What flow execution needs from the running world."""

    inventory: list[str]
    flags: dict[str, bool]

    def append_log(self, source: str, message: str) -> None: ...


class ModuleRegistry:
    """Holds compiled modules; module names are unique."""

    def __init__(self):
        self._modules: dict[str, ModuleIR] = {}

    def register(self, ir: ModuleIR) -> None:
        if ir.module_name in self._modules:
            raise MalformedInput(f"module {ir.module_name} is already registered")
        self._modules[ir.module_name] = ir

    def get(self, name: str) -> ModuleIR | None:
        return self._modules.get(name)

    def modules(self) -> dict[str, ModuleIR]:
        return dict(self._modules)

    def __len__(self) -> int:
        return len(self._modules)


def execute_flow(
    ir: InteractionIR, world: WorldState, registry: ModuleRegistry
) -> None:
    """Run every flow step in order, appending exactly one log entry each.

    Effects mutate inventory and flags; an unset flag reads as false. A
    dependency-call effect is logged, not recursively executed — the callee
    appears in the flow itself when its effects matter.
    """
    for index, step in enumerate(ir.flow):
        module = registry.get(step.module)
        if module is None:
            raise FlowError(index, f"module {step.module} is not registered")
        method = module.method(step.method)
        if method is None:
            raise FlowError(index, f"{step.module} exports no method {step.method}")
        notes = _apply_effects(method, step.args, world)
        rendered_args = ", ".join(f"{k}={v}" for k, v in sorted(step.args.items()))
        world.append_log(
            f"{step.module}.{step.method}",
            f"{step.method}({rendered_args})" + ("; " + "; ".join(notes) if notes else ""),
        )


def _apply_effects(method: Method, args: dict[str, object], world: WorldState) -> list[str]:
    notes: list[str] = []
    for effect in method.effects:
        kind = effect_kind(effect)
        if kind == "mutates-inventory":
            item = str(args.get("item") or _first_arg(method, args) or method.name)
            world.inventory.append(item)
            notes.append(f"item+{item}")
        elif kind == "sets-flag":
            flag = str(args.get("flag") or f"{method.name}")
            world.flags[flag] = True
            notes.append(f"flag {flag}=on")
        elif kind == "reads-flag":
            flag = str(args.get("flag") or f"{method.name}")
            value = world.flags.get(flag, False)
            notes.append(f"flag {flag}?{'on' if value else 'off'}")
        elif kind == "calls-dependency":
            target = effect_target(effect)
            if target is not None:
                notes.append(f"calls {target[0]}.{target[1]}")
        # emits-log is satisfied by the single entry appended per step
    return notes


def _first_arg(method: Method, args: dict[str, object]) -> object | None:
    for param in method.params:
        if param in args:
            return args[param]
    return None

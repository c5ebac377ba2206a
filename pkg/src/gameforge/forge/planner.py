"""Module planning and dependency ordering."""

from __future__ import annotations

import heapq
import json

from gameforge.errors import CycleDetected, MalformedOutput, UnknownDependency
from gameforge.forge.ir import ModuleAttrs
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES


def plan_modules(gameplay: str, gateway: LlmGateway) -> list[ModuleAttrs]:
    """Plan gameplay modules; dependencies must stay inside the plan."""
    payload = gateway.complete_structured(TEMPLATES["PlanCode"], {"gameplay": gameplay})
    modules = [
        ModuleAttrs(
            module_name=entry["module_name"],
            purpose=entry["purpose"],
            usage=entry["usage"],
            dependencies=tuple(entry["dependencies"]),
        )
        for entry in payload["modules"]
    ]
    names = [m.module_name for m in modules]
    if len(set(names)) != len(names):
        raise MalformedOutput(f"duplicate module names in plan: {names}")
    planned = set(names)
    for module in modules:
        for dep in module.dependencies:
            if dep == module.module_name:
                raise UnknownDependency(f"{module.module_name} depends on itself")
            if dep not in planned:
                raise UnknownDependency(
                    f"{module.module_name} depends on unplanned module {dep}"
                )
    return modules


def topo_sort(modules: list[ModuleAttrs]) -> list[ModuleAttrs]:
    """Dependency-first order; ties broken by ascending module name.

    Raises CycleDetected carrying one witness cycle when no such order
    exists.
    """
    by_name = {m.module_name: m for m in modules}
    dependents: dict[str, list[str]] = {name: [] for name in by_name}
    pending: dict[str, int] = {}
    for module in modules:
        pending[module.module_name] = len(module.dependencies)
        for dep in module.dependencies:
            dependents[dep].append(module.module_name)

    ready = [name for name, count in pending.items() if count == 0]
    heapq.heapify(ready)
    ordered: list[ModuleAttrs] = []
    while ready:
        name = heapq.heappop(ready)
        ordered.append(by_name[name])
        for dependent in dependents[name]:
            pending[dependent] -= 1
            if pending[dependent] == 0:
                heapq.heappush(ready, dependent)
    if len(ordered) != len(modules):
        remaining = {name for name, count in pending.items() if count > 0}
        raise CycleDetected(_find_cycle(by_name, remaining))
    return ordered


def _find_cycle(by_name: dict[str, ModuleAttrs], remaining: set[str]) -> list[str]:
    """Walk dependencies inside the remaining set until a name repeats."""
    start = min(remaining)
    path: list[str] = []
    seen: dict[str, int] = {}
    node = start
    while node not in seen:
        seen[node] = len(path)
        path.append(node)
        node = min(d for d in by_name[node].dependencies if d in remaining)
    return path[seen[node]:]


def render_plan(modules: list[ModuleAttrs]) -> str:
    return json.dumps([m.to_dict() for m in modules], sort_keys=True)

"""End-to-end orchestration: description in, evaluated game bundle out.

Stages run strictly in order and the first failing stage halts the run
with a StageFailure naming it. A module that fails the engine checks is
not a stage failure: the compile outcome is recorded, interaction code is
skipped, and the evaluator zeroes the code-dependent scores, so a broken
game still produces a full report.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, TypeVar

from gameforge.bridge.client import Bridge, InProcessBridge
from gameforge.config import PipelineConfig, make_gateway
from gameforge.engine.execute import SceneLayout, execute_graph
from gameforge.engine.registry import REGISTRY, SPAWN
from gameforge.engine.validate import ValidationReport, validate_graph
from gameforge.errors import (
    ConstraintViolation,
    GameForgeError,
    MalformedInput,
    MalformedOutput,
    StageFailure,
)
from gameforge.evaluate.judge import judge_code, judge_game, judge_pcg, judge_provenance
from gameforge.evaluate.report import EvaluationReport, build_report
from gameforge.evaluate.testplan import (
    ExecutionTrace,
    TestCommand,
    generate_test_plan,
    run_tests,
)
from gameforge.forge.codegen import (
    generate_interaction_code,
    generate_module_code,
    plan_interactions,
)
from gameforge.forge.ir import (
    CompileReport,
    EngineConstraints,
    InteractionAttrs,
    InteractionIR,
    ModuleAttrs,
    ModuleIR,
)
from gameforge.forge.planner import plan_modules, topo_sort
from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES
from gameforge.pcg.docs import DocChunk, chunk_documents, retrieve_chunks
from gameforge.pcg.graph import PcgGraph, serialize_graph
from gameforge.pcg.planner import (
    assemble_graph,
    classify_pattern,
    plan_node_chain,
    specify_node,
)
from gameforge.pipeline.artifacts import Stage, Workspace
from gameforge.pipeline.tasks import TaskSpec
from gameforge.retrieval.agent import generate_object_list, resolve_model
from gameforge.retrieval.index import AssetIndex, build_index
from gameforge.retrieval.types import ModelRecord, ObjectAttrs

log = logging.getLogger(__name__)

T = TypeVar("T")


def decompose_description(description: str, gateway: LlmGateway) -> tuple[str, str]:
    """Split a game description into scene text and gameplay text.

    A description with no gameplay half falls back to the full text, so
    downstream planners always have something to work from.
    """
    if not description.strip():
        raise MalformedInput("game description is empty")
    payload = gateway.complete_structured(
        TEMPLATES["Decompose"], {"description": description}
    )
    scene = str(payload["scene"]).strip()
    if not scene:
        raise MalformedOutput("decomposition produced an empty scene text")
    gameplay = str(payload.get("gameplay", "")).strip() or description.strip()
    return scene, gameplay


@dataclass
class GameBundle:
    """Everything one pipeline run produced for one task."""

    task: TaskSpec
    scene_text: str
    gameplay_text: str
    objects: tuple[ObjectAttrs, ...]
    resolutions: dict[str, ModelRecord]
    pool_sizes: dict[str, int]
    patterns: dict[str, str]
    graph: PcgGraph
    validation: ValidationReport
    layout: SceneLayout
    module_attrs: tuple[ModuleAttrs, ...]
    module_order: tuple[str, ...]
    modules: dict[str, ModuleIR]
    compile_reports: tuple[CompileReport, ...]
    compiled: bool
    interaction_attrs: tuple[InteractionAttrs, ...]
    interactions: tuple[InteractionIR, ...]
    test_plan: tuple[TestCommand, ...]
    trace: ExecutionTrace
    report: EvaluationReport | None = None
    workspace_dir: Path | None = None


def verify_bundle(bundle: GameBundle) -> list[str]:
    """Cross-artifact referential checks; an empty list means coherent."""
    problems: list[str] = []
    object_names = {o.name for o in bundle.objects}
    model_ids = {r.model_id for r in bundle.resolutions.values()}
    for name in object_names - set(bundle.resolutions):
        problems.append(f"object {name} has no retrieved model")
    for name in object_names - set(bundle.patterns):
        problems.append(f"object {name} has no placement pattern")
    for uid, model_id in bundle.graph.bindings.items():
        if model_id not in model_ids:
            problems.append(f"spawner {uid} bound to unretrieved model {model_id}")
    chain_objects = {c.object_name for c in bundle.graph.chains}
    if chain_objects != object_names:
        problems.append(
            f"graph covers {sorted(chain_objects)}, objects are {sorted(object_names)}"
        )
    for inst in bundle.layout.instances:
        if inst.object_name not in object_names:
            problems.append(f"instance {inst.instance_id} of unknown object")
    module_names = set(bundle.modules)
    for ir in bundle.interactions:
        if ir.object_name not in object_names:
            problems.append(f"interaction targets unknown object {ir.object_name}")
        for step in ir.flow:
            if step.module not in module_names:
                problems.append(
                    f"interaction {ir.object_name}:{ir.action} calls missing "
                    f"module {step.module}"
                )
    for command in bundle.test_plan:
        if command.object_name not in object_names:
            problems.append(f"test plan visits unknown object {command.object_name}")
    return problems


class _Runner:
    def __init__(
        self,
        task: TaskSpec,
        config: PipelineConfig,
        gateway: LlmGateway,
        index: AssetIndex | None,
        chunks: list[DocChunk] | None,
        workspace: Workspace | None,
    ):
        self.task = task
        self.config = config
        self.gateway = gateway
        self.index = index
        self.chunks = chunks
        self.workspace = workspace

    def stage(self, stage: Stage, body: Callable[[], T]) -> T:
        try:
            return body()
        except StageFailure:
            raise
        except GameForgeError as exc:
            log.error("task %s halted at %s: %s", self.task.task_id, stage.value, exc)
            raise StageFailure(stage.value, exc) from exc

    def record(self, stage: Stage, payload: dict) -> None:
        if self.workspace is not None:
            self.workspace.record(stage, payload)


def run_pipeline(
    task: TaskSpec,
    config: PipelineConfig | None = None,
    gateway: LlmGateway | None = None,
    index: AssetIndex | None = None,
    chunks: list[DocChunk] | None = None,
    workspace_root: str | Path | None = None,
    bridge: Bridge | None = None,
    evaluate: bool = True,
) -> GameBundle:
    config = config or PipelineConfig()
    gateway = gateway or make_gateway(config)
    workspace = Workspace(workspace_root, task.task_id) if workspace_root else None
    r = _Runner(task, config, gateway, index, chunks, workspace)

    # Decompose
    scene, gameplay = r.stage(
        Stage.DECOMPOSE, lambda: decompose_description(task.description, gateway)
    )
    r.record(Stage.DECOMPOSE, {"scene": scene, "gameplay": gameplay})

    # Objects
    objects = tuple(
        r.stage(Stage.OBJECTS, lambda: generate_object_list(scene, gateway))
    )
    r.record(Stage.OBJECTS, {"objects": [o.to_dict() for o in objects]})

    # Retrieval
    def _retrieval() -> tuple[dict[str, ModelRecord], dict[str, int], dict]:
        asset_index = r.index if r.index is not None else build_index(config.manifest)
        r.index = asset_index
        resolutions: dict[str, ModelRecord] = {}
        pool_sizes: dict[str, int] = {}
        rows: dict[str, dict] = {}
        for obj in objects:
            record, result = resolve_model(
                asset_index, obj, gateway, k=config.retrieval_k
            )
            resolutions[obj.name] = record
            pool_sizes[obj.name] = result.pool_size
            score = next(
                (s for rec, s in result.ranked if rec.model_id == record.model_id),
                None,
            )
            rows[obj.name] = {
                "model_id": record.model_id,
                "model_name": record.name,
                "score": None if score is None else round(score, 6),
                "pool_size": result.pool_size,
            }
        return resolutions, pool_sizes, {"bindings": rows}

    resolutions, pool_sizes, retrieval_payload = r.stage(Stage.RETRIEVAL, _retrieval)
    r.record(Stage.RETRIEVAL, retrieval_payload)

    # GraphPlan
    patterns = r.stage(
        Stage.GRAPH_PLAN,
        lambda: {obj.name: classify_pattern(obj, gateway) for obj in objects},
    )
    r.record(Stage.GRAPH_PLAN, {"patterns": dict(sorted(patterns.items()))})

    # GraphSpec
    def _graph_spec() -> tuple[PcgGraph, ValidationReport, SceneLayout]:
        doc_chunks = r.chunks
        if doc_chunks is None:
            strip = None if config.strict_parameters else "Parameters"
            doc_chunks = chunk_documents(config.docs_dir, strip_heading=strip)
            r.chunks = doc_chunks
        chains = [
            plan_node_chain(
                obj, patterns[obj.name], gateway, i, enforce=config.enforce_patterns
            )
            for i, obj in enumerate(objects)
        ]
        attrs = {}
        for chain in chains:
            for node in chain.nodes:
                relevant = retrieve_chunks(
                    doc_chunks,
                    f"{node.node_type} parameters pins",
                    c=config.doc_chunks,
                )
                attrs[node.node_uid] = specify_node(
                    node,
                    chain,
                    relevant,
                    gateway,
                    model_id=resolutions[chain.object_name].model_id,
                    strict=config.strict_parameters,
                )
        bindings = {
            node.node_uid: resolutions[chain.object_name].model_id
            for chain in chains
            for node in chain.nodes
            if node.node_type in REGISTRY and SPAWN in REGISTRY[node.node_type].classes
        }
        graph = assemble_graph(chains, attrs, bindings)
        validation = validate_graph(graph)
        layout = execute_graph(graph, seed=task.seed, bounds=config.bounds)
        return graph, validation, layout

    graph, validation, layout = r.stage(Stage.GRAPH_SPEC, _graph_spec)
    r.record(
        Stage.GRAPH_SPEC,
        {
            "graph": serialize_graph(graph),
            "validation": validation.to_dict(),
            "instances": len(layout.instances),
        },
    )

    # Modules
    def _modules() -> tuple[
        tuple[ModuleAttrs, ...], tuple[str, ...], dict[str, ModuleIR],
        tuple[CompileReport, ...], bool,
    ]:
        constraints = EngineConstraints.from_file(config.constraints_path)
        attrs_list = plan_modules(gameplay, gateway)
        ordered = topo_sort(attrs_list)
        generated: dict[str, ModuleIR] = {}
        reports: list[CompileReport] = []
        for attrs in ordered:
            try:
                ir = generate_module_code(attrs, gateway, constraints, generated)
            except ConstraintViolation as exc:
                log.warning(
                    "module %s failed engine checks: %s", attrs.module_name, exc
                )
                reports.append(
                    CompileReport(target=attrs.module_name, diagnostics=(str(exc),))
                )
                continue
            generated[attrs.module_name] = ir
            reports.append(CompileReport(target=attrs.module_name))
        compiled = all(rep.compiled for rep in reports)
        order = tuple(a.module_name for a in ordered)
        return tuple(attrs_list), order, generated, tuple(reports), compiled

    module_attrs, module_order, modules, compile_reports, compiled = r.stage(
        Stage.MODULES, _modules
    )
    r.record(
        Stage.MODULES,
        {
            "order": list(module_order),
            "modules": [modules[n].to_dict() for n in module_order if n in modules],
            "compile_reports": [rep.to_dict() for rep in compile_reports],
            "compiled": compiled,
        },
    )

    # Interactions
    def _interactions() -> tuple[tuple[InteractionAttrs, ...], tuple[InteractionIR, ...]]:
        if not compiled:
            log.warning(
                "task %s: skipping interaction code, modules did not compile",
                task.task_id,
            )
            return (), ()
        planned = plan_interactions(list(objects), modules, gameplay, gateway)
        generated = tuple(
            generate_interaction_code(attrs, gateway, modules) for attrs in planned
        )
        return tuple(planned), generated

    interaction_attrs, interactions = r.stage(Stage.INTERACTIONS, _interactions)
    r.record(
        Stage.INTERACTIONS,
        {
            "planned": [a.to_dict() for a in interaction_attrs],
            "interactions": [ir.to_dict() for ir in interactions],
        },
    )

    # TestPlan
    plan = r.stage(
        Stage.TEST_PLAN,
        lambda: generate_test_plan(objects, interactions, gateway),
    )
    r.record(Stage.TEST_PLAN, {"commands": [c.to_dict() for c in plan]})

    # Trace
    def _trace() -> ExecutionTrace:
        session = bridge if bridge is not None else InProcessBridge()
        session.call_tool("import_graph", {"graph": serialize_graph(graph)})
        session.call_tool(
            "execute_graph",
            {"seed": task.seed, "bounds": config.bounds.to_dict()},
        )
        session.call_tool(
            "register_modules",
            {
                "modules": [modules[n].to_dict() for n in module_order if n in modules],
                "interactions": [ir.to_dict() for ir in interactions],
            },
        )
        session.call_tool(
            "spawn_world",
            {
                "interaction_radius": config.interaction_radius,
                "visibility_radius": config.visibility_radius,
            },
        )
        return run_tests(plan, session)

    trace = r.stage(Stage.TRACE, _trace)
    r.record(Stage.TRACE, trace.to_dict())

    bundle = GameBundle(
        task=task,
        scene_text=scene,
        gameplay_text=gameplay,
        objects=objects,
        resolutions=resolutions,
        pool_sizes=pool_sizes,
        patterns=patterns,
        graph=graph,
        validation=validation,
        layout=layout,
        module_attrs=module_attrs,
        module_order=module_order,
        modules=modules,
        compile_reports=compile_reports,
        compiled=compiled,
        interaction_attrs=interaction_attrs,
        interactions=interactions,
        test_plan=plan,
        trace=trace,
        workspace_dir=workspace.dir if workspace else None,
    )

    # Report
    if evaluate:
        report = r.stage(Stage.REPORT, lambda: evaluate_bundle(bundle, gateway))
        bundle.report = report
        r.record(Stage.REPORT, report.to_dict())

    if workspace is not None:
        workspace.write_manifest(
            run={
                "task": task.to_dict(),
                "bounds": config.bounds.to_dict(),
                "interaction_radius": config.interaction_radius,
                "visibility_radius": config.visibility_radius,
                "backend": gateway.backend_id,
            }
        )
    return bundle


def ablation_validation(
    tasks: list[TaskSpec],
    config: PipelineConfig,
    gateway: LlmGateway | None = None,
    index: AssetIndex | None = None,
    chunks: list[DocChunk] | None = None,
) -> dict[str, ValidationReport]:
    """Plan and validate each task's scene graph without executing it.

    Ablation studies flow through here both when their replay scripts are
    recorded and when they are replayed, so the prompt sequences match by
    construction. Execution is skipped because ablated graphs may contain
    node types the engine cannot run.
    """
    gateway = gateway or make_gateway(config)
    if index is None:
        index = build_index(config.manifest)
    if chunks is None:
        strip = None if config.strict_parameters else "Parameters"
        chunks = chunk_documents(config.docs_dir, strip_heading=strip)
    reports: dict[str, ValidationReport] = {}
    for task in tasks:
        scene, _ = decompose_description(task.description, gateway)
        objects = generate_object_list(scene, gateway)
        resolutions = {
            obj.name: resolve_model(index, obj, gateway, k=config.retrieval_k)[0]
            for obj in objects
        }
        patterns = {obj.name: classify_pattern(obj, gateway) for obj in objects}
        chains = [
            plan_node_chain(
                obj, patterns[obj.name], gateway, i, enforce=config.enforce_patterns
            )
            for i, obj in enumerate(objects)
        ]
        attrs = {}
        for chain in chains:
            for node in chain.nodes:
                relevant = retrieve_chunks(
                    chunks, f"{node.node_type} parameters pins", c=config.doc_chunks
                )
                attrs[node.node_uid] = specify_node(
                    node,
                    chain,
                    relevant,
                    gateway,
                    model_id=resolutions[chain.object_name].model_id,
                    strict=config.strict_parameters,
                )
        bindings = {
            node.node_uid: resolutions[chain.object_name].model_id
            for chain in chains
            for node in chain.nodes
            if node.node_type in REGISTRY and SPAWN in REGISTRY[node.node_type].classes
        }
        graph = assemble_graph(chains, attrs, bindings)
        reports[task.task_id] = validate_graph(graph)
    return reports


def game_evidence(bundle: GameBundle) -> dict:
    """Structural summary of the built game for the quality judge.

    Evidence stays position-free: raw coordinates and travel distances live
    in the trace artifact, so two runs whose outcomes match produce the same
    judge prompt regardless of the placement seed.
    """
    log_sources: dict[str, int] = {}
    for entry in bundle.trace.log_entries:
        source = str(entry.get("source", ""))
        log_sources[source] = log_sources.get(source, 0) + 1
    return {
        "objects": [o.to_dict() for o in bundle.objects],
        "patterns": dict(sorted(bundle.patterns.items())),
        "populated_objects": sorted(
            {i.object_name for i in bundle.layout.instances}
        ),
        "interactions": [
            {"object_name": ir.object_name, "action": ir.action}
            for ir in bundle.interactions
        ],
        "trace": {"passed": bundle.trace.passed, "failed": bundle.trace.failed},
        "log_sources": dict(sorted(log_sources.items())),
    }


def pcg_evidence(bundle: GameBundle) -> dict:
    return {
        "graph": serialize_graph(bundle.graph),
        "validation": bundle.validation.counts(),
    }


def code_evidence(bundle: GameBundle) -> dict:
    return {
        "modules": [a.to_dict() for a in bundle.module_attrs],
        "order": list(bundle.module_order),
        "compiled": bundle.compiled,
        "compile_reports": [rep.to_dict() for rep in bundle.compile_reports],
        "interaction_flows": [ir.to_dict() for ir in bundle.interactions],
    }


def evaluate_bundle(bundle: GameBundle, gateway: LlmGateway) -> EvaluationReport:
    """Judge a finished bundle and fold the scores into one report."""
    difficulty = bundle.task.difficulty
    game = judge_game(gateway, difficulty, game_evidence(bundle))
    pcg_score = judge_pcg(gateway, difficulty, pcg_evidence(bundle))
    code = judge_code(gateway, difficulty, code_evidence(bundle))
    return build_report(
        task_id=bundle.task.task_id,
        difficulty=difficulty,
        validation=bundle.validation,
        trace=bundle.trace,
        pcg_judge=pcg_score,
        game_judge=game,
        code_judge=code,
        compiled=bundle.compiled,
        provenance=judge_provenance(gateway),
    )

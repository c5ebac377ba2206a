"""Command-line entry point.

Exit codes: 0 on success, 2 for unreadable or invalid inputs and bad
configuration, 3 when a pipeline stage or a replayed check fails.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from gameforge.bridge.client import InProcessBridge
from gameforge.bridge.server import serve_stdio, serve_tcp
from gameforge.config import PipelineConfig, make_gateway
from gameforge.engine.execute import Box
from gameforge.engine.validate import validate_graph
from gameforge.errors import GameForgeError, ParseError, StageFailure
from gameforge.evaluate.report import EvaluationReport, render_table
from gameforge.evaluate.scoring import compute_pcg_success
from gameforge.evaluate.testplan import ExecutionTrace, TestCommand, run_tests
from gameforge.pcg.docs import chunk_documents
from gameforge.pcg.graph import parse_graph
from gameforge.pipeline.run import run_pipeline
from gameforge.pipeline.tasks import dataset_stats, load_dataset
from gameforge.retrieval.index import build_index, save_index

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def _fail(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _load_json(path: Path) -> dict:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError(f"{path} must hold a JSON object")
    return data


# -- generate ----------------------------------------------------------------


def _cmd_generate(args: argparse.Namespace) -> int:
    tasks = load_dataset(args.task_file)
    if args.task is not None:
        tasks = tuple(t for t in tasks if t.task_id == args.task)
        if not tasks:
            raise ParseError(f"no task named {args.task!r} in {args.task_file}")
    if not tasks:
        raise ParseError(f"{args.task_file} holds no tasks")
    if args.seed is not None:
        tasks = tuple(dataclasses.replace(t, seed=args.seed) for t in tasks)

    config = PipelineConfig(backend=args.backend)
    gateway = make_gateway(config)
    index = build_index(config.manifest)
    chunks = chunk_documents(config.docs_dir)
    workspace = Path(args.workspace)

    reports = []
    for task in tasks:
        try:
            bundle = run_pipeline(
                task,
                config,
                gateway=gateway,
                index=index,
                chunks=chunks,
                workspace_root=workspace,
            )
        except StageFailure as exc:
            _fail(f"task {task.task_id} halted at stage {exc.stage}: {exc.cause}")
            return EXIT_STAGE
        report = bundle.report
        reports.append(report)
        rates = report.pcg
        print(
            f"{task.task_id}: {len(bundle.layout.instances)} instances, "
            f"validation {rates.node_rate}/{rates.param_rate}/{rates.pin_rate}, "
            f"tests {bundle.trace.passed}/{len(bundle.trace.outcomes)} ok, "
            f"game {report.game_score} gcs {report.gcs} "
            f"-> {bundle.workspace_dir}"
        )
    print()
    print(render_table(reports))
    return EXIT_OK


# -- validate-graph ------------------------------------------------------------


def _cmd_validate_graph(args: argparse.Namespace) -> int:
    payload = _load_json(args.graph_file)
    # A stage artifact nests the graph under "graph"; a bare file is the graph.
    if "graph" in payload and isinstance(payload["graph"], dict):
        payload = payload["graph"]
    graph = parse_graph(payload)
    report = validate_graph(graph)
    rates = compute_pcg_success(report)
    counts = report.counts()
    print(
        f"{counts['nodes']} nodes: "
        f"types {counts['type_known']}/{counts['nodes']}, "
        f"parameters {counts['params_valid']}/{counts['nodes']}, "
        f"pins {counts['pins_valid']}/{counts['nodes']} "
        f"({rates.node_rate}/{rates.param_rate}/{rates.pin_rate})"
    )
    failing = [n for n in report.nodes if n.diagnostics]
    for verdict in failing:
        for diagnostic in verdict.diagnostics:
            print(f"  {verdict.node_uid} ({verdict.node_type}): {diagnostic}")
    return EXIT_OK if report.all_valid else EXIT_STAGE


# -- playtest ------------------------------------------------------------------


def _stage_payload(bundle_dir: Path, filename: str, key: str) -> object:
    payload = _load_json(bundle_dir / filename)
    if key not in payload:
        raise ParseError(f"{bundle_dir / filename} lacks the '{key}' field")
    return payload[key]


def _cmd_playtest(args: argparse.Namespace) -> int:
    bundle_dir = Path(args.bundle_dir)
    manifest = _load_json(bundle_dir / "manifest.json")
    run = manifest.get("run")
    if not isinstance(run, dict):
        raise ParseError(
            f"{bundle_dir / 'manifest.json'} carries no run settings; "
            "regenerate the bundle to play-test it"
        )

    graph = _stage_payload(bundle_dir, "04_GraphSpec.json", "graph")
    modules = _stage_payload(bundle_dir, "05_Modules.json", "modules")
    interactions = _stage_payload(bundle_dir, "06_Interactions.json", "interactions")
    commands = _stage_payload(bundle_dir, "07_TestPlan.json", "commands")
    plan = tuple(TestCommand.from_dict(c) for c in commands)

    bridge = InProcessBridge()
    bridge.call_tool("import_graph", {"graph": graph})
    placed = bridge.call_tool(
        "execute_graph",
        {"seed": run["task"]["seed"], "bounds": run["bounds"]},
    )
    bridge.call_tool(
        "register_modules", {"modules": modules, "interactions": interactions}
    )
    bridge.call_tool(
        "spawn_world",
        {
            "interaction_radius": run["interaction_radius"],
            "visibility_radius": run["visibility_radius"],
        },
    )
    trace = run_tests(plan, bridge)

    print(f"world rebuilt with {placed['instances']} instances")
    for outcome in trace.outcomes:
        command = outcome.command
        label = f"{command.kind} {command.object_name}"
        if command.action:
            label += f" ({command.action})"
        status = "ok  " if outcome.ok else "FAIL"
        detail = f": {outcome.detail}" if outcome.detail and not outcome.ok else ""
        print(f"  {status} {label}{detail}")
    print(f"{trace.passed} passed, {trace.failed} failed")

    recorded_path = bundle_dir / "08_Trace.json"
    if recorded_path.is_file():
        recorded = ExecutionTrace.from_dict(_load_json(recorded_path))
        same = recorded.to_dict()["outcomes"] == trace.to_dict()["outcomes"]
        print(
            "replay matches the recorded trace"
            if same
            else "replay DIVERGES from the recorded trace"
        )
    return EXIT_OK if trace.all_passed else EXIT_STAGE


# -- evaluate ------------------------------------------------------------------


def _cmd_evaluate(args: argparse.Namespace) -> int:
    bundle_dir = Path(args.bundle_dir)
    if not bundle_dir.is_dir():
        raise ParseError(f"{bundle_dir} is not a directory")
    report_files = sorted(bundle_dir.glob("09_Report.json")) + sorted(
        bundle_dir.glob("*/09_Report.json")
    )
    if not report_files:
        raise ParseError(f"no evaluation reports under {bundle_dir}")
    reports = []
    for path in report_files:
        try:
            reports.append(EvaluationReport.from_dict(_load_json(path)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"{path} is not an evaluation report: {exc}") from exc
    for report in reports:
        print(
            f"{report.task_id} ({report.difficulty}): "
            f"game {report.game_score} gcs {report.gcs} "
            f"pcg {report.pcg.node_rate}/{report.pcg.param_rate}/{report.pcg.pin_rate} "
            f"tests {report.commands_passed}/"
            f"{report.commands_passed + report.commands_failed} ok"
        )
    print()
    print(render_table(reports))
    return EXIT_OK


# -- index build ---------------------------------------------------------------


def _cmd_index_build(args: argparse.Namespace) -> int:
    index = build_index(args.manifest)
    save_index(index, args.out)
    print(f"indexed {len(index.records)} assets (dim {index.dim}) -> {args.out}")
    return EXIT_OK


# -- dataset stats ---------------------------------------------------------------


def _cmd_dataset_stats(args: argparse.Namespace) -> int:
    stats = dataset_stats(load_dataset(args.task_file))
    print(f"total: {stats['total']}")
    for difficulty, count in stats["by_difficulty"].items():
        print(f"{difficulty}: {count}")
    return EXIT_OK


# -- bridge serve ----------------------------------------------------------------


def _cmd_bridge_serve(args: argparse.Namespace) -> int:
    if args.tcp is not None:
        print(f"bridge listening on 127.0.0.1:{args.tcp}", file=sys.stderr)
        try:
            serve_tcp("127.0.0.1", args.tcp)
        except KeyboardInterrupt:
            pass
        return EXIT_OK
    serve_stdio()
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gameforge",
        description="Generate, validate, play-test, and evaluate game bundles.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    generate = sub.add_parser(
        "generate", help="run the pipeline over a task file"
    )
    generate.add_argument("task_file", type=Path)
    generate.add_argument("--task", metavar="ID", help="run only this task id")
    generate.add_argument(
        "--workspace", metavar="DIR", default="workspace",
        help="directory for per-task artifact bundles (default: workspace)",
    )
    generate.add_argument(
        "--backend", choices=("mock", "http"), default="mock",
        help="LLM backend (http reads GAMEFORGE_BACKEND_URL)",
    )
    generate.add_argument(
        "--seed", type=int, metavar="N",
        help="override every selected task's seed",
    )
    generate.set_defaults(handler=_cmd_generate)

    validate = sub.add_parser(
        "validate-graph", help="check a serialized scene graph against the registry"
    )
    validate.add_argument("graph_file", type=Path)
    validate.set_defaults(handler=_cmd_validate_graph)

    playtest = sub.add_parser(
        "playtest", help="rebuild a bundle's world and rerun its test plan"
    )
    playtest.add_argument("bundle_dir", type=Path)
    playtest.set_defaults(handler=_cmd_playtest)

    evaluate = sub.add_parser(
        "evaluate", help="print score tables from saved evaluation reports"
    )
    evaluate.add_argument("bundle_dir", type=Path)
    evaluate.set_defaults(handler=_cmd_evaluate)

    index = sub.add_parser("index", help="asset index maintenance")
    index_sub = index.add_subparsers(dest="index_command", required=True)
    index_build = index_sub.add_parser(
        "build", help="embed a corpus manifest into a binary index"
    )
    index_build.add_argument("manifest", type=Path)
    index_build.add_argument("out", type=Path)
    index_build.set_defaults(handler=_cmd_index_build)

    dataset = sub.add_parser("dataset", help="task dataset utilities")
    dataset_sub = dataset.add_subparsers(dest="dataset_command", required=True)
    stats = dataset_sub.add_parser("stats", help="count tasks by difficulty")
    stats.add_argument("task_file", type=Path)
    stats.set_defaults(handler=_cmd_dataset_stats)

    bridge = sub.add_parser("bridge", help="virtual engine bridge server")
    bridge_sub = bridge.add_subparsers(dest="bridge_command", required=True)
    serve = bridge_sub.add_parser("serve", help="serve the engine tool API")
    transport = serve.add_mutually_exclusive_group()
    transport.add_argument(
        "--stdio", action="store_true", help="serve over stdin/stdout (default)"
    )
    transport.add_argument(
        "--tcp", type=int, metavar="PORT", help="serve over TCP on this port"
    )
    serve.set_defaults(handler=_cmd_bridge_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except StageFailure as exc:
        _fail(str(exc))
        return EXIT_STAGE
    except GameForgeError as exc:
        _fail(str(exc))
        return EXIT_CONFIG
    except OSError as exc:
        _fail(str(exc))
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

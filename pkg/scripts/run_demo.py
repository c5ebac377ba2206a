"""Run the full offline pipeline over the sample tasks and print the tables.

Usage: python3 scripts/run_demo.py [--workspace DIR] [--tasks FILE]
"""

from __future__ import annotations

import argparse
import sys
import tempfile
from pathlib import Path

from gameforge.config import PipelineConfig, fixture_path, make_gateway
from gameforge.errors import GameForgeError
from gameforge.evaluate.report import render_table
from gameforge.pcg.docs import chunk_documents
from gameforge.pipeline.run import run_pipeline, verify_bundle
from gameforge.pipeline.tasks import dataset_stats, load_dataset
from gameforge.retrieval.index import build_index


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workspace", type=Path, default=None)
    parser.add_argument(
        "--tasks", type=Path, default=fixture_path("sample_tasks.json")
    )
    args = parser.parse_args()

    tasks = load_dataset(args.tasks)
    stats = dataset_stats(tasks)
    print(f"{stats['total']} tasks: {stats['by_difficulty']}")

    config = PipelineConfig()
    gateway = make_gateway(config)
    index = build_index(config.manifest)
    chunks = chunk_documents(config.docs_dir)

    keep = args.workspace is not None
    root = args.workspace or Path(tempfile.mkdtemp(prefix="gameforge-demo-"))
    reports = []
    for task in tasks:
        try:
            bundle = run_pipeline(
                task,
                config,
                gateway=gateway,
                index=index,
                chunks=chunks,
                workspace_root=root,
            )
        except GameForgeError as exc:
            print(f"{task.task_id}: FAILED ({exc})", file=sys.stderr)
            return 1
        problems = verify_bundle(bundle)
        status = "coherent" if not problems else f"PROBLEMS: {problems}"
        print(
            f"{task.task_id}: {len(bundle.layout.instances)} instances, "
            f"{len(bundle.modules)} modules, {len(bundle.interactions)} "
            f"interactions, tests {bundle.trace.passed}/"
            f"{len(bundle.trace.outcomes)}, {status}"
        )
        reports.append(bundle.report)

    print()
    print(render_table(reports))
    where = root if keep else f"{root} (temporary)"
    print(f"\nartifact bundles: {where}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

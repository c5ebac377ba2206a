#!/usr/bin/env python3
"""Record the replay scripts bundled as fixtures.

Runs the rule-based author against every prompt the pipeline issues for
the bundled task set (full runs plus both ablations) and saves the
responses keyed by prompt fingerprint. The scripted mock backend replays
these files; any drift between recorded and live prompts shows up as a
loud replay miss, at which point this script is rerun to refresh them.
"""

from __future__ import annotations

import argparse
import tempfile
from pathlib import Path

from gameforge.config import ABLATIONS, PipelineConfig, fixture_path
from gameforge.gateway.author import SyntheticAuthor
from gameforge.gateway.backends import RecordingBackend
from gameforge.gateway.core import LlmGateway
from gameforge.pipeline.run import ablation_validation, run_pipeline
from gameforge.pipeline.tasks import load_dataset

SCRIPT_FILES = {
    "full": "mock_script.json",
    "no-patterns": "mock_ablation_no_patterns.json",
    "no-params": "mock_ablation_no_params.json",
}


def record_full(tasks, out_path: Path) -> int:
    config = PipelineConfig()
    backend = RecordingBackend(SyntheticAuthor())
    gateway = LlmGateway(backend, attempts=config.attempts)
    with tempfile.TemporaryDirectory() as tmp:
        for task in tasks:
            run_pipeline(task, config, gateway=gateway, workspace_root=tmp)
    backend.save(out_path)
    return len(backend.entries)


def record_ablation(tasks, ablation: str, out_path: Path) -> int:
    config = PipelineConfig(ablation=ablation)
    backend = RecordingBackend(SyntheticAuthor())
    gateway = LlmGateway(backend, attempts=config.attempts)
    ablation_validation(tasks, config, gateway=gateway)
    backend.save(out_path)
    return len(backend.entries)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--fixtures-dir",
        type=Path,
        default=Path(fixture_path("sample_tasks.json")).parent,
    )
    args = parser.parse_args()
    tasks = load_dataset(args.fixtures_dir / "sample_tasks.json")
    for ablation in ABLATIONS:
        out_path = args.fixtures_dir / SCRIPT_FILES[ablation]
        if ablation == "full":
            count = record_full(tasks, out_path)
        else:
            count = record_ablation(tasks, ablation, out_path)
        print(f"{ablation}: {count} entries -> {out_path}")


if __name__ == "__main__":
    main()

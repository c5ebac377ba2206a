"""Stage artifacts: canonical serialization, checksums, and the workspace."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from pathlib import Path


class Stage(str, Enum):
    DECOMPOSE = "Decompose"
    OBJECTS = "Objects"
    RETRIEVAL = "Retrieval"
    GRAPH_PLAN = "GraphPlan"
    GRAPH_SPEC = "GraphSpec"
    MODULES = "Modules"
    INTERACTIONS = "Interactions"
    TEST_PLAN = "TestPlan"
    TRACE = "Trace"
    REPORT = "Report"


STAGE_ORDER = tuple(Stage)


def canonical_bytes(payload: dict) -> bytes:
    """Stable byte encoding; identical payloads always hash identically."""
    return (json.dumps(payload, indent=1, sort_keys=True) + "\n").encode("utf-8")


def checksum(payload: dict) -> str:
    return hashlib.sha256(canonical_bytes(payload)).hexdigest()


@dataclass(frozen=True)
class StageArtifact:
    stage: Stage
    payload: dict

    @property
    def sha256(self) -> str:
        return checksum(self.payload)

    def filename(self) -> str:
        return f"{STAGE_ORDER.index(self.stage):02d}_{self.stage.value}.json"


class Workspace:
    """One directory per task holding each stage's artifact and a manifest."""

    def __init__(self, root: str | Path, task_id: str):
        self.task_id = task_id
        self.dir = Path(root) / task_id
        self.dir.mkdir(parents=True, exist_ok=True)
        self.artifacts: dict[Stage, StageArtifact] = {}

    def record(self, stage: Stage, payload: dict) -> StageArtifact:
        artifact = StageArtifact(stage=stage, payload=payload)
        (self.dir / artifact.filename()).write_bytes(canonical_bytes(payload))
        self.artifacts[stage] = artifact
        return artifact

    def write_manifest(self, run: dict | None = None) -> Path:
        manifest = {
            "task_id": self.task_id,
            "stages": {
                artifact.stage.value: {
                    "file": artifact.filename(),
                    "sha256": artifact.sha256,
                }
                for artifact in self.artifacts.values()
            },
        }
        if run is not None:
            manifest["run"] = run
        path = self.dir / "manifest.json"
        path.write_bytes(canonical_bytes(manifest))
        return path

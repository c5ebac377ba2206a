from gameforge.pipeline.artifacts import (
    STAGE_ORDER,
    Stage,
    StageArtifact,
    Workspace,
    canonical_bytes,
    checksum,
)
from gameforge.pipeline.run import (
    GameBundle,
    ablation_validation,
    decompose_description,
    evaluate_bundle,
    run_pipeline,
    verify_bundle,
)
from gameforge.pipeline.tasks import (
    DIFFICULTIES,
    TaskSpec,
    dataset_stats,
    load_dataset,
    partition,
)

__all__ = [
    "DIFFICULTIES",
    "GameBundle",
    "ablation_validation",
    "STAGE_ORDER",
    "Stage",
    "StageArtifact",
    "TaskSpec",
    "Workspace",
    "canonical_bytes",
    "checksum",
    "dataset_stats",
    "decompose_description",
    "evaluate_bundle",
    "load_dataset",
    "partition",
    "run_pipeline",
    "verify_bundle",
]

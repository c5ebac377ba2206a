"""Run configuration shared by the CLI, the pipeline, and the test suite."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from gameforge.engine.execute import DEFAULT_BOUNDS, Box
from gameforge.engine.runtime import INTERACTION_RADIUS, VISIBILITY_RADIUS
from gameforge.gateway.backends import (
    BACKEND_URL_ENV,
    DEFAULT_MODEL,
    HttpBackend,
    ScriptedBackend,
)
from gameforge.gateway.core import LlmGateway

ABLATIONS = ("full", "no-patterns", "no-params")


def fixture_path(name: str) -> Path:
    """Resolve a file shipped inside the package's fixtures directory."""
    return Path(str(resources.files("gameforge") / "fixtures" / name))


def _default_mock_script(ablation: str) -> Path:
    by_ablation = {
        "full": "mock_script.json",
        "no-patterns": "mock_ablation_no_patterns.json",
        "no-params": "mock_ablation_no_params.json",
    }
    return fixture_path(by_ablation[ablation])


@dataclass
class PipelineConfig:
    backend: str = "mock"  # mock | http
    mock_script: Path | None = None
    model: str = DEFAULT_MODEL
    backend_url: str = ""
    attempts: int = 3
    retrieval_k: int = 20
    doc_chunks: int = 5
    docs_dir: Path = field(default_factory=lambda: fixture_path("docs"))
    manifest: Path = field(default_factory=lambda: fixture_path("corpus_manifest.jsonl"))
    constraints_path: Path = field(
        default_factory=lambda: fixture_path("engine_constraints.json")
    )
    bounds: Box = DEFAULT_BOUNDS
    interaction_radius: float = INTERACTION_RADIUS
    visibility_radius: float = VISIBILITY_RADIUS
    ablation: str = "full"

    def __post_init__(self):
        if self.ablation not in ABLATIONS:
            raise ValueError(f"ablation must be one of {ABLATIONS}")
        if self.backend not in ("mock", "http"):
            raise ValueError("backend must be 'mock' or 'http'")
        if self.mock_script is None:
            self.mock_script = _default_mock_script(self.ablation)

    @property
    def enforce_patterns(self) -> bool:
        return self.ablation != "no-patterns"

    @property
    def strict_parameters(self) -> bool:
        return self.ablation != "no-params"


def make_gateway(config: PipelineConfig) -> LlmGateway:
    if config.backend == "http":
        url = config.backend_url or os.environ.get(BACKEND_URL_ENV, "")
        backend = HttpBackend(url=url, model=config.model)
    else:
        backend = ScriptedBackend.from_file(config.mock_script)
    return LlmGateway(backend, attempts=config.attempts)

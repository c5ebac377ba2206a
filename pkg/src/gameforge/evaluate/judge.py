"""Rubric-based quality judging over evidence bundles."""

from __future__ import annotations

import json
from dataclasses import dataclass

from gameforge.gateway.core import LlmGateway
from gameforge.gateway.templates import TEMPLATES

JUDGE_TEMPLATES = ("JudgeGame", "JudgePcg", "JudgeCode")


@dataclass(frozen=True)
class GameJudgeScores:
    scene: float
    gameplay: float
    visual: float

    def to_dict(self) -> dict:
        return {"scene": self.scene, "gameplay": self.gameplay, "visual": self.visual}

    @classmethod
    def from_dict(cls, data: dict) -> "GameJudgeScores":
        return cls(
            scene=float(data["scene"]),
            gameplay=float(data["gameplay"]),
            visual=float(data["visual"]),
        )


@dataclass(frozen=True)
class CodeJudgeScores:
    mas: float
    mcs: float
    iis: float

    def to_dict(self) -> dict:
        return {"mas": self.mas, "mcs": self.mcs, "iis": self.iis}

    @classmethod
    def from_dict(cls, data: dict) -> "CodeJudgeScores":
        return cls(
            mas=float(data["mas"]),
            mcs=float(data["mcs"]),
            iis=float(data["iis"]),
        )


def _bindings(difficulty: str, evidence: dict) -> dict[str, str]:
    return {
        "difficulty": difficulty,
        "evidence_json": json.dumps(evidence, indent=1, sort_keys=True),
    }


def judge_game(gateway: LlmGateway, difficulty: str, evidence: dict) -> GameJudgeScores:
    payload = gateway.complete_structured(
        TEMPLATES["JudgeGame"], _bindings(difficulty, evidence)
    )
    return GameJudgeScores(
        scene=float(payload["scene"]),
        gameplay=float(payload["gameplay"]),
        visual=float(payload["visual"]),
    )


def judge_pcg(gateway: LlmGateway, difficulty: str, evidence: dict) -> float:
    payload = gateway.complete_structured(
        TEMPLATES["JudgePcg"], _bindings(difficulty, evidence)
    )
    return float(payload["score"])


def judge_code(gateway: LlmGateway, difficulty: str, evidence: dict) -> CodeJudgeScores:
    payload = gateway.complete_structured(
        TEMPLATES["JudgeCode"], _bindings(difficulty, evidence)
    )
    return CodeJudgeScores(
        mas=float(payload["mas"]),
        mcs=float(payload["mcs"]),
        iis=float(payload["iis"]),
    )


def judge_provenance(gateway: LlmGateway) -> dict:
    """Recorded with every evaluation so scores can be traced to a judge."""
    return {
        "backend": gateway.backend_id,
        "templates": {name: TEMPLATES[name].version for name in JUDGE_TEMPLATES},
    }

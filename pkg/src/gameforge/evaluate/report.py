"""Per-task evaluation reports and aggregate tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from gameforge.engine.validate import ValidationReport
from gameforge.errors import EmptyReport
from gameforge.evaluate.judge import CodeJudgeScores, GameJudgeScores
from gameforge.evaluate.scoring import (
    PcgSuccess,
    aggregate_game_score,
    compute_gcs,
    compute_pcg_success,
    mean_score,
)
from gameforge.evaluate.testplan import ExecutionTrace

DIFFICULTIES = ("Easy", "Medium", "Hard")


@dataclass(frozen=True)
class EvaluationReport:
    """Everything the evaluator concluded about one generated game."""

    task_id: str
    difficulty: str
    pcg: PcgSuccess
    validation_counts: dict[str, int]
    pcg_judge: float
    game_judge: GameJudgeScores
    code_judge: CodeJudgeScores
    compiled: bool
    commands_passed: int
    commands_failed: int
    provenance: dict = field(default_factory=dict)

    @property
    def gcs(self) -> float:
        return compute_gcs(
            self.code_judge.mas,
            self.code_judge.mcs,
            self.code_judge.iis,
            compiled=self.compiled,
        )

    @property
    def game_score(self) -> float:
        return aggregate_game_score(
            self.game_judge.scene, self.game_judge.gameplay, self.game_judge.visual
        )

    def to_dict(self) -> dict:
        return {
            "task_id": self.task_id,
            "difficulty": self.difficulty,
            "pcg": self.pcg.to_dict(),
            "validation_counts": dict(self.validation_counts),
            "pcg_judge": self.pcg_judge,
            "game_judge": self.game_judge.to_dict(),
            "code_judge": self.code_judge.to_dict(),
            "compiled": self.compiled,
            "commands_passed": self.commands_passed,
            "commands_failed": self.commands_failed,
            "gcs": self.gcs,
            "game_score": self.game_score,
            "provenance": dict(self.provenance),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EvaluationReport":
        return cls(
            task_id=data["task_id"],
            difficulty=data["difficulty"],
            pcg=PcgSuccess(**data["pcg"]),
            validation_counts={k: int(v) for k, v in data["validation_counts"].items()},
            pcg_judge=float(data["pcg_judge"]),
            game_judge=GameJudgeScores.from_dict(data["game_judge"]),
            code_judge=CodeJudgeScores.from_dict(data["code_judge"]),
            compiled=bool(data["compiled"]),
            commands_passed=int(data["commands_passed"]),
            commands_failed=int(data["commands_failed"]),
            provenance=dict(data.get("provenance", {})),
        )


def build_report(
    task_id: str,
    difficulty: str,
    validation: ValidationReport,
    trace: ExecutionTrace,
    pcg_judge: float,
    game_judge: GameJudgeScores,
    code_judge: CodeJudgeScores,
    compiled: bool,
    provenance: dict | None = None,
) -> EvaluationReport:
    return EvaluationReport(
        task_id=task_id,
        difficulty=difficulty,
        pcg=compute_pcg_success(validation),
        validation_counts=validation.counts(),
        pcg_judge=pcg_judge,
        game_judge=game_judge,
        code_judge=code_judge,
        compiled=compiled,
        commands_passed=trace.passed,
        commands_failed=trace.failed,
        provenance=dict(provenance or {}),
    )


def _pooled_rates(reports: Sequence[EvaluationReport]) -> PcgSuccess:
    totals = {"nodes": 0, "type_known": 0, "params_valid": 0, "pins_valid": 0}
    for report in reports:
        for key in totals:
            totals[key] += report.validation_counts.get(key, 0)
    if totals["nodes"] == 0:
        raise EmptyReport("no validated nodes across reports")
    from gameforge.evaluate.scoring import _rate  # same rounding as per-task rates

    return PcgSuccess(
        node_rate=_rate(totals["type_known"], totals["nodes"]),
        param_rate=_rate(totals["params_valid"], totals["nodes"]),
        pin_rate=_rate(totals["pins_valid"], totals["nodes"]),
    )


def summarize(reports: Sequence[EvaluationReport]) -> dict:
    """Aggregate rows keyed by difficulty tier plus an "All" row."""
    if not reports:
        raise EmptyReport("no evaluation reports to summarize")
    rows: dict[str, dict] = {}
    groups = [(d, [r for r in reports if r.difficulty == d]) for d in DIFFICULTIES]
    groups.append(("All", list(reports)))
    for name, group in groups:
        if not group:
            continue
        pooled = _pooled_rates(group)
        rows[name] = {
            "tasks": len(group),
            "node_rate": pooled.node_rate,
            "param_rate": pooled.param_rate,
            "pin_rate": pooled.pin_rate,
            "pcg_judge": mean_score([r.pcg_judge for r in group]),
            "gcs": mean_score([r.gcs for r in group]),
            "game_score": mean_score([r.game_score for r in group]),
            "compiled": sum(1 for r in group if r.compiled),
        }
    return rows


def render_table(reports: Sequence[EvaluationReport]) -> str:
    rows = summarize(reports)
    headers = (
        "tier", "tasks", "S_node", "S_param", "S_pin",
        "pcg", "gcs", "game", "compiled",
    )
    lines = []
    table = [headers]
    for name, row in rows.items():
        table.append((
            name,
            str(row["tasks"]),
            f"{row['node_rate']:.1f}",
            f"{row['param_rate']:.1f}",
            f"{row['pin_rate']:.1f}",
            f"{row['pcg_judge']:.2f}",
            f"{row['gcs']:.2f}",
            f"{row['game_score']:.2f}",
            f"{row['compiled']}/{row['tasks']}",
        ))
    widths = [max(len(r[i]) for r in table) for i in range(len(headers))]
    for i, row in enumerate(table):
        lines.append("  ".join(cell.ljust(widths[j]) for j, cell in enumerate(row)))
        if i == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)

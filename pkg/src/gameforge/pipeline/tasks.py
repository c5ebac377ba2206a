"""Benchmark task descriptions grouped into difficulty tiers."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from gameforge.errors import ParseError

DIFFICULTIES = ("Easy", "Medium", "Hard")


@dataclass(frozen=True)
class TaskSpec:
    task_id: str
    difficulty: str
    description: str
    seed: int = 0

    def to_dict(self) -> dict:
        return {
            "task_id": self.task_id,
            "difficulty": self.difficulty,
            "description": self.description,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TaskSpec":
        return cls(
            task_id=data["task_id"],
            difficulty=data["difficulty"],
            description=data["description"],
            seed=int(data.get("seed", 0)),
        )


def load_dataset(path: str | Path) -> tuple[TaskSpec, ...]:
    """Load a task file: a UTF-8 JSON array of task objects.

    An empty or whitespace-only file counts as an empty dataset.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"task file {path}: {exc}") from exc
    if not text.strip():
        return ()
    try:
        entries = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"task file {path}: {exc}") from exc
    if not isinstance(entries, list):
        raise ParseError(f"task file {path}: expected a JSON array of task objects")
    problems: list[str] = []
    tasks: list[TaskSpec] = []
    seen: set[str] = set()
    for position, entry in enumerate(entries):
        if not isinstance(entry, dict):
            problems.append(f"tasks[{position}]: not an object")
            continue
        try:
            task = TaskSpec.from_dict(entry)
        except (KeyError, TypeError, ValueError) as exc:
            problems.append(f"tasks[{position}]: {exc!r}")
            continue
        if task.difficulty not in DIFFICULTIES:
            problems.append(
                f"tasks[{position}]: difficulty {task.difficulty!r} "
                f"not one of {DIFFICULTIES}"
            )
            continue
        if not task.description.strip():
            problems.append(f"tasks[{position}]: empty description")
            continue
        if task.task_id in seen:
            problems.append(f"tasks[{position}]: duplicate task_id {task.task_id}")
            continue
        seen.add(task.task_id)
        tasks.append(task)
    if problems:
        raise ParseError(f"task file {path}: " + "; ".join(problems))
    return tuple(tasks)


def partition(tasks: tuple[TaskSpec, ...]) -> dict[str, list[TaskSpec]]:
    groups: dict[str, list[TaskSpec]] = {d: [] for d in DIFFICULTIES}
    for task in tasks:
        groups[task.difficulty].append(task)
    return groups


def dataset_stats(tasks: tuple[TaskSpec, ...]) -> dict:
    groups = partition(tasks)
    return {
        "total": len(tasks),
        "by_difficulty": {d: len(groups[d]) for d in DIFFICULTIES},
    }

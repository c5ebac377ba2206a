"""Structured output schemas for backend responses.

A schema is a flat-to-nested tree of field descriptors. Validation returns
a list of human-readable diagnostics; an empty list means the payload is
accepted. Checks are independent per field, so the verdict does not depend
on field order.
"""

from __future__ import annotations

from dataclasses import dataclass

KINDS = ("text", "number", "integer", "enum", "list", "object")


@dataclass(frozen=True)
class Field:
    name: str
    kind: str
    required: bool = True
    minimum: float | None = None
    maximum: float | None = None
    choices: tuple[str, ...] | None = None
    item: "Field | None" = None
    fields: "tuple[Field, ...] | None" = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "enum" and not self.choices:
            raise ValueError(f"enum field {self.name!r} needs choices")


@dataclass(frozen=True)
class StructuredSchema:
    fields: tuple[Field, ...]

    def validate(self, payload: object) -> list[str]:
        """Check payload against the schema; return diagnostics, [] = ok."""
        if not isinstance(payload, dict):
            return ["top-level value must be an object"]
        return _validate_object(payload, self.fields, path="")


def _validate_object(value: dict, fields: tuple[Field, ...], path: str) -> list[str]:
    problems: list[str] = []
    for field in fields:
        label = f"{path}.{field.name}" if path else field.name
        if field.name not in value:
            if field.required:
                problems.append(f"missing required field {label}")
            continue
        problems.extend(_validate_value(value[field.name], field, label))
    return problems


def _validate_value(value: object, field: Field, label: str) -> list[str]:
    kind = field.kind
    if kind == "text":
        if not isinstance(value, str):
            return [f"{label}: expected text"]
        return []
    if kind == "integer":
        # bool is an int subclass; reject it so flags must be explicit 0/1
        if isinstance(value, bool) or not isinstance(value, int):
            return [f"{label}: expected integer"]
        return _check_range(value, field, label)
    if kind == "number":
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            return [f"{label}: expected number"]
        return _check_range(value, field, label)
    if kind == "enum":
        if not isinstance(value, str) or value not in (field.choices or ()):
            return [f"{label}: expected one of {sorted(field.choices or ())}"]
        return []
    if kind == "list":
        if not isinstance(value, list):
            return [f"{label}: expected list"]
        if field.item is None:
            return []
        problems: list[str] = []
        for i, element in enumerate(value):
            problems.extend(_validate_value(element, field.item, f"{label}[{i}]"))
        return problems
    if kind == "object":
        if not isinstance(value, dict):
            return [f"{label}: expected object"]
        if field.fields is None:
            return []
        return _validate_object(value, field.fields, label)
    raise AssertionError(f"unreachable kind {kind}")


def _check_range(value: float, field: Field, label: str) -> list[str]:
    if field.minimum is not None and value < field.minimum:
        return [f"{label}: {value} below minimum {field.minimum}"]
    if field.maximum is not None and value > field.maximum:
        return [f"{label}: {value} above maximum {field.maximum}"]
    return []

"""Prompt rendering and the structured completion loop."""

from __future__ import annotations

import hashlib
import json
import logging
import re
from typing import Mapping, Protocol

from gameforge.errors import GatewayError, MalformedOutput, UnboundPlaceholder
from gameforge.gateway.templates import PromptTemplate

log = logging.getLogger(__name__)

_PLACEHOLDER = re.compile(r"<<(\w+)>>")


def render_prompt(template: PromptTemplate, bindings: Mapping[str, str]) -> str:
    """Substitute every placeholder in one pass; inserted text is verbatim."""

    def _lookup(match: re.Match) -> str:
        name = match.group(1)
        if name not in bindings:
            raise UnboundPlaceholder(
                f"template {template.name}: no binding for <<{name}>>"
            )
        return bindings[name]

    return _PLACEHOLDER.sub(_lookup, template.body)


def fingerprint(prompt: str) -> str:
    """Stable identity of a rendered prompt, used to key scripted replies."""
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class Backend(Protocol):
    backend_id: str

    def complete(
        self, template: PromptTemplate, prompt: str, bindings: Mapping[str, str]
    ) -> str: ...


class LlmGateway:
    """Renders prompts, calls a backend, and enforces output schemas.

    A malformed response is retried with the validator diagnostics appended
    to the prompt; transport failures are retried with the prompt unchanged.
    ``attempts`` bounds the total number of backend calls.
    """

    def __init__(self, backend: Backend, attempts: int = 3):
        if attempts < 1:
            raise ValueError("attempts must be at least 1")
        self.backend = backend
        self.attempts = attempts

    @property
    def backend_id(self) -> str:
        return self.backend.backend_id

    def complete_structured(
        self, template: PromptTemplate, bindings: Mapping[str, str]
    ) -> dict:
        prompt = render_prompt(template, bindings)
        last_problems: list[str] = []
        last_transport: GatewayError | None = None
        for attempt in range(1, self.attempts + 1):
            try:
                raw = self.backend.complete(template, prompt, bindings)
            except GatewayError as exc:
                last_transport = exc
                log.warning(
                    "%s attempt %d/%d failed: %s",
                    template.name, attempt, self.attempts, exc,
                )
                continue
            payload, problems = _parse(raw)
            if payload is not None:
                problems = template.output_schema.validate(payload)
                if not problems:
                    return payload
            last_problems = problems
            prompt = (
                prompt
                + "\n\nYour previous reply was rejected by the validator:\n- "
                + "\n- ".join(problems)
                + "\nRespond again with corrected JSON only."
            )
        if last_transport is not None and not last_problems:
            raise GatewayError(
                f"{template.name}: backend unreachable after "
                f"{self.attempts} attempts: {last_transport}"
            )
        raise MalformedOutput(
            f"{template.name}: schema still violated after {self.attempts} "
            f"attempts: {'; '.join(last_problems)}"
        )


def _parse(raw: str) -> tuple[dict | None, list[str]]:
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        return None, [f"response is not valid JSON: {exc.msg}"]
    if not isinstance(payload, dict):
        return None, ["top-level value must be an object"]
    return payload, []

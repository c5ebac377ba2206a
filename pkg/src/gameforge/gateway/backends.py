"""Backend implementations: scripted replay, HTTP chat endpoint, recorder."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Callable, Mapping

import requests

from gameforge.errors import GatewayError, MockScriptMiss, ParseError
from gameforge.gateway.core import fingerprint
from gameforge.gateway.templates import PromptTemplate

log = logging.getLogger(__name__)

BACKEND_URL_ENV = "GAMEFORGE_BACKEND_URL"
DEFAULT_MODEL = "qwen-plus"


def script_key(template_name: str, prompt_fingerprint: str) -> str:
    return f"{template_name}:{prompt_fingerprint}"


class ScriptedBackend:
    """Replays canned responses keyed by (template, prompt fingerprint).

    A missing entry raises; the scripted backend never improvises, so any
    drift between recorded prompts and live prompts fails loudly.
    """

    def __init__(self, entries: Mapping[str, str], backend_id: str = "mock"):
        self.entries = dict(entries)
        self.backend_id = backend_id

    @classmethod
    def from_file(cls, path: str | Path) -> "ScriptedBackend":
        path = Path(path)
        try:
            entries = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"mock script {path}: {exc}") from exc
        if not isinstance(entries, dict) or not all(
            isinstance(v, str) for v in entries.values()
        ):
            raise ParseError(f"mock script {path}: expected an object of strings")
        return cls(entries, backend_id=f"mock:{path.name}")

    def complete(
        self, template: PromptTemplate, prompt: str, bindings: Mapping[str, str]
    ) -> str:
        key = script_key(template.name, fingerprint(prompt))
        try:
            return self.entries[key]
        except KeyError:
            raise MockScriptMiss(
                f"no scripted response for {template.name} "
                f"(fingerprint {fingerprint(prompt)[:12]}...)"
            ) from None


class HttpBackend:
    """Talks to a single chat-completion endpoint over HTTP."""

    def __init__(
        self,
        url: str,
        model: str = DEFAULT_MODEL,
        temperature: float = 0.0,
        timeout: float = 60.0,
    ):
        if not url:
            raise GatewayError(
                f"no backend URL configured; set {BACKEND_URL_ENV} or pass --backend-url"
            )
        self.url = url
        self.model = model
        self.temperature = temperature
        self.timeout = timeout
        self.backend_id = f"http:{model}"

    def complete(
        self, template: PromptTemplate, prompt: str, bindings: Mapping[str, str]
    ) -> str:
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": prompt}],
            "temperature": self.temperature,
        }
        try:
            response = requests.post(self.url, json=body, timeout=self.timeout)
            response.raise_for_status()
        except requests.RequestException as exc:
            raise GatewayError(f"backend request failed: {exc}") from exc
        return _extract_text(response)


def _extract_text(response: requests.Response) -> str:
    try:
        payload = response.json()
    except ValueError:
        return response.text
    if isinstance(payload, dict):
        if isinstance(payload.get("text"), str):
            return payload["text"]
        choices = payload.get("choices")
        if isinstance(choices, list) and choices:
            message = choices[0].get("message", {})
            if isinstance(message.get("content"), str):
                return message["content"]
    return response.text


class RecordingBackend:
    """Runs a deterministic author function and records a replay script."""

    def __init__(
        self,
        author: Callable[[PromptTemplate, str, Mapping[str, str]], str],
        backend_id: str = "recorder",
    ):
        self.author = author
        self.backend_id = backend_id
        self.entries: dict[str, str] = {}

    def complete(
        self, template: PromptTemplate, prompt: str, bindings: Mapping[str, str]
    ) -> str:
        response = self.author(template, prompt, bindings)
        self.entries[script_key(template.name, fingerprint(prompt))] = response
        return response

    def save(self, path: str | Path) -> None:
        Path(path).write_text(
            json.dumps(self.entries, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )

# The rule-based author is not re-exported here: it imports the pcg
# planner, which reaches back into this package during initialization.
# Import it as gameforge.gateway.author instead.
from gameforge.gateway.backends import (
    HttpBackend,
    RecordingBackend,
    ScriptedBackend,
    script_key,
)
from gameforge.gateway.core import LlmGateway, fingerprint, render_prompt
from gameforge.gateway.schema import Field, StructuredSchema
from gameforge.gateway.templates import TEMPLATES, PromptTemplate

__all__ = [
    "Field",
    "HttpBackend",
    "LlmGateway",
    "PromptTemplate",
    "RecordingBackend",
    "ScriptedBackend",
    "StructuredSchema",
    "TEMPLATES",
    "fingerprint",
    "render_prompt",
    "script_key",
]

"""Exception types shared across the pipeline."""

from __future__ import annotations


class GameForgeError(Exception):
    """Base class for all package-specific failures."""


# --- input / parsing ------------------------------------------------------

class ParseError(GameForgeError):
    """Malformed input file (task list, corpus manifest, graph file, ...)."""


class MalformedInput(GameForgeError):
    """An operation precondition on caller-supplied data was violated."""


# --- gateway ---------------------------------------------------------------

class GatewayError(GameForgeError):
    """Backend unreachable or unusable after the configured attempts."""


class MockScriptMiss(GatewayError):
    """Scripted backend has no entry for the requested prompt fingerprint."""


class MalformedOutput(GameForgeError):
    """Backend response still violates the output schema after retries."""


class UnboundPlaceholder(GameForgeError):
    """Prompt template placeholder with no binding supplied."""


# --- retrieval -------------------------------------------------------------

class EmptyText(GameForgeError):
    """Text embedding requested for an empty or whitespace-only string."""


class EmptyCorpus(GameForgeError):
    """Index build over a manifest with zero records."""


class NoCandidates(GameForgeError):
    """Category prefilter left no records to rank."""


class ProviderMismatch(GameForgeError):
    """Query embedder does not match the provider recorded in the index."""


# --- scene graph planning --------------------------------------------------

class UnknownNodeType(GameForgeError):
    """Planned chain references a node type absent from the registry."""


class SchemaViolation(GameForgeError):
    """Node attributes violate the registry schema for that node type."""


class DanglingAttrs(GameForgeError):
    """Node attributes reference a node uid that is not in any chain."""


class UnboundSpawner(GameForgeError):
    """Spawner node has no model binding."""


# --- virtual engine --------------------------------------------------------

class InvalidGraph(GameForgeError):
    """Graph failed validation and cannot be executed."""


class DegenerateBounds(GameForgeError):
    """World bounds enclose zero area."""


class UnboundInteraction(GameForgeError):
    """Interaction targets an object with no spawned instance."""


class ObjectNotFound(GameForgeError):
    """Command names an object with no instance in the layout."""


class OutOfRange(GameForgeError):
    """Interaction attempted beyond the interaction radius."""


class FlowError(GameForgeError):
    """Interaction flow step could not be executed."""

    def __init__(self, step: int, cause: str):
        super().__init__(f"step {step}: {cause}")
        self.step = step
        self.cause = cause


# --- gameplay code ---------------------------------------------------------

class UnknownDependency(GameForgeError):
    """Module plan references an unplanned module or itself."""


class CycleDetected(GameForgeError):
    """Module dependency graph is cyclic."""

    def __init__(self, cycle: list[str]):
        super().__init__("dependency cycle: " + " -> ".join(cycle + cycle[:1]))
        self.cycle = cycle


class ConstraintViolation(GameForgeError):
    """Generated module still breaks engine constraints after retry."""


class UnresolvedStep(GameForgeError):
    """Interaction flow step references an unknown module method."""


class FlowMismatch(GameForgeError):
    """Generated interaction flow diverges from the planned flow."""


# --- bridge ----------------------------------------------------------------

class FramingError(GameForgeError):
    """Byte stream does not follow Content-Length framing."""


class BridgeUnavailable(GameForgeError):
    """Bridge transport is gone; play-testing cannot continue."""


class BridgeCallError(GameForgeError):
    """Bridge answered a call with a JSON-RPC error response."""

    def __init__(self, code: int, message: str):
        super().__init__(f"[{code}] {message}")
        self.code = code
        self.message = message


class WorldNotSpawned(GameForgeError):
    """World-dependent tool invoked before spawn_world."""


# --- evaluation ------------------------------------------------------------

class EmptyReport(GameForgeError):
    """Validation report with zero nodes cannot yield rates."""


class RangeError(GameForgeError):
    """Score outside its documented range."""


# --- orchestration ---------------------------------------------------------

class StageFailure(GameForgeError):
    """Pipeline halted at a stage; carries the stage name and the cause."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage} failed: {cause}")
        self.stage = stage
        self.cause = cause

"""Exception hierarchy shared across the engine.

Every error carries a machine-readable ``code`` so the HTTP layer and the
CLI can map failures without string matching.
"""


class HireflowError(Exception):
    """Base class for all engine errors."""

    code = "error"


class InvalidInputError(HireflowError):
    """A caller-supplied value violates an operation precondition."""

    code = "validation_failed"


class ConfigurationError(HireflowError):
    """Bad wiring: unresolved placeholders, duplicate registrations, bad config."""

    code = "configuration_error"


class NotFoundError(HireflowError):
    code = "not_found"


class VersionConflictError(HireflowError):
    """Optimistic-concurrency write lost the race."""

    code = "version_conflict"


class IllegalTransitionError(HireflowError):
    code = "illegal_transition"


class UndefinedMetricError(InvalidInputError):
    """Metric denominator is zero; the value does not exist."""

    code = "undefined_metric"


class ProviderError(HireflowError):
    """Transport-level failure talking to a model provider."""

    code = "provider_error"


class AgentFailureError(HireflowError):
    """An agent exhausted its retries; carries the full transcript."""

    code = "agent_failure"

    def __init__(self, message, transcript=None):
        super().__init__(message)
        self.transcript = transcript

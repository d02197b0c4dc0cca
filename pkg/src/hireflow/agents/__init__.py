from .providers import (
    ModelProvider,
    ProviderRegistry,
    ProviderRequest,
    ProviderResponse,
    ScriptedProvider,
)
from .runtime import AgentSpec, AgentTranscript, PromptStep, StepRecord, TokenUsage, invoke
from .schema import strict_object, validate_payload

__all__ = [
    "AgentSpec",
    "AgentTranscript",
    "ModelProvider",
    "PromptStep",
    "ProviderRegistry",
    "ProviderRequest",
    "ProviderResponse",
    "ScriptedProvider",
    "StepRecord",
    "TokenUsage",
    "invoke",
    "strict_object",
    "validate_payload",
]

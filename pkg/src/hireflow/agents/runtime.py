"""Schema-constrained agent execution with bounded retries and full audit.

An agent is a named, ordered sequence of prompt steps. Each step's output is
validated before the next step runs; a failed validation retries that step up
to ``max_retries`` extra attempts. No output that fails schema validation is
ever returned to a caller. Every attempt (rendered prompt, raw output,
validation verdict) is captured in the transcript, which also accumulates
provider-reported token counts for the cost model.
"""

from __future__ import annotations

import json
import string
import time
from typing import Any

from pydantic import BaseModel, Field

from ..errors import AgentFailureError, ConfigurationError
from .providers import ModelProvider, ProviderRequest
from .schema import check_schema, validate_payload

DEFAULT_TEMPERATURE = 0.1
DEFAULT_MAX_RETRIES = 2


class PromptStep(BaseModel):
    template: str
    expects_schema: dict[str, Any] | None = None


class AgentSpec(BaseModel):
    agent_name: str
    steps: list[PromptStep]
    output_schema: dict[str, Any]
    temperature: float = Field(default=DEFAULT_TEMPERATURE, ge=0.0, le=1.0)
    max_retries: int = Field(default=DEFAULT_MAX_RETRIES, ge=0)

    def model_post_init(self, __context) -> None:
        if not self.steps:
            raise ValueError("agent needs at least one step")
        check_schema(self.output_schema)
        for step in self.steps:
            if step.expects_schema is not None:
                check_schema(step.expects_schema)


class StepRecord(BaseModel):
    step_index: int
    attempt_index: int
    rendered_prompt: str
    raw_output: str
    validation_result: str  # "ok" or the failure description


class TokenUsage(BaseModel):
    input_tokens: int = 0
    output_tokens: int = 0

    def add(self, input_tokens: int, output_tokens: int) -> None:
        self.input_tokens += input_tokens
        self.output_tokens += output_tokens


class AgentTranscript(BaseModel):
    agent_name: str
    step_records: list[StepRecord] = Field(default_factory=list)
    token_usage: TokenUsage = Field(default_factory=TokenUsage)
    wall_time_ms: float = 0.0


def _placeholders(template: str) -> set[str]:
    names = set()
    for _, field_name, _, _ in string.Formatter().parse(template):
        if field_name:
            names.add(field_name.split(".")[0].split("[")[0])
    return names


def _check_placeholders(spec: AgentSpec, context: dict[str, str]) -> None:
    available = set(context)
    for idx, step in enumerate(spec.steps):
        unresolved = _placeholders(step.template) - available
        if unresolved:
            raise ConfigurationError(
                f"agent {spec.agent_name!r} step {idx}: unresolved placeholders {sorted(unresolved)}"
            )
        available.add(f"step_{idx}_output")


def invoke(
    spec: AgentSpec,
    context: dict[str, str],
    provider: ModelProvider,
) -> tuple[Any, AgentTranscript]:
    """Run every step of *spec* against *provider*, returning the validated
    final output and the full transcript.

    Placeholder resolvability across all steps is checked before any provider
    call. Prior step outputs are available to later templates as
    ``step_<i>_output``. Raises AgentFailureError (carrying the transcript)
    once a step exhausts its retries.
    """
    _check_placeholders(spec, context)

    transcript = AgentTranscript(agent_name=spec.agent_name)
    started = time.perf_counter()
    scope: dict[str, str] = dict(context)
    last_step = len(spec.steps) - 1
    output: Any = None

    for idx, step in enumerate(spec.steps):
        prompt = step.template.format_map(scope)
        parsed = None
        for attempt in range(spec.max_retries + 1):
            response = provider.complete(ProviderRequest(
                prompt=prompt,
                schema=step.expects_schema if idx != last_step else spec.output_schema,
                temperature=spec.temperature,
                agent_name=spec.agent_name,
                step_index=idx,
                attempt_index=attempt,
            ))
            transcript.token_usage.add(response.input_tokens, response.output_tokens)
            verdict, parsed = _validate_step_output(spec, step, idx == last_step, response.text)
            transcript.step_records.append(StepRecord(
                step_index=idx,
                attempt_index=attempt,
                rendered_prompt=prompt,
                raw_output=response.text,
                validation_result=verdict,
            ))
            if verdict == "ok":
                break
        else:
            transcript.wall_time_ms = (time.perf_counter() - started) * 1000.0
            raise AgentFailureError(
                f"agent {spec.agent_name!r} step {idx} failed validation after "
                f"{spec.max_retries + 1} attempts",
                transcript=transcript,
            )
        scope[f"step_{idx}_output"] = (
            response.text if parsed is None else json.dumps(parsed, sort_keys=True)
        )
        if idx == last_step:
            output = parsed

    transcript.wall_time_ms = (time.perf_counter() - started) * 1000.0
    return output, transcript


def _validate_step_output(
    spec: AgentSpec,
    step: PromptStep,
    is_last: bool,
    raw: str,
) -> tuple[str, Any]:
    """Return ("ok", parsed) or (error description, None)."""
    schema = spec.output_schema if is_last else step.expects_schema
    if schema is None:
        # Intermediate step with no contract: raw text flows onward untouched.
        return "ok", None
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        return f"invalid JSON: {exc}", None
    errors = validate_payload(payload, schema)
    if errors:
        return "schema violation: " + "; ".join(errors), None
    return "ok", payload

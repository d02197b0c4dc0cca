from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import pytest

from hireflow.agents.providers import (
    ProviderRequest,
    ProviderResponse,
    ScriptedProvider,
)
from hireflow.agents.runtime import AgentSpec, PromptStep, invoke
from hireflow.agents.schema import strict_object, unit_interval, validate_payload
from hireflow.errors import AgentFailureError, ConfigurationError, ProviderError

ANSWER_SCHEMA = strict_object({"value": {"type": "integer"}})


@dataclass
class QueueProvider:
    """Hands out canned responses in order; records every request."""

    responses: list[str]
    requests: list[ProviderRequest] = field(default_factory=list)

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        self.requests.append(request)
        text = self.responses[len(self.requests) - 1]
        return ProviderResponse(text=text, input_tokens=10, output_tokens=5)


def _spec(steps=None, max_retries=2) -> AgentSpec:
    return AgentSpec(
        agent_name="toy",
        steps=steps or [PromptStep(template="count {thing}")],
        output_schema=ANSWER_SCHEMA,
        max_retries=max_retries,
    )


class TestSchemaHelpers:
    def test_strict_object_refuses_extras(self):
        schema = strict_object({"a": {"type": "string"}})
        assert validate_payload({"a": "x"}, schema) == []
        assert validate_payload({"a": "x", "b": 1}, schema)
        assert validate_payload({}, schema)  # required by default

    def test_optional_required_subset(self):
        schema = strict_object({"a": {"type": "string"}, "b": {"type": "integer"}},
                               required=["a"])
        assert validate_payload({"a": "x"}, schema) == []

    def test_unit_interval_bounds(self):
        schema = strict_object({"p": unit_interval()})
        assert validate_payload({"p": 0.5}, schema) == []
        assert validate_payload({"p": 1.5}, schema)


class TestInvoke:
    def test_single_step_success(self):
        provider = QueueProvider(['{"value": 3}'])
        output, transcript = invoke(_spec(), {"thing": "sheep"}, provider)
        assert output == {"value": 3}
        assert transcript.step_records[0].validation_result == "ok"
        assert transcript.step_records[0].rendered_prompt == "count sheep"
        assert transcript.token_usage.input_tokens == 10

    def test_missing_placeholder_fails_before_any_call(self):
        provider = QueueProvider(['{"value": 3}'])
        with pytest.raises(ConfigurationError):
            invoke(_spec(), {}, provider)
        assert provider.requests == []

    def test_retry_then_success(self):
        provider = QueueProvider(["not json at all", '{"value": 7}'])
        output, transcript = invoke(_spec(), {"thing": "x"}, provider)
        assert output == {"value": 7}
        results = [r.validation_result for r in transcript.step_records]
        assert results[0].startswith("invalid JSON")
        assert results[1] == "ok"
        assert [r.attempt_index for r in transcript.step_records] == [0, 1]

    def test_schema_violation_retried(self):
        provider = QueueProvider(['{"value": "three"}', '{"value": 3}'])
        output, transcript = invoke(_spec(), {"thing": "x"}, provider)
        assert output == {"value": 3}
        assert transcript.step_records[0].validation_result.startswith("schema violation")

    def test_retry_exhaustion_raises_with_transcript(self):
        provider = QueueProvider(["bad", "worse", "worst"])
        with pytest.raises(AgentFailureError) as err:
            invoke(_spec(max_retries=2), {"thing": "x"}, provider)
        transcript = err.value.transcript
        assert transcript is not None
        assert len(transcript.step_records) == 3
        assert all(r.validation_result != "ok" for r in transcript.step_records)

    def test_multi_step_feeds_prior_output(self):
        steps = [
            PromptStep(template="first: {seed}",
                       expects_schema=strict_object({"items": {"type": "array"}})),
            PromptStep(template="second uses {step_0_output}"),
        ]
        provider = QueueProvider(['{"items": [1, 2]}', '{"value": 2}'])
        output, transcript = invoke(_spec(steps=steps), {"seed": "s"}, provider)
        assert output == {"value": 2}
        assert '{"items": [1, 2]}' in transcript.step_records[1].rendered_prompt

    def test_unconstrained_intermediate_step_passes_raw_text(self):
        steps = [
            PromptStep(template="brainstorm about {seed}"),
            PromptStep(template="finalize from {step_0_output}"),
        ]
        provider = QueueProvider(["free-form notes", '{"value": 1}'])
        output, _ = invoke(_spec(steps=steps), {"seed": "s"}, provider)
        assert output == {"value": 1}

    def test_temperature_and_identity_passed_to_provider(self):
        provider = QueueProvider(['{"value": 1}'])
        invoke(_spec(), {"thing": "x"}, provider)
        req = provider.requests[0]
        assert req.temperature == 0.1
        assert req.agent_name == "toy"
        assert (req.step_index, req.attempt_index) == (0, 0)


class TestScriptedProvider:
    def _seed(self, root, agent="toy", step=0, files=("one",)):
        d = root / agent / str(step)
        d.mkdir(parents=True, exist_ok=True)
        for i, text in enumerate(files):
            (d / f"{i}.txt").write_text(text, encoding="utf-8")

    def _request(self, step=0, attempt=0, agent="toy") -> ProviderRequest:
        return ProviderRequest(
            prompt="p", schema=None, temperature=0.1,
            agent_name=agent, step_index=step, attempt_index=attempt,
        )

    def test_replays_exact_attempt(self, tmp_path):
        self._seed(tmp_path, files=("first", "second"))
        provider = ScriptedProvider(tmp_path)
        assert provider.complete(self._request(attempt=0)).text == "first"
        assert provider.complete(self._request(attempt=1)).text == "second"

    def test_falls_back_to_latest_recorded_attempt(self, tmp_path):
        # A recorded run that succeeded on attempt 0 still answers attempt 2.
        self._seed(tmp_path, files=("only",))
        provider = ScriptedProvider(tmp_path)
        assert provider.complete(self._request(attempt=2)).text == "only"

    def test_missing_step_raises(self, tmp_path):
        self._seed(tmp_path)
        provider = ScriptedProvider(tmp_path)
        with pytest.raises(ProviderError):
            provider.complete(self._request(step=5))

    def test_token_counts_are_quarter_length(self, tmp_path):
        text = "x" * 10
        self._seed(tmp_path, files=(text,))
        provider = ScriptedProvider(tmp_path)
        response = provider.complete(self._request())
        assert response.output_tokens == math.ceil(len(text) / 4)
        assert response.input_tokens == math.ceil(len("p") / 4)


def test_pipeline_agent_schemas_are_well_formed():
    """Every shipped agent builds, which runs check_schema on all its steps."""
    from hireflow.agents.definitions import PIPELINE_AGENTS

    for name, factory in PIPELINE_AGENTS.items():
        spec = factory()
        assert spec.agent_name == name
        assert spec.temperature == pytest.approx(0.1)
        assert spec.max_retries == 2


def test_scripted_outputs_parse_as_json_where_valid():
    """Golden fixture outputs for the final steps are valid JSON documents."""
    from pathlib import Path

    repo_root = Path(__file__).resolve().parents[1]
    sample = repo_root / "fixtures/agents/c01/profile_extractor/0/0.txt"
    payload = json.loads(sample.read_text(encoding="utf-8"))
    assert payload["full_name"] == "Dana Kim"

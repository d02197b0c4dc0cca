"""Model provider abstraction and the deterministic scripted test double.

A provider turns (rendered prompt, schema document, temperature) into raw
text plus token counts. The scripted provider replays fixture files laid out
as ``<root>/<agent>/<step>/<attempt>.txt`` and reports token counts
proportional to text length, so transcripts are fully assertable in tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Protocol

from ..errors import ConfigurationError, NotFoundError, ProviderError

# Rough chars-per-token factor used by the scripted provider's accounting.
CHARS_PER_TOKEN = 4


@dataclass(frozen=True)
class ProviderRequest:
    prompt: str
    schema: dict[str, Any] | None
    temperature: float
    # Routing metadata for test doubles; live providers ignore these.
    agent_name: str = ""
    step_index: int = 0
    attempt_index: int = 0


@dataclass(frozen=True)
class ProviderResponse:
    text: str
    input_tokens: int
    output_tokens: int


class ModelProvider(Protocol):
    def complete(self, request: ProviderRequest) -> ProviderResponse: ...


def _token_estimate(text: str) -> int:
    return math.ceil(len(text) / CHARS_PER_TOKEN)


@dataclass
class ScriptedProvider:
    """Replays recorded responses from a fixture directory.

    Lookup key is (agent_name, step_index, attempt_index). When the exact
    attempt file is absent the highest recorded attempt below it is replayed,
    so a single ``0.txt`` serves every retry of a stable response.
    """

    fixture_dir: Path

    def __post_init__(self) -> None:
        self.fixture_dir = Path(self.fixture_dir)

    def complete(self, request: ProviderRequest) -> ProviderResponse:
        step_dir = self.fixture_dir / request.agent_name / str(request.step_index)
        path = step_dir / f"{request.attempt_index}.txt"
        if not path.exists():
            path = self._latest_attempt(step_dir, request.attempt_index)
        if path is None or not path.exists():
            raise ProviderError(
                f"no scripted response for agent={request.agent_name!r} "
                f"step={request.step_index} attempt={request.attempt_index} under {step_dir}"
            )
        text = path.read_text(encoding="utf-8")
        return ProviderResponse(
            text=text,
            input_tokens=_token_estimate(request.prompt),
            output_tokens=_token_estimate(text),
        )

    @staticmethod
    def _latest_attempt(step_dir: Path, before: int) -> Path | None:
        if not step_dir.is_dir():
            return None
        recorded = sorted(
            (int(p.stem) for p in step_dir.glob("*.txt") if p.stem.isdigit()),
            reverse=True,
        )
        for attempt in recorded:
            if attempt <= before:
                return step_dir / f"{attempt}.txt"
        return None


@dataclass
class ProviderRegistry:
    """Named providers resolvable at invocation time."""

    _providers: dict[str, ModelProvider] = field(default_factory=dict)

    def register(self, name: str, provider: ModelProvider) -> None:
        if name in self._providers:
            raise ConfigurationError(f"provider {name!r} is already registered")
        self._providers[name] = provider

    def resolve(self, name: str) -> ModelProvider:
        try:
            return self._providers[name]
        except KeyError:
            raise NotFoundError(f"no provider registered under {name!r}") from None

    def names(self) -> list[str]:
        return sorted(self._providers)

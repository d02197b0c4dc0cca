"""Directory-backed document store, stage state machine, review decisions.

One JSON document per entity under ``<root>/<kind>/``. Writes go to a temp
file in the same directory and are renamed into place, so readers never see
a partial document and a crash leaves either the old version or the new one.
Decision writes use optimistic versioning: a writer must name the exact next
version, and a stale writer gets a version-conflict instead of silently
clobbering another reviewer.

This is deliberately database-free; the store is small enough to swap out
behind the same method surface if a real database ever becomes necessary.
"""

from __future__ import annotations

import json
import os
import re
import threading
from collections import defaultdict
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from .errors import (
    IllegalTransitionError,
    InvalidInputError,
    NotFoundError,
    VersionConflictError,
)


class PipelineStage(str, Enum):
    INGESTED = "INGESTED"
    PROFILED = "PROFILED"
    AUGMENTED = "AUGMENTED"
    ANALYZED = "ANALYZED"
    SCORED = "SCORED"
    RANKED = "RANKED"
    IN_REVIEW = "IN_REVIEW"
    DECIDED = "DECIDED"
    STALLED = "STALLED"
    FAILED = "FAILED"


_CHAIN = (
    PipelineStage.INGESTED,
    PipelineStage.PROFILED,
    PipelineStage.AUGMENTED,
    PipelineStage.ANALYZED,
    PipelineStage.SCORED,
    PipelineStage.RANKED,
    PipelineStage.IN_REVIEW,
    PipelineStage.DECIDED,
)

TERMINAL_STAGES = frozenset({
    PipelineStage.DECIDED, PipelineStage.STALLED, PipelineStage.FAILED,
})

# Forward along the chain one step at a time; any live stage can stall or fail.
LEGAL_TRANSITIONS: dict[PipelineStage, frozenset[PipelineStage]] = {}
for _i, _stage in enumerate(_CHAIN):
    _targets = set()
    if _stage not in TERMINAL_STAGES:
        if _i + 1 < len(_CHAIN):
            _targets.add(_CHAIN[_i + 1])
        _targets.update({PipelineStage.STALLED, PipelineStage.FAILED})
    LEGAL_TRANSITIONS[_stage] = frozenset(_targets)
LEGAL_TRANSITIONS[PipelineStage.STALLED] = frozenset()
LEGAL_TRANSITIONS[PipelineStage.FAILED] = frozenset()


def can_transition(src: PipelineStage, dst: PipelineStage) -> bool:
    return dst in LEGAL_TRANSITIONS[src]


class PipelineState(BaseModel):
    candidate_id: str
    stage: PipelineStage
    last_error: str | None = None
    updated_at: datetime


class Verdict(str, Enum):
    ADVANCE = "advance"
    REJECT = "reject"
    DEFER = "defer"


class ReviewDecision(BaseModel):
    candidate_id: str
    verdict: Verdict
    notes: str = ""
    reviewer_id: str
    decided_at: datetime
    version: int = Field(ge=1)


class ReviewerFeedback(BaseModel):
    candidate_id: str | None = None
    text: str
    created_at: datetime

    @field_validator("text")
    @classmethod
    def _non_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("feedback text must be non-empty")
        return v


_SAFE_ID = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


def _now() -> datetime:
    return datetime.now(timezone.utc)


class DocumentStore:
    KINDS = (
        "submissions", "docs", "profiles", "linkage", "consistency",
        "scorecards", "rankings", "decisions", "outbox", "transcripts",
        "states", "feedback", "usage",
    )

    def __init__(self, root: str | Path):
        self.root = Path(root)
        for kind in self.KINDS:
            (self.root / kind).mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = defaultdict(threading.Lock)
        self._locks_guard = threading.Lock()

    def _lock(self, candidate_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks[candidate_id]

    def _path(self, kind: str, entity_id: str) -> Path:
        if kind not in self.KINDS:
            raise InvalidInputError(f"unknown store kind {kind!r}")
        if not _SAFE_ID.match(entity_id):
            raise InvalidInputError(f"unsafe entity id {entity_id!r}")
        return self.root / kind / f"{entity_id}.json"

    # -- generic document surface ------------------------------------------

    def put(self, kind: str, entity_id: str, payload: BaseModel | dict) -> None:
        if isinstance(payload, BaseModel):
            payload = payload.model_dump(mode="json")
        path = self._path(kind, entity_id)
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
        tmp = path.with_suffix(".json.tmp")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)

    def get(self, kind: str, entity_id: str) -> dict:
        path = self._path(kind, entity_id)
        if not path.exists():
            raise NotFoundError(f"{kind}/{entity_id} not found")
        return json.loads(path.read_text(encoding="utf-8"))

    def get_model(self, kind: str, entity_id: str, model_cls):
        return model_cls.model_validate(self.get(kind, entity_id))

    def exists(self, kind: str, entity_id: str) -> bool:
        return self._path(kind, entity_id).exists()

    def delete(self, kind: str, entity_id: str) -> None:
        path = self._path(kind, entity_id)
        if not path.exists():
            raise NotFoundError(f"{kind}/{entity_id} not found")
        path.unlink()

    def list_ids(self, kind: str, prefix: str = "") -> list[str]:
        if kind not in self.KINDS:
            raise InvalidInputError(f"unknown store kind {kind!r}")
        names = [p.stem for p in (self.root / kind).glob("*.json")]
        return sorted(n for n in names if n.startswith(prefix))

    # -- pipeline state ----------------------------------------------------

    def init_state(self, candidate_id: str) -> PipelineState:
        with self._lock(candidate_id):
            state = PipelineState(
                candidate_id=candidate_id,
                stage=PipelineStage.INGESTED,
                updated_at=_now(),
            )
            self.put("states", candidate_id, state)
            return state

    def get_state(self, candidate_id: str) -> PipelineState:
        return self.get_model("states", candidate_id, PipelineState)

    def advance_stage(
        self,
        candidate_id: str,
        target: PipelineStage,
        error: str | None = None,
    ) -> PipelineState:
        with self._lock(candidate_id):
            current = self.get_state(candidate_id)
            if not can_transition(current.stage, target):
                raise IllegalTransitionError(
                    f"{candidate_id}: {current.stage.value} -> {target.value} is not allowed"
                )
            state = PipelineState(
                candidate_id=candidate_id,
                stage=target,
                last_error=error,
                updated_at=_now(),
            )
            self.put("states", candidate_id, state)
            return state

    # -- decisions (optimistic versioning) ---------------------------------

    def get_decision(self, candidate_id: str) -> ReviewDecision:
        versions = self.list_ids("decisions", prefix=f"{candidate_id}__v")
        if not versions:
            raise NotFoundError(f"no decision for {candidate_id}")
        return self.get_model("decisions", versions[-1], ReviewDecision)

    def decision_version(self, candidate_id: str) -> int:
        try:
            return self.get_decision(candidate_id).version
        except NotFoundError:
            return 0

    def put_decision(self, decision: ReviewDecision) -> ReviewDecision:
        """Accepts only version == current + 1; anything else is stale."""
        cid = decision.candidate_id
        with self._lock(cid):
            current = self.decision_version(cid)
            if decision.version != current + 1:
                raise VersionConflictError(
                    f"{cid}: decision version {decision.version} rejected, "
                    f"current is {current}"
                )
            self.put("decisions", f"{cid}__v{decision.version:04d}", decision)
            return decision

    def decided_ids(self) -> set[str]:
        return {name.split("__v")[0] for name in self.list_ids("decisions")}

    # -- appended collections ----------------------------------------------

    def append_outbox(self, payload: BaseModel) -> str:
        cid = getattr(payload, "candidate_id")
        with self._lock(cid):
            seq = len(self.list_ids("outbox", prefix=f"{cid}__")) + 1
            entity_id = f"{cid}__{seq:04d}"
            self.put("outbox", entity_id, payload)
            return entity_id

    def put_transcript(self, candidate_id: str, agent_name: str, payload: BaseModel | dict) -> str:
        entity_id = f"{candidate_id}__{agent_name}"
        self.put("transcripts", entity_id, payload)
        return entity_id

    def list_transcripts(self, candidate_id: str) -> list[str]:
        return self.list_ids("transcripts", prefix=f"{candidate_id}__")

    def append_feedback(self, feedback: ReviewerFeedback) -> str:
        with self._lock("__feedback__"):
            seq = len(self.list_ids("feedback")) + 1
            entity_id = f"fb{seq:05d}"
            self.put("feedback", entity_id, feedback)
            return entity_id

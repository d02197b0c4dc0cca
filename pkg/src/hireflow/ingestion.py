"""Submission intake: completeness check, harmonization, injection guard,
frame-sampling plans.

Harmonization folds every artifact of a submission into one canonical
Markdown document with a deterministic section order (resume, assignment,
answers by question id), so two runs over the same submission produce
byte-identical output. Extraction of artifact content is delegated to a
registry of extractors keyed by artifact kind; the desk-scale build ships a
plain-text extractor and a fixture extractor that replays pre-recorded
OCR/transcript/vision outputs from files.
"""

from __future__ import annotations

import json
import math
import re
from importlib import resources
from pathlib import Path
from typing import Callable, Protocol

from pydantic import BaseModel, Field

from .domain import Answer, Modality, MissingItems, RiskFlag, RiskKind, Submission
from .errors import InvalidInputError, NotFoundError

FRAME_INTERVAL_S = 5.0  # 1 frame every 5 seconds

DEFAULT_VIDEO_DECLINED_SEVERITY = 0.05


class Section(BaseModel):
    source_tag: str  # "resume" | "assignment" | "answer:<qid>"
    markdown_text: str


class RedactionRecord(BaseModel):
    section_index: int
    pattern: str
    match_count: int


class CanonicalDoc(BaseModel):
    candidate_id: str
    sections: list[Section] = Field(default_factory=list)
    sanitization_log: list[RedactionRecord] = Field(default_factory=list)

    def full_text(self) -> str:
        parts = [f"## [{s.source_tag}]\n\n{s.markdown_text}" for s in self.sections]
        return "\n\n".join(parts)


class FramePlan(BaseModel):
    video_ref: str
    duration_s: float
    timestamps_s: list[float] = Field(default_factory=list)


class VideoMeta(BaseModel):
    """Fixture stand-in for media processing: what the vision/STT providers
    would have produced for one video answer."""

    duration_s: float = 0.0
    transcript: str = ""
    frame_descriptions: list[str] = Field(default_factory=list)
    same_person: bool = True


# ---------------------------------------------------------------------------
# Completeness
# ---------------------------------------------------------------------------

def assess_completeness(submission: Submission, required_questions: list[str]) -> MissingItems:
    """Flag absent artifacts and unanswered required questions.

    Video responses are the requested modality for every screening question;
    any text answer marks the submission as having declined video.
    """
    if not required_questions:
        raise InvalidInputError("required_questions must be non-empty")
    answered = {a.question_id for a in submission.answers}
    unanswered = [q for q in required_questions if q not in answered]
    video_declined = any(a.modality is Modality.TEXT for a in submission.answers)
    return MissingItems(
        resume_missing=submission.resume_ref is None,
        assignment_missing=submission.assignment_ref is None,
        unanswered_question_ids=unanswered,
        video_declined=video_declined,
    )


# ---------------------------------------------------------------------------
# Extractors
# ---------------------------------------------------------------------------

class Extractor(Protocol):
    def __call__(self, candidate_id: str, ref: str) -> str: ...


class ExtractorSet:
    """Registry of extractors keyed by artifact kind.

    Kinds used by harmonize: ``resume``, ``assignment``, ``answer`` (text
    answer files) and ``video`` (video answers; the extractor returns the
    transcript plus frame descriptions as Markdown). Read-only after startup.
    """

    def __init__(self) -> None:
        self._extractors: dict[str, Extractor] = {}

    def register(self, kind: str, extractor: Extractor) -> None:
        self._extractors[kind] = extractor

    def get(self, kind: str) -> Extractor:
        try:
            return self._extractors[kind]
        except KeyError:
            raise NotFoundError(f"no extractor registered for artifact kind {kind!r}") from None


def plain_text_extractor(base_dir: str | Path) -> Extractor:
    """Read the referenced file as UTF-8 text, resolved against *base_dir*."""
    base = Path(base_dir)

    def extract(candidate_id: str, ref: str) -> str:
        path = base / candidate_id / ref
        if not path.exists():
            # allow refs relative to the base dir itself
            path = base / ref
        return path.read_text(encoding="utf-8")

    return extract


def fixture_video_extractor(base_dir: str | Path) -> Extractor:
    """Replay a pre-recorded video_meta.json: transcript + frame descriptions."""
    base = Path(base_dir)

    def extract(candidate_id: str, ref: str) -> str:
        path = base / candidate_id / ref
        if not path.exists():
            path = base / ref
        meta = VideoMeta.model_validate(json.loads(path.read_text(encoding="utf-8")))
        lines = ["### Transcript", "", meta.transcript.strip()]
        if meta.frame_descriptions:
            lines += ["", "### Frames (1 per 5 s)", ""]
            lines += [f"- {d}" for d in meta.frame_descriptions]
        if not meta.same_person:
            lines += ["", "> [vision check: person on video does not match documents]"]
        return "\n".join(lines)

    return extract


def default_extractors(base_dir: str | Path) -> ExtractorSet:
    extractors = ExtractorSet()
    text = plain_text_extractor(base_dir)
    extractors.register("resume", text)
    extractors.register("assignment", text)
    extractors.register("answer", text)
    extractors.register("video", fixture_video_extractor(base_dir))
    return extractors


# ---------------------------------------------------------------------------
# Harmonization
# ---------------------------------------------------------------------------

def _answer_section(answer: Answer, candidate_id: str, extractors: ExtractorSet) -> str:
    if answer.modality is Modality.VIDEO:
        return extractors.get("video")(candidate_id, answer.content_ref)
    # text answers carry their transcript inline; fall back to the answer file
    if answer.transcript and answer.transcript.strip():
        return answer.transcript
    return extractors.get("answer")(candidate_id, answer.content_ref)


def harmonize(submission: Submission, extractors: ExtractorSet) -> CanonicalDoc:
    """Build the canonical Markdown document for one submission.

    One section per artifact, ordered resume, assignment, then answers by
    question id. An extractor failure becomes an error-marker section rather
    than aborting the document.
    """
    sections: list[Section] = []

    def add(tag: str, produce: Callable[[], str]) -> None:
        try:
            text = produce()
        except Exception as exc:  # noqa: BLE001 - error marker, pipeline continues
            text = f"> [extraction failed: {exc}]"
        sections.append(Section(source_tag=tag, markdown_text=text))

    cid = submission.candidate_id
    if submission.resume_ref is not None:
        ref = submission.resume_ref
        add("resume", lambda: extractors.get("resume")(cid, ref))
    if submission.assignment_ref is not None:
        ref = submission.assignment_ref
        add("assignment", lambda: extractors.get("assignment")(cid, ref))
    for answer in sorted(submission.answers, key=lambda a: a.question_id):
        add(f"answer:{answer.question_id}",
            lambda a=answer: _answer_section(a, cid, extractors))

    return CanonicalDoc(candidate_id=cid, sections=sections)


# ---------------------------------------------------------------------------
# Injection guard
# ---------------------------------------------------------------------------

REDACTION_MARKER = "█redacted█"


def default_injection_patterns() -> list[str]:
    text = resources.files("hireflow.data").joinpath("injection_patterns.txt").read_text("utf-8")
    return parse_pattern_list(text)


def parse_pattern_list(text: str) -> list[str]:
    patterns = []
    for line in text.splitlines():
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            patterns.append(stripped)
    return patterns


def sanitize(doc: CanonicalDoc, patterns: list[str] | None = None) -> CanonicalDoc:
    """Redact instruction-like patterns from every section.

    Zero-width and control-character runs are removed outright; textual
    injection phrases are replaced with a redaction marker that no pattern
    matches, making sanitize idempotent. Each redaction is appended to the
    document's sanitization log with its section index.
    """
    if patterns is None:
        patterns = default_injection_patterns()
    compiled = [(p, re.compile(p)) for p in patterns]

    new_sections: list[Section] = []
    log = list(doc.sanitization_log)
    for idx, section in enumerate(doc.sections):
        text = section.markdown_text
        for pattern, rx in compiled:
            text, count = rx.subn(
                "" if _is_character_class_pattern(pattern) else REDACTION_MARKER, text
            )
            if count:
                log.append(RedactionRecord(section_index=idx, pattern=pattern, match_count=count))
        new_sections.append(Section(source_tag=section.source_tag, markdown_text=text))

    return CanonicalDoc(candidate_id=doc.candidate_id, sections=new_sections, sanitization_log=log)


def _is_character_class_pattern(pattern: str) -> bool:
    # Character-class patterns (zero-width / control runs) are stripped, not
    # replaced, so harmless surrounding text is preserved unchanged.
    return pattern.startswith("[")


# ---------------------------------------------------------------------------
# Frame sampling
# ---------------------------------------------------------------------------

def plan_frames(video_ref: str, duration_s: float) -> FramePlan:
    """Timestamps 0, 5, 10, ... strictly below the duration."""
    if duration_s < 0:
        raise InvalidInputError(f"duration must be >= 0, got {duration_s}")
    count = math.ceil(duration_s / FRAME_INTERVAL_S)
    timestamps = [k * FRAME_INTERVAL_S for k in range(count)]
    return FramePlan(video_ref=video_ref, duration_s=duration_s, timestamps_s=timestamps)


# ---------------------------------------------------------------------------
# Text-answer penalty
# ---------------------------------------------------------------------------

def text_answer_penalty(
    answers: list[Answer],
    severity: float = DEFAULT_VIDEO_DECLINED_SEVERITY,
) -> RiskFlag | None:
    """One non-cumulative flag per candidate when video was declined for any
    question; None when every answer arrived as video."""
    text_answers = [a.question_id for a in answers if a.modality is Modality.TEXT]
    if not text_answers:
        return None
    return RiskFlag(
        kind=RiskKind.VIDEO_DECLINED,
        severity=severity,
        rationale=(
            "Video responses were requested; text was submitted for "
            + ", ".join(sorted(text_answers))
        ),
    )

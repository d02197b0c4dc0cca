"""Shared domain types for the screening engine.

Everything downstream (ingestion, verification, scoring, the store) works in
terms of these models. They are plain pydantic value objects: construction
validates shapes and enums, while cross-field profile invariants (dangling
evidence references, inverted date ranges, out-of-range confidences) are
checked separately by :func:`validate_profile`, which reports violations
instead of raising so callers can triage bad profiles.

Date fields accept ISO-8601 calendar dates; month precision is permitted and
the day defaults to 01 (``"2019-03"`` -> 2019-03-01).
"""

from __future__ import annotations

import re
from datetime import date, datetime
from enum import Enum

from pydantic import BaseModel, Field, field_validator, model_validator

from .errors import InvalidInputError

# The seven culture-fit categories evaluated against company values.
CULTURE_CATEGORIES = (
    "work_style",
    "collaboration",
    "communication",
    "growth_mindset",
    "ownership",
    "innovation",
    "values_list",
)

_PARTIAL_DATE_RE = re.compile(r"^(\d{4})-(\d{2})(?:-(\d{2}))?$")


def parse_flex_date(value: str | date) -> date:
    """Parse ``YYYY-MM-DD`` or ``YYYY-MM`` (day defaults to 01)."""
    if isinstance(value, date):
        return value
    m = _PARTIAL_DATE_RE.match(value.strip())
    if not m:
        raise InvalidInputError(f"not an ISO date (YYYY-MM[-DD]): {value!r}")
    year, month, day = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
    try:
        return date(year, month, day)
    except ValueError as exc:
        raise InvalidInputError(f"invalid calendar date {value!r}: {exc}") from None


class Modality(str, Enum):
    VIDEO = "video"
    TEXT = "text"


class Answer(BaseModel):
    """One response to a screening question, as video or text."""

    question_id: str
    modality: Modality
    content_ref: str = ""
    transcript: str | None = None

    @model_validator(mode="after")
    def _check_modality(self) -> "Answer":
        if self.modality is Modality.VIDEO and not self.content_ref:
            raise ValueError("video answer requires a content_ref to the media artifact")
        if self.modality is Modality.TEXT and not (self.transcript or "").strip():
            raise ValueError("text answer requires a non-empty transcript")
        return self


class Submission(BaseModel):
    """Raw applicant submission as received: references, not extracted text."""

    candidate_id: str
    resume_ref: str | None = None
    assignment_ref: str | None = None
    answers: list[Answer] = Field(default_factory=list)
    received_at: datetime

    @field_validator("candidate_id")
    @classmethod
    def _non_empty_id(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("candidate_id must be non-empty")
        return v

    @model_validator(mode="after")
    def _something_submitted(self) -> "Submission":
        if self.resume_ref is None and self.assignment_ref is None and not self.answers:
            raise ValueError("submission must contain at least one artifact")
        return self


class EvidenceKind(str, Enum):
    RESUME_CLAIM = "resume_claim"
    PROJECT = "project"
    ANSWER = "answer"
    PUBLIC_ACTIVITY = "public_activity"
    ASSIGNMENT = "assignment"


class Evidence(BaseModel):
    """A traceable excerpt backing a claim. Confidence is expected in [0, 1];
    out-of-range values are reported by validate_profile rather than rejected."""

    evidence_id: str
    kind: EvidenceKind
    source_ref: str
    excerpt: str
    confidence: float = 1.0


class SkillEntry(BaseModel):
    """A skill normalized to its canonical name, with the raw forms that matched."""

    canonical_name: str
    aliases_matched: list[str] = Field(default_factory=list)
    evidence_ids: list[str] = Field(default_factory=list)
    confidence: float = 1.0
    unrecognized: bool = False


class EmploymentEntry(BaseModel):
    employer: str
    title: str = ""
    start: date
    end: date | None = None  # open end = still employed
    evidence_ids: list[str] = Field(default_factory=list)

    _parse_start = field_validator("start", mode="before")(parse_flex_date)

    @field_validator("end", mode="before")
    @classmethod
    def _parse_end(cls, v):
        return None if v in (None, "") else parse_flex_date(v)


class EducationEntry(BaseModel):
    institution: str
    degree: str = ""
    start: date | None = None
    end: date | None = None
    evidence_ids: list[str] = Field(default_factory=list)

    @field_validator("start", "end", mode="before")
    @classmethod
    def _parse_dates(cls, v):
        return None if v in (None, "") else parse_flex_date(v)


class PersonalInfo(BaseModel):
    full_name: str = ""
    education: list[EducationEntry] = Field(default_factory=list)
    employment: list[EmploymentEntry] = Field(default_factory=list)


class LinkedItem(BaseModel):
    """An evidence-linked entry (project, technology, language, achievement)."""

    name: str
    detail: str = ""
    evidence_ids: list[str] = Field(default_factory=list)


class RecordEmployment(BaseModel):
    """One employment row as a public source reports it."""

    employer: str
    title: str = ""
    start: date | None = None
    end: date | None = None

    @field_validator("start", "end", mode="before")
    @classmethod
    def _parse_dates(cls, v):
        return None if v in (None, "") else parse_flex_date(v)


class PublicRecord(BaseModel):
    """What a source client fetched for one account on one platform."""

    platform: str
    record_ref: str  # profile URL or handle
    name: str = ""
    employers: list[RecordEmployment] = Field(default_factory=list)
    education: list[str] = Field(default_factory=list)
    urls: list[str] = Field(default_factory=list)
    summary: str = ""


class LinkedAccount(BaseModel):
    """A public-source account accepted as belonging to the candidate."""

    platform: str
    handle_or_url: str
    linkage_confidence: float
    corroborating_attributes: list[str] = Field(default_factory=list)
    fetched_records: list[Evidence] = Field(default_factory=list)
    record: PublicRecord | None = None


class MissingItems(BaseModel):
    """What a submission still lacks, per the completeness check."""

    resume_missing: bool = False
    assignment_missing: bool = False
    unanswered_question_ids: list[str] = Field(default_factory=list)
    video_declined: bool = False

    @property
    def any_missing(self) -> bool:
        return (
            self.resume_missing
            or self.assignment_missing
            or bool(self.unanswered_question_ids)
        )


class CandidateProfile(BaseModel):
    """Structured, evidence-linked representation of one applicant."""

    candidate_id: str
    personal: PersonalInfo = Field(default_factory=PersonalInfo)
    skills: list[SkillEntry] = Field(default_factory=list)
    projects: list[LinkedItem] = Field(default_factory=list)
    technologies: list[LinkedItem] = Field(default_factory=list)
    languages: list[LinkedItem] = Field(default_factory=list)
    achievements: list[LinkedItem] = Field(default_factory=list)
    listed_profile_urls: list[str] = Field(default_factory=list)
    linked_accounts: list[LinkedAccount] = Field(default_factory=list)
    evidence: list[Evidence] = Field(default_factory=list)
    completeness: MissingItems = Field(default_factory=MissingItems)

    def evidence_index(self) -> dict[str, Evidence]:
        return {e.evidence_id: e for e in self.evidence}


class Seniority(str, Enum):
    JUNIOR = "junior"
    MID = "mid"
    SENIOR = "senior"
    LEAD = "lead"


class RequiredSkill(BaseModel):
    name: str  # canonical skill name
    weight: float = Field(ge=0.0, le=1.0, default=1.0)


class JobSpec(BaseModel):
    role_title: str
    required_skills: list[RequiredSkill]
    seniority: Seniority = Seniority.MID
    description: str = ""

    @field_validator("required_skills")
    @classmethod
    def _non_empty(cls, v):
        if not v:
            raise ValueError("required_skills must be non-empty")
        return v


class CompanyValues(BaseModel):
    """Descriptive text for each of the seven culture categories."""

    culture_categories: dict[str, str]

    @field_validator("culture_categories")
    @classmethod
    def _exactly_seven(cls, v: dict[str, str]) -> dict[str, str]:
        missing = [c for c in CULTURE_CATEGORIES if c not in v]
        extra = [c for c in v if c not in CULTURE_CATEGORIES]
        if missing or extra:
            raise ValueError(
                f"culture_categories must be exactly {list(CULTURE_CATEGORIES)}; "
                f"missing={missing} extra={extra}"
            )
        return v


class RiskKind(str, Enum):
    DATE_INCONSISTENCY = "date_inconsistency"
    EMPLOYMENT_GAP = "employment_gap"
    CONCURRENT_JOBS = "concurrent_jobs"
    VAGUE_PHRASING = "vague_phrasing"
    AI_GENERATED_CONTENT = "ai_generated_content"
    INCOMPLETE_PROFILE = "incomplete_profile"
    NO_PUBLIC_EVIDENCE = "no_public_evidence"
    DECEPTION_INDICATOR = "deception_indicator"
    TOXICITY_OR_EXTREMISM = "toxicity_or_extremism"
    VIDEO_DECLINED = "video_declined"


# Default severity weights on the 0-1 risk scale, overridable via config.
# toxicity_or_extremism saturates the risk cap: effectively disqualifying.
DEFAULT_SEVERITIES: dict["RiskKind", float] = {}


class RiskFlag(BaseModel):
    """One detected negative indicator, severity-weighted on the 0-1 risk scale."""

    kind: RiskKind
    severity: float = Field(ge=0.0, le=1.0)
    rationale: str
    evidence_ids: list[str] = Field(default_factory=list)

    @field_validator("rationale")
    @classmethod
    def _non_empty(cls, v: str) -> str:
        if not v.strip():
            raise ValueError("rationale must be non-empty")
        return v


DEFAULT_SEVERITIES.update({
    RiskKind.DATE_INCONSISTENCY: 0.10,
    RiskKind.EMPLOYMENT_GAP: 0.10,
    RiskKind.CONCURRENT_JOBS: 0.15,
    RiskKind.VAGUE_PHRASING: 0.05,
    RiskKind.AI_GENERATED_CONTENT: 0.15,
    RiskKind.INCOMPLETE_PROFILE: 0.10,
    RiskKind.NO_PUBLIC_EVIDENCE: 0.10,
    RiskKind.DECEPTION_INDICATOR: 0.40,
    RiskKind.TOXICITY_OR_EXTREMISM: 1.00,
    RiskKind.VIDEO_DECLINED: 0.05,
})


# ---------------------------------------------------------------------------
# Profile validation (report-only)
# ---------------------------------------------------------------------------

class ValidationFinding(BaseModel):
    kind: str  # dangling_evidence | date_order | confidence_range | duplicate_evidence_id
    message: str


class ValidationReport(BaseModel):
    candidate_id: str
    findings: list[ValidationFinding] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.findings


def validate_profile(profile: CandidateProfile) -> ValidationReport:
    """List every violated profile invariant; empty report iff the profile is valid.

    Checks: evidence ids referenced by skills/entries resolve, evidence ids are
    unique, employment/education date ranges are ordered, and confidences lie
    in [0, 1]. Report-only: never raises.
    """
    findings: list[ValidationFinding] = []

    seen: set[str] = set()
    for ev in profile.evidence:
        if ev.evidence_id in seen:
            findings.append(ValidationFinding(
                kind="duplicate_evidence_id",
                message=f"evidence id {ev.evidence_id!r} appears more than once",
            ))
        seen.add(ev.evidence_id)
        if not 0.0 <= ev.confidence <= 1.0:
            findings.append(ValidationFinding(
                kind="confidence_range",
                message=f"evidence {ev.evidence_id!r} confidence {ev.confidence} outside [0, 1]",
            ))

    def check_refs(owner: str, evidence_ids: list[str]) -> None:
        for eid in evidence_ids:
            if eid not in seen:
                findings.append(ValidationFinding(
                    kind="dangling_evidence",
                    message=f"{owner} references missing evidence id {eid!r}",
                ))

    for skill in profile.skills:
        check_refs(f"skill {skill.canonical_name!r}", skill.evidence_ids)
        if not 0.0 <= skill.confidence <= 1.0:
            findings.append(ValidationFinding(
                kind="confidence_range",
                message=f"skill {skill.canonical_name!r} confidence {skill.confidence} outside [0, 1]",
            ))
    for group_name, items in (
        ("project", profile.projects),
        ("technology", profile.technologies),
        ("language", profile.languages),
        ("achievement", profile.achievements),
    ):
        for item in items:
            check_refs(f"{group_name} {item.name!r}", item.evidence_ids)

    for job in profile.personal.employment:
        check_refs(f"employment at {job.employer!r}", job.evidence_ids)
        if job.end is not None and job.end < job.start:
            findings.append(ValidationFinding(
                kind="date_order",
                message=f"employment at {job.employer!r} ends {job.end} before start {job.start}",
            ))
    for edu in profile.personal.education:
        check_refs(f"education at {edu.institution!r}", edu.evidence_ids)
        if edu.start is not None and edu.end is not None and edu.end < edu.start:
            findings.append(ValidationFinding(
                kind="date_order",
                message=f"education at {edu.institution!r} ends {edu.end} before start {edu.start}",
            ))

    for acct in profile.linked_accounts:
        if not 0.0 <= acct.linkage_confidence <= 1.0:
            findings.append(ValidationFinding(
                kind="confidence_range",
                message=(
                    f"linked account {acct.platform}:{acct.handle_or_url} "
                    f"confidence {acct.linkage_confidence} outside [0, 1]"
                ),
            ))

    return ValidationReport(candidate_id=profile.candidate_id, findings=findings)

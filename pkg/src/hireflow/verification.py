"""Public-source linkage, consistency checking, and the clarification outbox.

Account linkage is deliberately conservative: a lookup is only accepted when
its attribute-overlap confidence clears the threshold AND at least two
attributes corroborate, so an incorrect account is far more costly to link
than a correct one is to miss. Rejected lookups are logged, never linked.

Rule-detected flags (date order, employment gaps, concurrent jobs) are
computed deterministically here; language-judgment flags arrive from the
risk-screen agent and are merged into the report by the caller.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from datetime import date, datetime
from enum import Enum
from pathlib import Path
from typing import Protocol

from pydantic import BaseModel, Field

from .domain import (
    DEFAULT_SEVERITIES,
    CandidateProfile,
    EmploymentEntry,
    Evidence,
    EvidenceKind,
    LinkedAccount,
    MissingItems,
    PublicRecord,
    RiskFlag,
    RiskKind,
)
from .errors import InvalidInputError

logger = logging.getLogger(__name__)

LINKAGE_THRESHOLD = 0.8
MIN_CORROBORATING_ATTRIBUTES = 2
MAX_GAP_MONTHS = 12

# Attribute-overlap weights; a candidate-listed URL is the strongest signal.
ATTRIBUTE_WEIGHTS = {
    "listed_url": 0.4,
    "name": 0.2,
    "employer": 0.2,
    "education": 0.2,
}


class SourceClient(Protocol):
    """One public platform. lookup returns candidate records found by search."""

    def lookup(self, profile: CandidateProfile) -> list[PublicRecord]: ...


class FixtureSourceClient:
    """Replays recorded public profiles from a per-platform JSON file.

    Lookup emulates a search: records match when the name matches the
    candidate or the record's URL appears among the candidate's listed URLs.
    """

    def __init__(self, platform: str, path: str | Path):
        self.platform = platform
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
        self.records = [PublicRecord.model_validate(r) for r in payload["records"]]

    def lookup(self, profile: CandidateProfile) -> list[PublicRecord]:
        name = profile.personal.full_name.casefold().strip()
        listed = {_norm_url(u) for u in profile.listed_profile_urls}
        hits = []
        for record in self.records:
            name_hit = bool(name) and record.name.casefold().strip() == name
            url_hit = any(_norm_url(u) in listed for u in record.urls)
            if name_hit or url_hit:
                hits.append(record)
        return hits


SourceClientSet = dict[str, SourceClient]


def _norm_url(url: str) -> str:
    return url.strip().lower().rstrip("/").removeprefix("https://").removeprefix("http://").removeprefix("www.")


@dataclass
class RejectedLinkage:
    platform: str
    record_ref: str
    confidence: float
    matched_attributes: list[str]
    listed_by_candidate: bool


@dataclass
class LinkageResult:
    accepted: list[LinkedAccount] = field(default_factory=list)
    rejected: list[RejectedLinkage] = field(default_factory=list)


def _score_record(profile: CandidateProfile, record: PublicRecord) -> tuple[float, list[str]]:
    matched = []
    name = profile.personal.full_name.casefold().strip()
    if name and record.name.casefold().strip() == name:
        matched.append("name")
    listed = {_norm_url(u) for u in profile.listed_profile_urls}
    if any(_norm_url(u) in listed for u in record.urls):
        matched.append("listed_url")
    claim_employers = {e.employer.casefold().strip() for e in profile.personal.employment}
    if any(e.employer.casefold().strip() in claim_employers for e in record.employers):
        matched.append("employer")
    claim_schools = {e.institution.casefold().strip() for e in profile.personal.education}
    if any(s.casefold().strip() in claim_schools for s in record.education):
        matched.append("education")
    confidence = min(1.0, sum(ATTRIBUTE_WEIGHTS[a] for a in matched))
    return confidence, matched


def link_accounts(
    profile: CandidateProfile,
    sources: SourceClientSet,
    threshold: float = LINKAGE_THRESHOLD,
) -> LinkageResult:
    """Look the candidate up on every registered source and keep only links
    with confidence >= *threshold* and >= 2 corroborating attributes.

    A source client's transport failure skips that source with a warning; it
    never fails the candidate.
    """
    if not sources:
        raise InvalidInputError("source registry must be non-empty")
    result = LinkageResult()
    listed = {_norm_url(u) for u in profile.listed_profile_urls}
    for platform in sorted(sources):
        try:
            records = sources[platform].lookup(profile)
        except Exception as exc:  # noqa: BLE001 - degraded, not fatal
            logger.warning("source %s lookup failed for %s: %s", platform, profile.candidate_id, exc)
            continue
        for record in records:
            confidence, matched = _score_record(profile, record)
            if confidence >= threshold and len(matched) >= MIN_CORROBORATING_ATTRIBUTES:
                result.accepted.append(LinkedAccount(
                    platform=platform,
                    handle_or_url=record.record_ref,
                    linkage_confidence=confidence,
                    corroborating_attributes=matched,
                    fetched_records=_record_evidence(platform, record),
                    record=record,
                ))
            else:
                rejection = RejectedLinkage(
                    platform=platform,
                    record_ref=record.record_ref,
                    confidence=confidence,
                    matched_attributes=matched,
                    listed_by_candidate=any(_norm_url(u) in listed for u in record.urls),
                )
                result.rejected.append(rejection)
                logger.info(
                    "rejected %s record %s for %s: confidence=%.2f attrs=%s",
                    platform, record.record_ref, profile.candidate_id,
                    confidence, matched,
                )
    return result


def _record_evidence(platform: str, record: PublicRecord) -> list[Evidence]:
    evidence = []
    for i, emp in enumerate(record.employers):
        span = f"{emp.start or '?'} to {emp.end or 'present'}"
        evidence.append(Evidence(
            evidence_id=f"pub:{platform}:{record.record_ref}:emp{i}",
            kind=EvidenceKind.PUBLIC_ACTIVITY,
            source_ref=record.record_ref,
            excerpt=f"{emp.employer} ({emp.title or 'role unlisted'}), {span}",
        ))
    if record.summary:
        evidence.append(Evidence(
            evidence_id=f"pub:{platform}:{record.record_ref}:summary",
            kind=EvidenceKind.PUBLIC_ACTIVITY,
            source_ref=record.record_ref,
            excerpt=record.summary,
        ))
    return evidence


# ---------------------------------------------------------------------------
# Consistency check
# ---------------------------------------------------------------------------

class MatchedPair(BaseModel):
    """A profile claim corroborated or contradicted by a fetched record."""

    description: str
    claim_evidence_ids: list[str] = Field(default_factory=list)
    record_evidence_ids: list[str] = Field(default_factory=list)


class ConsistencyReport(BaseModel):
    candidate_id: str
    similarities: list[MatchedPair] = Field(default_factory=list)
    discrepancies: list[MatchedPair] = Field(default_factory=list)
    red_flags: list[RiskFlag] = Field(default_factory=list)


def _severity(kind: RiskKind, table: dict[RiskKind, float] | None) -> float:
    if table and kind in table:
        return table[kind]
    return DEFAULT_SEVERITIES[kind]


def _interval(entry: EmploymentEntry) -> tuple[date, date]:
    return entry.start, entry.end or date.max


def _month_index(d: date) -> int:
    return d.year * 12 + d.month


def check_consistency(
    profile: CandidateProfile,
    accounts: list[LinkedAccount],
    agent_flags: list[RiskFlag] | None = None,
    severity_table: dict[RiskKind, float] | None = None,
    max_gap_months: int = MAX_GAP_MONTHS,
) -> ConsistencyReport:
    """Compare every employment/education claim against fetched records and
    apply the deterministic intra-profile rules.

    Matches become similarities; conflicting dates or titles become
    discrepancies (date conflicts also raise a flag). With no accounts there
    are no similarities or discrepancies, but intra-profile rules (date
    order, gaps, overlapping jobs) still fire. *agent_flags* from the
    language-judgment screen are merged into the result.
    """
    report = ConsistencyReport(candidate_id=profile.candidate_id)

    for account in accounts:
        if account.record is None:
            continue
        _compare_with_record(profile, account, report, severity_table)

    _intra_profile_rules(profile, report, severity_table, max_gap_months)
    report.red_flags.extend(agent_flags or [])
    return report


def _compare_with_record(
    profile: CandidateProfile,
    account: LinkedAccount,
    report: ConsistencyReport,
    severity_table: dict[RiskKind, float] | None,
) -> None:
    record = account.record
    assert record is not None
    record_ev_by_index = {
        i: ev.evidence_id
        for i, ev in enumerate(e for e in account.fetched_records if ":emp" in e.evidence_id)
    }
    for claim in profile.personal.employment:
        for i, rec_emp in enumerate(record.employers):
            if claim.employer.casefold().strip() != rec_emp.employer.casefold().strip():
                continue
            rec_ids = [record_ev_by_index[i]] if i in record_ev_by_index else []
            claim_span = f"{claim.start} to {claim.end or 'present'}"
            rec_span = f"{rec_emp.start or '?'} to {rec_emp.end or 'present'}"
            if _same_span(claim, rec_emp):
                report.similarities.append(MatchedPair(
                    description=(
                        f"{claim.employer}: claimed {claim_span} matches "
                        f"{record.platform} record"
                    ),
                    claim_evidence_ids=claim.evidence_ids,
                    record_evidence_ids=rec_ids,
                ))
            else:
                description = (
                    f"{claim.employer}: claimed {claim_span} but {record.platform} "
                    f"record shows {rec_span}"
                )
                report.discrepancies.append(MatchedPair(
                    description=description,
                    claim_evidence_ids=claim.evidence_ids,
                    record_evidence_ids=rec_ids,
                ))
                report.red_flags.append(RiskFlag(
                    kind=RiskKind.DATE_INCONSISTENCY,
                    severity=_severity(RiskKind.DATE_INCONSISTENCY, severity_table),
                    rationale=description,
                    evidence_ids=claim.evidence_ids + rec_ids,
                ))
            if claim.title and rec_emp.title and claim.title.casefold() != rec_emp.title.casefold():
                report.discrepancies.append(MatchedPair(
                    description=(
                        f"{claim.employer}: claimed title {claim.title!r} but "
                        f"{record.platform} record shows {rec_emp.title!r}"
                    ),
                    claim_evidence_ids=claim.evidence_ids,
                    record_evidence_ids=rec_ids,
                ))
    claim_schools = {e.institution.casefold().strip(): e for e in profile.personal.education}
    for school in record.education:
        entry = claim_schools.get(school.casefold().strip())
        if entry is not None:
            report.similarities.append(MatchedPair(
                description=f"{entry.institution}: education confirmed by {record.platform} record",
                claim_evidence_ids=entry.evidence_ids,
            ))


def _same_span(claim: EmploymentEntry, rec: "object") -> bool:
    return claim.start == rec.start and claim.end == rec.end


def _intra_profile_rules(
    profile: CandidateProfile,
    report: ConsistencyReport,
    severity_table: dict[RiskKind, float] | None,
    max_gap_months: int,
) -> None:
    jobs = profile.personal.employment
    inverted = [j for j in jobs if j.end is not None and j.end < j.start]
    if inverted:
        names = ", ".join(f"{j.employer} ({j.start} to {j.end})" for j in inverted)
        report.red_flags.append(RiskFlag(
            kind=RiskKind.DATE_INCONSISTENCY,
            severity=_severity(RiskKind.DATE_INCONSISTENCY, severity_table),
            rationale=f"Employment ranges end before they start: {names}",
            evidence_ids=[eid for j in inverted for eid in j.evidence_ids],
        ))

    valid = sorted((j for j in jobs if j not in inverted), key=lambda j: (j.start, j.employer))
    gaps = []
    for prev, nxt in zip(valid, valid[1:]):
        if prev.end is None:
            continue  # ongoing role, no gap after it
        gap_months = _month_index(nxt.start) - _month_index(prev.end)
        if gap_months > max_gap_months:
            gaps.append(f"{prev.employer} to {nxt.employer} ({gap_months} months)")
    if gaps:
        report.red_flags.append(RiskFlag(
            kind=RiskKind.EMPLOYMENT_GAP,
            severity=_severity(RiskKind.EMPLOYMENT_GAP, severity_table),
            rationale="Employment gaps over "
                      f"{max_gap_months} months: " + "; ".join(gaps),
        ))

    overlaps = []
    for i, a in enumerate(valid):
        for b in valid[i + 1:]:
            a_start, a_end = _interval(a)
            b_start, b_end = _interval(b)
            if a_start < b_end and b_start < a_end and a.employer != b.employer:
                overlaps.append(f"{a.employer} overlaps {b.employer}")
    if overlaps:
        report.red_flags.append(RiskFlag(
            kind=RiskKind.CONCURRENT_JOBS,
            severity=_severity(RiskKind.CONCURRENT_JOBS, severity_table),
            rationale="Concurrent full-time ranges: " + "; ".join(sorted(set(overlaps))),
        ))


def no_public_evidence_flag(
    profile: CandidateProfile,
    linkage: LinkageResult,
    severity_table: dict[RiskKind, float] | None = None,
) -> RiskFlag | None:
    """Flag when the candidate listed public profiles but none could be
    linked, whether lookups came back empty or every hit was rejected.

    Candidates who listed nothing are not penalized for having no links."""
    if not profile.listed_profile_urls or linkage.accepted:
        return None
    urls = ", ".join(sorted(profile.listed_profile_urls))
    return RiskFlag(
        kind=RiskKind.NO_PUBLIC_EVIDENCE,
        severity=_severity(RiskKind.NO_PUBLIC_EVIDENCE, severity_table),
        rationale=f"None of the candidate-listed profiles could be corroborated: {urls}",
    )


# ---------------------------------------------------------------------------
# Clarification outbox
# ---------------------------------------------------------------------------

class OutboxStatus(str, Enum):
    PENDING = "pending"
    SENT = "sent"
    ANSWERED = "answered"


class OutboxMessage(BaseModel):
    candidate_id: str
    requested_items: list[str]
    created_at: datetime
    status: OutboxStatus = OutboxStatus.PENDING


def draft_clarification(
    candidate_id: str,
    missing: MissingItems,
    uncertainty: list[str] | None = None,
    created_at: datetime | None = None,
) -> OutboxMessage:
    """One pending message enumerating each missing artifact and uncertain claim."""
    uncertainty = uncertainty or []
    requested = []
    if missing.resume_missing:
        requested.append("Please submit your resume.")
    if missing.assignment_missing:
        requested.append("Please submit your technical assignment solution.")
    for qid in missing.unanswered_question_ids:
        requested.append(f"Please answer screening question {qid}.")
    for item in uncertainty:
        requested.append(f"Please clarify: {item}")
    if not requested:
        raise InvalidInputError("nothing to request: no missing items and no uncertainty")
    return OutboxMessage(
        candidate_id=candidate_id,
        requested_items=requested,
        created_at=created_at or datetime.now().astimezone(),
    )

from __future__ import annotations

from datetime import date, datetime, timezone

import pytest
from pydantic import ValidationError

from hireflow.domain import (
    CULTURE_CATEGORIES,
    DEFAULT_SEVERITIES,
    Answer,
    CandidateProfile,
    CompanyValues,
    EmploymentEntry,
    Evidence,
    EvidenceKind,
    JobSpec,
    Modality,
    PersonalInfo,
    RequiredSkill,
    RiskFlag,
    RiskKind,
    SkillEntry,
    Submission,
    parse_flex_date,
    validate_profile,
)
from hireflow.errors import InvalidInputError

NOW = datetime(2026, 7, 14, 9, 0, tzinfo=timezone.utc)


class TestFlexDate:
    def test_full_date(self):
        assert parse_flex_date("2021-03-15") == date(2021, 3, 15)

    def test_year_month_defaults_day(self):
        assert parse_flex_date("2021-03") == date(2021, 3, 1)

    def test_date_passthrough(self):
        d = date(2020, 1, 2)
        assert parse_flex_date(d) is d

    @pytest.mark.parametrize("bad", ["2021", "03-2021", "2021-13", "2021-02-30", "soon"])
    def test_rejects_non_dates(self, bad):
        with pytest.raises(InvalidInputError):
            parse_flex_date(bad)


class TestAnswer:
    def test_video_requires_content_ref(self):
        with pytest.raises(ValidationError):
            Answer(question_id="q1", modality=Modality.VIDEO)

    def test_text_requires_transcript(self):
        with pytest.raises(ValidationError):
            Answer(question_id="q1", modality=Modality.TEXT, transcript="   ")

    def test_valid_video(self):
        a = Answer(question_id="q1", modality=Modality.VIDEO, content_ref="clip.json")
        assert a.content_ref == "clip.json"


def test_submission_needs_at_least_one_artifact():
    with pytest.raises(ValidationError):
        Submission(candidate_id="c1", received_at=NOW)
    # a lone answer is enough
    sub = Submission(
        candidate_id="c1",
        answers=[Answer(question_id="q1", modality=Modality.TEXT, transcript="hi")],
        received_at=NOW,
    )
    assert sub.resume_ref is None


def test_company_values_require_all_seven_categories():
    full = {c: "desc" for c in CULTURE_CATEGORIES}
    CompanyValues(culture_categories=full)

    partial = dict(full)
    del partial["ownership"]
    with pytest.raises(ValidationError):
        CompanyValues(culture_categories=partial)

    extra = dict(full, extraversion="not a category")
    with pytest.raises(ValidationError):
        CompanyValues(culture_categories=extra)


def test_job_spec_requires_skills():
    with pytest.raises(ValidationError):
        JobSpec(role_title="Backend", seniority="mid", description="x", required_skills=[])
    spec = JobSpec(
        role_title="Backend",
        seniority="mid",
        description="x",
        required_skills=[RequiredSkill(name="python", weight=1.0)],
    )
    assert spec.required_skills[0].name == "python"


class TestRiskFlag:
    def test_severity_bounds(self):
        with pytest.raises(ValidationError):
            RiskFlag(kind=RiskKind.VAGUE_PHRASING, severity=1.5, rationale="x")
        with pytest.raises(ValidationError):
            RiskFlag(kind=RiskKind.VAGUE_PHRASING, severity=-0.1, rationale="x")

    def test_rationale_required(self):
        with pytest.raises(ValidationError):
            RiskFlag(kind=RiskKind.VAGUE_PHRASING, severity=0.05, rationale="  ")

    def test_default_severity_table_covers_every_kind(self):
        assert set(DEFAULT_SEVERITIES) == set(RiskKind)
        assert DEFAULT_SEVERITIES[RiskKind.TOXICITY_OR_EXTREMISM] == 1.0
        assert DEFAULT_SEVERITIES[RiskKind.DECEPTION_INDICATOR] == 0.40
        assert DEFAULT_SEVERITIES[RiskKind.VIDEO_DECLINED] == 0.05


def _profile(**overrides) -> CandidateProfile:
    base = dict(
        candidate_id="c1",
        personal=PersonalInfo(
            full_name="Test Person",
            employment=[EmploymentEntry(
                employer="Acme", title="Engineer", start="2020-01",
                evidence_ids=["ev-1"],
            )],
        ),
        skills=[SkillEntry(canonical_name="python", evidence_ids=["ev-1"], confidence=0.9)],
        evidence=[Evidence(
            evidence_id="ev-1", kind=EvidenceKind.RESUME_CLAIM,
            source_ref="resume.md", excerpt="Acme engineer", confidence=0.9,
        )],
    )
    base.update(overrides)
    return CandidateProfile(**base)


class TestValidateProfile:
    def test_clean_profile_has_no_findings(self):
        report = validate_profile(_profile())
        assert report.ok, report.findings

    def test_dangling_evidence_reported_not_raised(self):
        profile = _profile(skills=[SkillEntry(
            canonical_name="python", evidence_ids=["ev-nope"], confidence=0.9,
        )])
        report = validate_profile(profile)
        assert not report.ok
        assert any(f.kind == "dangling_evidence" for f in report.findings)

    def test_out_of_range_confidence_reported(self):
        profile = _profile(evidence=[Evidence(
            evidence_id="ev-1", kind=EvidenceKind.RESUME_CLAIM,
            source_ref="resume.md", excerpt="x", confidence=1.7,
        )])
        report = validate_profile(profile)
        assert any(f.kind == "confidence_range" for f in report.findings)

    def test_duplicate_evidence_ids_reported(self):
        ev = Evidence(
            evidence_id="ev-1", kind=EvidenceKind.RESUME_CLAIM,
            source_ref="resume.md", excerpt="x", confidence=0.9,
        )
        report = validate_profile(_profile(evidence=[ev, ev]))
        assert any(f.kind == "duplicate_evidence_id" for f in report.findings)

    def test_inverted_employment_range_reported(self):
        profile = _profile(personal=PersonalInfo(
            full_name="Test Person",
            employment=[EmploymentEntry(
                employer="Acme", title="Engineer",
                start="2021-05", end="2020-01", evidence_ids=["ev-1"],
            )],
        ))
        report = validate_profile(profile)
        assert any(f.kind == "date_order" for f in report.findings)

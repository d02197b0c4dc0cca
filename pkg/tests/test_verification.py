from __future__ import annotations

import json
from datetime import datetime, timezone

import pytest

from hireflow.domain import (
    CandidateProfile,
    EducationEntry,
    EmploymentEntry,
    Evidence,
    EvidenceKind,
    LinkedAccount,
    MissingItems,
    PersonalInfo,
    PublicRecord,
    RiskFlag,
    RiskKind,
)
from hireflow.errors import InvalidInputError
from hireflow.verification import (
    FixtureSourceClient,
    LinkageResult,
    check_consistency,
    draft_clarification,
    link_accounts,
    no_public_evidence_flag,
)

NOW = datetime(2026, 7, 14, 9, 0, tzinfo=timezone.utc)


def _profile(employment=None, education=None, urls=None, name="Dana Kim") -> CandidateProfile:
    return CandidateProfile(
        candidate_id="c1",
        personal=PersonalInfo(
            full_name=name,
            employment=employment or [],
            education=education or [],
        ),
        listed_profile_urls=urls or [],
    )


def _record(**overrides) -> dict:
    base = dict(
        platform="github",
        record_ref="https://github.com/danakim",
        name="Dana Kim",
        employers=[{"employer": "Northwind Data", "title": "Senior Backend Engineer",
                    "start": "2019-06", "end": None}],
        education=["University of Washington"],
        urls=["https://github.com/danakim"],
        summary="active contributor",
    )
    base.update(overrides)
    return base


def _sources(tmp_path, records, platform="github"):
    path = tmp_path / f"{platform}.json"
    path.write_text(json.dumps({"records": records}), encoding="utf-8")
    return {platform: FixtureSourceClient(platform, path)}


NORTHWIND = EmploymentEntry(
    employer="Northwind Data", title="Senior Backend Engineer", start="2019-06",
)
UW = EducationEntry(institution="University of Washington", degree="BSc")


class TestLinkAccounts:
    def test_strong_match_accepted(self, tmp_path):
        profile = _profile(employment=[NORTHWIND], urls=["https://github.com/danakim"])
        result = link_accounts(profile, _sources(tmp_path, [_record()]))
        assert len(result.accepted) == 1
        account = result.accepted[0]
        assert account.platform == "github"
        assert "listed_url" in account.corroborating_attributes
        assert account.linkage_confidence >= 0.8
        assert result.rejected == []

    def test_url_only_match_rejected_as_listed(self, tmp_path):
        # Listed URL resolves, but nothing else corroborates: too thin to link.
        profile = _profile(urls=["https://github.com/shaddad"], name="Sara Haddad")
        records = [_record(name="S. Haddad", record_ref="https://github.com/shaddad",
                           urls=["https://github.com/shaddad"], employers=[], education=[])]
        result = link_accounts(profile, _sources(tmp_path, records))
        assert result.accepted == []
        assert len(result.rejected) == 1
        rejected = result.rejected[0]
        assert rejected.listed_by_candidate
        assert rejected.matched_attributes == ["listed_url"]
        assert rejected.confidence == pytest.approx(0.4)

    def test_name_collision_rejected_not_listed(self, tmp_path):
        profile = _profile(name="Viktor Petrov")
        records = [_record(name="Viktor Petrov", record_ref="https://github.com/other",
                           urls=["https://github.com/other"], employers=[], education=[])]
        result = link_accounts(profile, _sources(tmp_path, records))
        assert result.accepted == []
        assert not result.rejected[0].listed_by_candidate

    def test_threshold_override(self, tmp_path):
        # name + education = 0.4 with two attributes: in at 0.4, out at default.
        profile = _profile(education=[UW])
        records = [_record(urls=[], employers=[])]
        strict = link_accounts(profile, _sources(tmp_path, records))
        assert strict.accepted == []
        loose = link_accounts(profile, _sources(tmp_path, records), threshold=0.4)
        assert len(loose.accepted) == 1

    def test_url_normalization_matches_scheme_variants(self, tmp_path):
        profile = _profile(urls=["http://www.github.com/danakim/"], education=[UW])
        result = link_accounts(profile, _sources(tmp_path, [_record()]))
        assert len(result.accepted) == 1

    def test_empty_registry_rejected(self):
        with pytest.raises(InvalidInputError):
            link_accounts(_profile(), {})

    def test_broken_source_skipped(self, tmp_path):
        class Boom:
            def lookup(self, profile):
                raise RuntimeError("socket torn down")

        profile = _profile(employment=[NORTHWIND], urls=["https://github.com/danakim"])
        sources = _sources(tmp_path, [_record()])
        sources["linkedin"] = Boom()
        result = link_accounts(profile, sources)
        assert len(result.accepted) == 1  # github still linked

    def test_accepted_link_carries_fetched_evidence(self, tmp_path):
        profile = _profile(employment=[NORTHWIND], urls=["https://github.com/danakim"])
        result = link_accounts(profile, _sources(tmp_path, [_record()]))
        evidence = result.accepted[0].fetched_records
        assert evidence, "accepted link should carry public-activity evidence"
        assert all(e.evidence_id.startswith("pub:github:") for e in evidence)


def _linked(record_dict) -> LinkedAccount:
    record = PublicRecord.model_validate(record_dict)
    fetched = [
        Evidence(
            evidence_id=f"pub:{record.platform}:{record.record_ref}:emp{i}",
            kind=EvidenceKind.PUBLIC_ACTIVITY,
            source_ref=record.record_ref,
            excerpt=f"{emp.employer}, {emp.start or '?'} to {emp.end or 'present'}",
        )
        for i, emp in enumerate(record.employers)
    ]
    return LinkedAccount(
        platform=record.platform,
        handle_or_url=record.record_ref,
        linkage_confidence=0.8,
        corroborating_attributes=["name", "listed_url"],
        record=record,
        fetched_records=fetched,
    )


class TestConsistency:
    def test_matching_span_is_similarity(self):
        profile = _profile(employment=[NORTHWIND], education=[UW])
        report = check_consistency(profile, [_linked(_record())])
        assert len(report.similarities) == 2  # employment span + education
        assert report.discrepancies == []
        assert report.red_flags == []

    def test_conflicting_dates_flagged(self):
        claimed = EmploymentEntry(
            employer="Meridian Labs", title="Software Engineer",
            start="2020-01", end="2023-06",
        )
        record = _record(employers=[{
            "employer": "Meridian Labs", "title": "Software Engineer",
            "start": "2021-03", "end": "2023-06",
        }], education=[])
        report = check_consistency(_profile(employment=[claimed]), [_linked(record)])
        assert len(report.discrepancies) == 1
        assert "2021-03" in report.discrepancies[0].description
        kinds = [f.kind for f in report.red_flags]
        assert kinds == [RiskKind.DATE_INCONSISTENCY]
        # the flag cites both the claim and the public record
        flag = report.red_flags[0]
        assert any(e.startswith("pub:") for e in flag.evidence_ids)

    def test_title_mismatch_is_discrepancy_without_flag(self):
        record = _record(employers=[{
            "employer": "Northwind Data", "title": "Staff Engineer",
            "start": "2019-06", "end": None,
        }], education=[])
        report = check_consistency(_profile(employment=[NORTHWIND]), [_linked(record)])
        assert len(report.discrepancies) == 1
        assert report.red_flags == []

    def test_employment_gap_flagged(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="A", title="Eng", start="2016-04", end="2019-03"),
            EmploymentEntry(employer="B", title="Eng", start="2021-01"),
        ])
        report = check_consistency(profile, [])
        kinds = [f.kind for f in report.red_flags]
        assert kinds == [RiskKind.EMPLOYMENT_GAP]
        assert "22" in report.red_flags[0].rationale

    def test_gap_below_threshold_not_flagged(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="A", title="Eng", start="2016-04", end="2019-03"),
            EmploymentEntry(employer="B", title="Eng", start="2020-01"),
        ])
        assert check_consistency(profile, []).red_flags == []

    def test_gap_threshold_configurable(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="A", title="Eng", start="2016-04", end="2019-03"),
            EmploymentEntry(employer="B", title="Eng", start="2020-01"),
        ])
        report = check_consistency(profile, [], max_gap_months=6)
        assert [f.kind for f in report.red_flags] == [RiskKind.EMPLOYMENT_GAP]

    def test_concurrent_jobs_flagged(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="Quantum Retail", title="Eng",
                            start="2018-05", end="2021-12"),
            EmploymentEntry(employer="Nimbus Cloud", title="Eng",
                            start="2020-02", end="2022-08"),
        ])
        report = check_consistency(profile, [])
        assert [f.kind for f in report.red_flags] == [RiskKind.CONCURRENT_JOBS]

    def test_inverted_range_flagged_as_date_inconsistency(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="A", title="Eng", start="2021-05", end="2020-01"),
        ])
        report = check_consistency(profile, [])
        assert [f.kind for f in report.red_flags] == [RiskKind.DATE_INCONSISTENCY]

    def test_agent_flags_merged(self):
        vague = RiskFlag(kind=RiskKind.VAGUE_PHRASING, severity=0.05, rationale="generic")
        report = check_consistency(_profile(), [], agent_flags=[vague])
        assert report.red_flags == [vague]

    def test_severity_table_override(self):
        profile = _profile(employment=[
            EmploymentEntry(employer="A", title="Eng", start="2021-05", end="2020-01"),
        ])
        table = {RiskKind.DATE_INCONSISTENCY: 0.3}
        report = check_consistency(profile, [], severity_table=table)
        assert report.red_flags[0].severity == pytest.approx(0.3)


class TestNoPublicEvidence:
    def test_fires_when_listed_but_nothing_linked(self):
        profile = _profile(urls=["https://github.com/ghost"])
        flag = no_public_evidence_flag(profile, LinkageResult())
        assert flag is not None
        assert flag.kind is RiskKind.NO_PUBLIC_EVIDENCE
        assert "github.com/ghost" in flag.rationale

    def test_silent_when_nothing_listed(self):
        assert no_public_evidence_flag(_profile(), LinkageResult()) is None

    def test_silent_when_any_link_accepted(self):
        profile = _profile(urls=["https://github.com/danakim"])
        linkage = LinkageResult(accepted=[_linked(_record())])
        assert no_public_evidence_flag(profile, linkage) is None


class TestClarification:
    def test_enumerates_missing_items(self):
        missing = MissingItems(resume_missing=True, assignment_missing=True,
                               unanswered_question_ids=["q2"])
        msg = draft_clarification("c1", missing, created_at=NOW)
        assert len(msg.requested_items) == 3
        assert msg.requested_items[0] == "Please submit your resume."
        assert any("q2" in item for item in msg.requested_items)
        assert msg.status.value == "pending"

    def test_uncertainty_items_appended(self):
        msg = draft_clarification(
            "c1", MissingItems(),
            uncertainty=["the github profile you listed could not be matched to you"],
            created_at=NOW,
        )
        assert msg.requested_items == [
            "Please clarify: the github profile you listed could not be matched to you",
        ]

    def test_nothing_to_request_is_an_error(self):
        with pytest.raises(InvalidInputError):
            draft_clarification("c1", MissingItems(), created_at=NOW)

"""Per-candidate pipeline orchestration, INGESTED through RANKED.

Stage map:
  INGESTED   submission stored, completeness checked
  PROFILED   canonical doc built + sanitized, profile extracted, skills normalized
  AUGMENTED  public accounts linked, consistency + risk screen done
  ANALYZED   entity graph built, technical and culture fit scored
  SCORED     risk normalized, scorecard + report stored
  RANKED     pool-level sort published

A missing resume stalls the candidate with a clarification drafted to the
outbox; other missing items draft a clarification but the run continues with
an incomplete-profile penalty. Agent retry exhaustion fails the candidate,
keeping the transcript. Stalled and failed candidates never reach ranking.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from .agents.definitions import profile_extractor_spec
from .agents.providers import ModelProvider, ScriptedProvider
from .agents.runtime import invoke
from .config import AppConfig
from .domain import (
    CandidateProfile,
    EducationEntry,
    EmploymentEntry,
    Evidence,
    LinkedItem,
    MissingItems,
    Modality,
    PersonalInfo,
    RiskFlag,
    RiskKind,
    SkillEntry,
    Submission,
    validate_profile,
)
from .errors import AgentFailureError, ConfigurationError, InvalidInputError, NotFoundError
from .evaluation import UsageTotals
from .ingestion import (
    ExtractorSet,
    VideoMeta,
    assess_completeness,
    default_extractors,
    harmonize,
    plan_frames,
    sanitize,
    text_answer_penalty,
)
from .scoring import (
    Scorecard,
    assemble_report,
    build_entity_graph,
    build_scorecard,
    rank,
    ranking_csv,
    score_culture,
    score_technical,
    screen_risk,
    select_batch,
)
from .skills import AliasMap, default_alias_map
from .store import DocumentStore, PipelineStage
from .verification import (
    FixtureSourceClient,
    LinkageResult,
    SourceClientSet,
    check_consistency,
    draft_clarification,
    link_accounts,
    no_public_evidence_flag,
)

logger = logging.getLogger(__name__)


@dataclass
class PipelineContext:
    store: DocumentStore
    config: AppConfig
    extractors: ExtractorSet
    sources: SourceClientSet
    alias_map: AliasMap
    provider_factory: Callable[[str], ModelProvider]
    injection_patterns: list[str] | None = None
    _video_meta_base: Path | None = field(default=None, repr=False)


def build_context(config: AppConfig, store: DocumentStore | None = None) -> PipelineContext:
    """Wire a context from config: fixture extractors, recorded source
    clients, and the scripted provider replaying per-candidate fixtures."""
    if config.provider != "scripted":
        raise ConfigurationError(
            f"unknown provider {config.provider!r}; this build ships 'scripted'"
        )
    store = store or DocumentStore(config.store_path())
    submissions_dir = config.fixtures_path() / "submissions"
    agents_dir = config.fixtures_path() / "agents"
    sources: SourceClientSet = {}
    for platform, path in config.source_paths().items():
        sources[platform] = FixtureSourceClient(platform, path)
    return PipelineContext(
        store=store,
        config=config,
        extractors=default_extractors(submissions_dir),
        sources=sources,
        alias_map=default_alias_map(),
        provider_factory=lambda cid: ScriptedProvider(agents_dir / cid),
        _video_meta_base=submissions_dir,
    )


# ---------------------------------------------------------------------------
# Ingest
# ---------------------------------------------------------------------------

def ingest_submission(store: DocumentStore, submission: Submission):
    store.put("submissions", submission.candidate_id, submission)
    return store.init_state(submission.candidate_id)


def ingest_dir(store: DocumentStore, submissions_dir: str | Path) -> list[str]:
    """Load every `<cid>/submission.json` under the directory, sorted by id."""
    root = Path(submissions_dir)
    if not root.is_dir():
        raise NotFoundError(f"submissions directory {root} not found")
    ingested = []
    for sub_file in sorted(root.glob("*/submission.json")):
        submission = Submission.model_validate(
            json.loads(sub_file.read_text(encoding="utf-8"))
        )
        if submission.candidate_id != sub_file.parent.name:
            raise InvalidInputError(
                f"{sub_file}: candidate_id {submission.candidate_id!r} does not "
                f"match directory {sub_file.parent.name!r}"
            )
        ingest_submission(store, submission)
        ingested.append(submission.candidate_id)
    return ingested


# ---------------------------------------------------------------------------
# Profile assembly from agent output
# ---------------------------------------------------------------------------

def profile_from_payload(
    candidate_id: str,
    payload: dict,
    alias_map: AliasMap,
    completeness: MissingItems,
) -> CandidateProfile:
    """Turn the extractor agent's JSON into a profile with normalized skills.

    Raw skill names that normalize to the same canonical name are merged:
    alias lists and evidence unioned, confidence taken as the max."""
    merged: dict[str, SkillEntry] = {}
    for entry in payload["skills"]:
        normalized = normalize_with_evidence(entry, alias_map)
        existing = merged.get(normalized.canonical_name)
        if existing is None:
            merged[normalized.canonical_name] = normalized
        else:
            merged[normalized.canonical_name] = existing.model_copy(update={
                "aliases_matched": existing.aliases_matched + [
                    a for a in normalized.aliases_matched
                    if a not in existing.aliases_matched
                ],
                "evidence_ids": existing.evidence_ids + [
                    e for e in normalized.evidence_ids
                    if e not in existing.evidence_ids
                ],
                "confidence": max(existing.confidence, normalized.confidence),
            })
    return CandidateProfile(
        candidate_id=candidate_id,
        personal=PersonalInfo(
            full_name=payload["full_name"],
            education=[EducationEntry.model_validate(e) for e in payload["education"]],
            employment=[EmploymentEntry.model_validate(e) for e in payload["employment"]],
        ),
        skills=list(merged.values()),
        projects=[LinkedItem.model_validate(x) for x in payload["projects"]],
        technologies=[LinkedItem.model_validate(x) for x in payload["technologies"]],
        languages=[LinkedItem.model_validate(x) for x in payload["languages"]],
        achievements=[LinkedItem.model_validate(x) for x in payload["achievements"]],
        listed_profile_urls=payload["listed_profile_urls"],
        evidence=[Evidence.model_validate(e) for e in payload["evidence"]],
        completeness=completeness,
    )


def normalize_with_evidence(entry: dict, alias_map: AliasMap) -> SkillEntry:
    from .skills import normalize_skill

    skill = normalize_skill(entry["name"], alias_map)
    return skill.model_copy(update={
        "evidence_ids": entry.get("evidence_ids", []),
        "confidence": entry.get("confidence", 1.0),
    })


# ---------------------------------------------------------------------------
# Per-candidate run
# ---------------------------------------------------------------------------

def _run_agent(store: DocumentStore, cid: str, name: str, call):
    """Invoke wrapper that persists the transcript on success and failure."""
    try:
        result, transcript = call()
    except AgentFailureError as exc:
        store.put_transcript(cid, name, exc.transcript)
        raise
    if transcript is not None:
        store.put_transcript(cid, name, transcript)
    return result


def _video_metas(ctx: PipelineContext, submission: Submission) -> list[VideoMeta]:
    metas = []
    if ctx._video_meta_base is None:
        return metas
    for answer in submission.answers:
        if answer.modality is not Modality.VIDEO:
            continue
        path = ctx._video_meta_base / submission.candidate_id / answer.content_ref
        if not path.exists():
            path = ctx._video_meta_base / answer.content_ref
        if path.exists():
            metas.append(VideoMeta.model_validate(json.loads(path.read_text(encoding="utf-8"))))
    return metas


def _media_usage(metas: list[VideoMeta]) -> tuple[float, int]:
    minutes = sum(m.duration_s for m in metas) / 60.0
    frames = sum(len(plan_frames("video", m.duration_s).timestamps_s) for m in metas)
    return minutes, frames


def run_candidate(ctx: PipelineContext, candidate_id: str):
    """Run one candidate from INGESTED to SCORED (ranking is pool-level)."""
    store = ctx.store
    cfg = ctx.config
    table = cfg.ranking.severity_table
    state = store.get_state(candidate_id)
    if state.stage is not PipelineStage.INGESTED:
        raise InvalidInputError(
            f"{candidate_id} is at {state.stage.value}; pipeline runs start from INGESTED"
        )
    submission = store.get_model("submissions", candidate_id, Submission)

    completeness = assess_completeness(submission, cfg.required_questions)
    if completeness.resume_missing:
        store.append_outbox(draft_clarification(
            candidate_id, completeness, created_at=submission.received_at,
        ))
        return store.advance_stage(
            candidate_id, PipelineStage.STALLED,
            error="resume missing; clarification request drafted",
        )

    doc = sanitize(harmonize(submission, ctx.extractors), ctx.injection_patterns)
    store.put("docs", candidate_id, doc)
    provider = ctx.provider_factory(candidate_id)

    try:
        payload = _run_agent(store, candidate_id, "profile_extractor", lambda: invoke(
            profile_extractor_spec(),
            {"role_title": cfg.job_spec.role_title, "document": doc.full_text()},
            provider,
        ))
        profile = profile_from_payload(candidate_id, payload, ctx.alias_map, completeness)
        validation = validate_profile(profile)
        for finding in validation.findings:
            logger.warning("%s profile validation: %s", candidate_id, finding.message)
        store.put("profiles", candidate_id, profile)
        store.advance_stage(candidate_id, PipelineStage.PROFILED)

        linkage = LinkageResult()
        if ctx.sources:
            linkage = link_accounts(profile, ctx.sources, cfg.thresholds.linkage_confidence)
        profile = profile.model_copy(update={"linked_accounts": linkage.accepted})
        store.put("profiles", candidate_id, profile)
        store.put("linkage", candidate_id, {
            "accepted": [a.model_dump(mode="json") for a in linkage.accepted],
            "rejected": [vars(r) for r in linkage.rejected],
        })
        agent_flags = _run_agent(store, candidate_id, "risk_screen", lambda: screen_risk(
            profile, doc, provider, table,
        ))
        consistency = check_consistency(
            profile, linkage.accepted, agent_flags, table, cfg.thresholds.max_gap_months,
        )
        store.put("consistency", candidate_id, consistency)
        rejected_listed = [r for r in linkage.rejected if r.listed_by_candidate]
        if completeness.any_missing or rejected_listed:
            uncertainty = [
                f"the {r.platform} profile you listed could not be matched to you"
                for r in rejected_listed
            ]
            store.append_outbox(draft_clarification(
                candidate_id, completeness, uncertainty, submission.received_at,
            ))
        store.advance_stage(candidate_id, PipelineStage.AUGMENTED)

        graph = _run_agent(store, candidate_id, "entity_graph",
                           lambda: build_entity_graph(doc, provider))
        technical = _run_agent(store, candidate_id, "technical_fit",
                               lambda: score_technical(graph, cfg.job_spec, provider))
        culture = _run_agent(store, candidate_id, "culture_fit",
                             lambda: score_culture(profile, cfg.company_values, provider))
        store.advance_stage(candidate_id, PipelineStage.ANALYZED)
    except AgentFailureError as exc:
        return store.advance_stage(candidate_id, PipelineStage.FAILED, error=str(exc))

    flags = list(consistency.red_flags)
    if (flag := no_public_evidence_flag(profile, linkage, table)) is not None:
        flags.append(flag)
    if (flag := text_answer_penalty(
            submission.answers, table[RiskKind.VIDEO_DECLINED])) is not None:
        flags.append(flag)
    if completeness.any_missing:
        missing_bits = []
        if completeness.assignment_missing:
            missing_bits.append("assignment")
        missing_bits += [f"answer to {q}" for q in completeness.unanswered_question_ids]
        flags.append(RiskFlag(
            kind=RiskKind.INCOMPLETE_PROFILE,
            severity=table[RiskKind.INCOMPLETE_PROFILE],
            rationale="Submission incomplete: missing " + ", ".join(missing_bits),
        ))
    metas = _video_metas(ctx, submission)
    if any(not m.same_person for m in metas):
        flags.append(RiskFlag(
            kind=RiskKind.DECEPTION_INDICATOR,
            severity=table[RiskKind.DECEPTION_INDICATOR],
            rationale="Vision check: the person on video does not match across "
                      "the submitted materials",
        ))

    scorecard = build_scorecard(candidate_id, technical, culture, flags, cfg.ranking)
    scorecard = scorecard.model_copy(update={
        "report_md": assemble_report(scorecard, consistency),
    })
    store.put("scorecards", candidate_id, scorecard)

    tokens_in = tokens_out = 0
    for transcript_id in store.list_transcripts(candidate_id):
        usage = store.get("transcripts", transcript_id)["token_usage"]
        tokens_in += usage["input_tokens"]
        tokens_out += usage["output_tokens"]
    minutes, frames = _media_usage(metas)
    store.put("usage", candidate_id, UsageTotals(
        input_tokens=tokens_in, output_tokens=tokens_out,
        audio_minutes=minutes, frames=frames,
    ))
    return store.advance_stage(candidate_id, PipelineStage.SCORED)


# ---------------------------------------------------------------------------
# Pool-level operations
# ---------------------------------------------------------------------------

def run_pool(store: DocumentStore, cfg: AppConfig) -> list[Scorecard]:
    """Rank every scored candidate and advance SCORED ones to RANKED."""
    cards = [
        store.get_model("scorecards", cid, Scorecard)
        for cid in store.list_ids("scorecards")
    ]
    ranked = rank(cards, cfg.ranking)
    store.put("rankings", "latest", {
        "order": [sc.candidate_id for sc in ranked],
        "csv": ranking_csv(ranked),
    })
    for sc in ranked:
        if store.get_state(sc.candidate_id).stage is PipelineStage.SCORED:
            store.advance_stage(sc.candidate_id, PipelineStage.RANKED)
    return ranked


def run_all(ctx: PipelineContext) -> dict[str, str]:
    """Run every INGESTED candidate, then publish the ranking.

    Returns candidate_id -> final stage name; per-candidate failures are
    recorded, not raised, so one bad candidate cannot block the pool."""
    outcome: dict[str, str] = {}
    for cid in ctx.store.list_ids("submissions"):
        state = ctx.store.get_state(cid)
        if state.stage is not PipelineStage.INGESTED:
            outcome[cid] = state.stage.value
            continue
        outcome[cid] = run_candidate(ctx, cid).stage.value
    run_pool(ctx.store, ctx.config)
    for cid in list(outcome):
        outcome[cid] = ctx.store.get_state(cid).stage.value
    return outcome


def ranked_scorecards(store: DocumentStore) -> list[Scorecard]:
    try:
        order = store.get("rankings", "latest")["order"]
    except NotFoundError:
        return []
    return [store.get_model("scorecards", cid, Scorecard) for cid in order]


def next_batch(store: DocumentStore, cfg: AppConfig) -> list[Scorecard]:
    """Select the next undecided batch and mark its members IN_REVIEW.

    Sticky: candidates already IN_REVIEW stay with their reviewer and are
    not re-issued; decided candidates never come back."""
    ranked = ranked_scorecards(store)
    excluded = set(store.decided_ids())
    for sc in ranked:
        if store.get_state(sc.candidate_id).stage in (
                PipelineStage.IN_REVIEW, PipelineStage.DECIDED):
            excluded.add(sc.candidate_id)
    batch = select_batch(ranked, 0, cfg.ranking, excluded)
    for sc in batch:
        store.advance_stage(sc.candidate_id, PipelineStage.IN_REVIEW)
    return batch


def collect_usage(store: DocumentStore) -> UsageTotals:
    total = UsageTotals()
    for cid in store.list_ids("usage"):
        total = total.merged(store.get_model("usage", cid, UsageTotals))
    return total

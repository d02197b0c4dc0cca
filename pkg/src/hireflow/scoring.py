"""Component scores, risk normalization, the total score, ranking, batches.

The total score is a weighted blend of technical and culture fit minus a
capped risk penalty:

    s_total = beta * t_tech + (1 - beta) * t_culture - r_total

with every component in [0, 1], so s_total always lands in [-1, 1]. Ranking
sorts by s_total descending with deterministic tie-breaks (t_tech, then
candidate id) so the same pool always produces the same order.
"""

from __future__ import annotations

import json
import math

from pydantic import BaseModel, Field, field_validator, model_validator

from .agents.definitions import (
    culture_fit_spec,
    entity_graph_spec,
    risk_screen_spec,
    technical_fit_spec,
)
from .agents.providers import ModelProvider
from .agents.runtime import AgentTranscript, invoke
from .domain import (
    CULTURE_CATEGORIES,
    DEFAULT_SEVERITIES,
    CandidateProfile,
    CompanyValues,
    JobSpec,
    RiskFlag,
    RiskKind,
)
from .errors import InvalidInputError
from .ingestion import CanonicalDoc
from .verification import ConsistencyReport


# ---------------------------------------------------------------------------
# Entity graph
# ---------------------------------------------------------------------------

class Mention(BaseModel):
    surface_text: str
    location: str


class ResolvedEntity(BaseModel):
    """One disambiguated entity with the sense it was used in.

    The same surface form can resolve to different entities ("react" the
    framework in a skills section vs "react" the verb in an answer), which is
    why links hang off entities rather than mentions.
    """

    entity_id: str
    sense: str
    linked_category: str  # skill | achievement | attribute | background
    mention_indexes: list[int] = Field(min_length=1)


class EntityLink(BaseModel):
    entity_id: str
    target_kind: str  # skills | achievements | attributes
    target: str
    confidence: float = Field(ge=0.0, le=1.0)


class EntityGraph(BaseModel):
    mentions: list[Mention] = Field(default_factory=list)
    resolved_entities: list[ResolvedEntity] = Field(default_factory=list)
    links: list[EntityLink] = Field(default_factory=list)

    @model_validator(mode="after")
    def _well_formed(self) -> "EntityGraph":
        n = len(self.mentions)
        for entity in self.resolved_entities:
            bad = [i for i in entity.mention_indexes if i >= n]
            if bad:
                raise ValueError(
                    f"entity {entity.entity_id!r} references missing mentions {bad}"
                )
        known = {e.entity_id for e in self.resolved_entities}
        for link in self.links:
            if link.entity_id not in known:
                raise ValueError(f"link references unknown entity {link.entity_id!r}")
        return self


def build_entity_graph(
    doc: CanonicalDoc,
    provider: ModelProvider,
) -> tuple[EntityGraph, AgentTranscript | None]:
    """Two agent steps: mention scan, then disambiguation and linking.

    An empty document short-circuits to an empty graph without calling the
    provider, so blank submissions cost nothing.
    """
    text = doc.full_text()
    if not text.strip():
        return EntityGraph(), None
    payload, transcript = invoke(
        entity_graph_spec(), {"document": text}, provider,
    )
    return EntityGraph.model_validate(payload), transcript


# ---------------------------------------------------------------------------
# Component scores
# ---------------------------------------------------------------------------

class TechnicalFit(BaseModel):
    score: float = Field(ge=0.0, le=1.0)
    rationale: str
    evidence_ids: list[str] = Field(default_factory=list)


class CategoryScore(BaseModel):
    score: float = Field(ge=0.0, le=1.0)
    rationale: str


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(mode="json"), sort_keys=True, indent=2)


def score_technical(
    graph: EntityGraph,
    job: JobSpec,
    provider: ModelProvider,
) -> tuple[TechnicalFit, AgentTranscript]:
    payload, transcript = invoke(
        technical_fit_spec(),
        {"job_spec": _dump(job), "entity_graph": _dump(graph)},
        provider,
    )
    return TechnicalFit.model_validate(payload), transcript


def score_culture(
    profile: CandidateProfile,
    values: CompanyValues,
    provider: ModelProvider,
) -> tuple[dict[str, CategoryScore], AgentTranscript]:
    """The agent scores each category; aggregation stays in the engine."""
    payload, transcript = invoke(
        culture_fit_spec(),
        {"company_values": _dump(values), "profile": _dump(profile)},
        provider,
    )
    categories = {
        name: CategoryScore.model_validate(entry)
        for name, entry in payload["categories"].items()
    }
    return categories, transcript


def screen_risk(
    profile: CandidateProfile,
    doc: CanonicalDoc,
    provider: ModelProvider,
    severity_table: dict[RiskKind, float] | None = None,
) -> tuple[list[RiskFlag], AgentTranscript]:
    """Language-judgment screen: the agent names the indicator kinds, the
    engine attaches severities from the table."""
    table = severity_table or DEFAULT_SEVERITIES
    payload, transcript = invoke(
        risk_screen_spec(),
        {"profile": _dump(profile), "document": doc.full_text()},
        provider,
    )
    flags = []
    for entry in payload["flags"]:
        kind = RiskKind(entry["kind"])
        flags.append(RiskFlag(
            kind=kind,
            severity=table.get(kind, DEFAULT_SEVERITIES[kind]),
            rationale=entry["rationale"],
            evidence_ids=entry.get("evidence_ids", []),
        ))
    return flags, transcript


def aggregate_culture(
    categories: dict[str, CategoryScore],
    weights: dict[str, float] | None = None,
) -> float:
    """Unweighted mean of the seven category scores; optional per-category
    weights give a weighted mean instead."""
    missing = [c for c in CULTURE_CATEGORIES if c not in categories]
    extra = [c for c in categories if c not in CULTURE_CATEGORIES]
    if missing or extra:
        raise InvalidInputError(f"bad culture categories: missing={missing} extra={extra}")
    if weights is None:
        return sum(categories[c].score for c in CULTURE_CATEGORIES) / len(CULTURE_CATEGORIES)
    unknown = [c for c in weights if c not in CULTURE_CATEGORIES]
    if unknown:
        raise InvalidInputError(f"unknown culture weight keys: {unknown}")
    if any(w < 0 for w in weights.values()):
        raise InvalidInputError("culture weights must be non-negative")
    total_weight = sum(weights.get(c, 1.0) for c in CULTURE_CATEGORIES)
    if total_weight <= 0:
        raise InvalidInputError("culture weights must not all be zero")
    return sum(
        weights.get(c, 1.0) * categories[c].score for c in CULTURE_CATEGORIES
    ) / total_weight


# ---------------------------------------------------------------------------
# Risk and total score
# ---------------------------------------------------------------------------

def normalize_risk(
    flags: list[RiskFlag],
    table: dict[RiskKind, float] | None = None,
    cap: float = 1.0,
) -> float:
    """Capped sum of severities. With a table, the table's weight for a kind
    overrides the severity recorded on the flag.

    Severities are summed in sorted order so the result is exactly
    permutation-invariant despite float addition.
    """
    severities = []
    for flag in flags:
        severity = table[flag.kind] if table and flag.kind in table else flag.severity
        if not 0.0 <= severity <= 1.0:
            raise InvalidInputError(f"severity {severity} outside [0, 1]")
        severities.append(severity)
    return min(cap, sum(sorted(severities)))


def total_score(t_tech: float, t_culture: float, r_total: float, beta: float) -> float:
    for name, value in (("t_tech", t_tech), ("t_culture", t_culture),
                        ("r_total", r_total), ("beta", beta)):
        if not isinstance(value, (int, float)) or math.isnan(value) or not 0.0 <= value <= 1.0:
            raise InvalidInputError(f"{name}={value!r} outside [0, 1]")
    return beta * t_tech + (1.0 - beta) * t_culture - r_total


# ---------------------------------------------------------------------------
# Scorecards and ranking
# ---------------------------------------------------------------------------

class RankingConfig(BaseModel):
    beta: float = Field(default=0.6, ge=0.0, le=1.0)
    batch_size: int = Field(default=10, ge=1)
    severity_table: dict[RiskKind, float] = Field(
        default_factory=lambda: dict(DEFAULT_SEVERITIES)
    )
    risk_cap: float = 1.0
    culture_weights: dict[str, float] | None = None

    @field_validator("severity_table")
    @classmethod
    def _severities_in_range(cls, v: dict[RiskKind, float]) -> dict[RiskKind, float]:
        bad = {k: w for k, w in v.items() if not 0.0 <= w <= 1.0}
        if bad:
            raise ValueError(f"severities outside [0, 1]: {bad}")
        return v


class Scorecard(BaseModel):
    candidate_id: str
    beta: float = Field(ge=0.0, le=1.0)
    t_tech: float = Field(ge=0.0, le=1.0)
    technical_rationale: str = ""
    technical_evidence_ids: list[str] = Field(default_factory=list)
    culture_categories: dict[str, CategoryScore]
    t_culture: float = Field(ge=0.0, le=1.0)
    risk_flags: list[RiskFlag] = Field(default_factory=list)
    r_total: float = Field(ge=0.0, le=1.0)
    s_total: float
    report_md: str = ""

    @model_validator(mode="after")
    def _consistent(self) -> "Scorecard":
        missing = [c for c in CULTURE_CATEGORIES if c not in self.culture_categories]
        if missing:
            raise ValueError(f"missing culture categories: {missing}")
        expected = self.beta * self.t_tech + (1.0 - self.beta) * self.t_culture - self.r_total
        if abs(self.s_total - expected) > 1e-12:
            raise ValueError(
                f"s_total {self.s_total} does not decompose: expected {expected}"
            )
        return self


def build_scorecard(
    candidate_id: str,
    technical: TechnicalFit,
    culture: dict[str, CategoryScore],
    flags: list[RiskFlag],
    cfg: RankingConfig,
) -> Scorecard:
    t_culture = aggregate_culture(culture, cfg.culture_weights)
    r_total = normalize_risk(flags, cfg.severity_table, cfg.risk_cap)
    s_total = total_score(technical.score, t_culture, r_total, cfg.beta)
    return Scorecard(
        candidate_id=candidate_id,
        beta=cfg.beta,
        t_tech=technical.score,
        technical_rationale=technical.rationale,
        technical_evidence_ids=technical.evidence_ids,
        culture_categories=culture,
        t_culture=t_culture,
        risk_flags=flags,
        r_total=r_total,
        s_total=s_total,
    )


def rank(scorecards: list[Scorecard], cfg: RankingConfig) -> list[Scorecard]:
    """Sort by s_total desc, then t_tech desc, then candidate_id asc.

    Refuses pools scored under different beta values: their totals are not
    comparable."""
    mixed = sorted({sc.beta for sc in scorecards})
    if len(mixed) > 1:
        raise InvalidInputError(f"scorecards mix beta values {mixed}")
    if scorecards and not math.isclose(scorecards[0].beta, cfg.beta, abs_tol=1e-12):
        raise InvalidInputError(
            f"scorecards use beta={scorecards[0].beta}, config says {cfg.beta}"
        )
    return sorted(scorecards, key=lambda sc: (-sc.s_total, -sc.t_tech, sc.candidate_id))


def select_batch(
    ranked: list[Scorecard],
    offset: int,
    cfg: RankingConfig,
    decided_ids: frozenset[str] | set[str] = frozenset(),
) -> list[Scorecard]:
    """Next batch of undecided candidates in rank order; an offset past the
    pool yields an empty batch."""
    if offset < 0:
        raise InvalidInputError("offset must be >= 0")
    undecided = [sc for sc in ranked if sc.candidate_id not in decided_ids]
    return undecided[offset:offset + cfg.batch_size]


# ---------------------------------------------------------------------------
# Reports and export
# ---------------------------------------------------------------------------

def assemble_report(
    scorecard: Scorecard,
    consistency: ConsistencyReport | None = None,
) -> str:
    """Deterministic candidate report: summary, both fit components with
    evidence, every penalty with its rationale, and the score decomposition."""
    sc = scorecard
    lines = [
        f"# Screening report: {sc.candidate_id}",
        "",
        "## Summary",
        (
            f"Total score {sc.s_total:.6f} "
            f"(technical {sc.t_tech:.6f}, culture {sc.t_culture:.6f}, "
            f"risk penalty {sc.r_total:.6f}, beta {sc.beta:g})."
        ),
        "",
        "## Technical fit",
        f"Score: {sc.t_tech:.6f}",
        "",
        sc.technical_rationale or "No rationale recorded.",
        "",
        "Evidence: " + (", ".join(sc.technical_evidence_ids) if sc.technical_evidence_ids else "none cited"),
        "",
        "## Culture fit",
        f"Score: {sc.t_culture:.6f}",
        "",
    ]
    for category in CULTURE_CATEGORIES:
        entry = sc.culture_categories[category]
        lines.append(f"- {category}: {entry.score:.2f}. {entry.rationale}")
    lines += ["", "## Risk penalties"]
    if sc.risk_flags:
        for flag in sc.risk_flags:
            evidence = f" (evidence: {', '.join(flag.evidence_ids)})" if flag.evidence_ids else ""
            lines.append(
                f"- [{flag.kind.value}] severity {flag.severity:.2f}: {flag.rationale}{evidence}"
            )
    else:
        lines.append("No risk penalties.")
    if consistency is not None:
        lines += ["", "## Public-source consistency"]
        if not consistency.similarities and not consistency.discrepancies:
            lines.append("No public records compared.")
        for pair in consistency.similarities:
            lines.append(f"- Match: {pair.description}")
        for pair in consistency.discrepancies:
            lines.append(f"- Mismatch: {pair.description}")
    lines += [
        "",
        "## Score decomposition",
        (
            f"{sc.beta:g} x {sc.t_tech:.6f} + {1.0 - sc.beta:g} x {sc.t_culture:.6f} "
            f"- {sc.r_total:.6f} = "
            f"{sc.beta * sc.t_tech:.6f} + {(1.0 - sc.beta) * sc.t_culture:.6f} "
            f"- {sc.r_total:.6f} = {sc.s_total:.6f}"
        ),
        "",
    ]
    return "\n".join(lines)


RANKING_CSV_HEADER = "candidate_id,t_tech,t_culture,r_total,s_total,rank"


def ranking_csv(ranked: list[Scorecard]) -> str:
    rows = [RANKING_CSV_HEADER]
    for position, sc in enumerate(ranked, start=1):
        rows.append(
            f"{sc.candidate_id},{sc.t_tech:.6f},{sc.t_culture:.6f},"
            f"{sc.r_total:.6f},{sc.s_total:.6f},{position}"
        )
    return "\n".join(rows) + "\n"

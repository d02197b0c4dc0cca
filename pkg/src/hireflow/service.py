"""HTTP API under /v1: submission intake, pipeline runs, ranking, batches,
decisions, feedback, evaluation, config.

Every error is a JSON body ``{"error": {"code": ..., "message": ...}}`` with
a machine-readable code, so API clients and the review UI can branch on the
code instead of parsing prose.
"""

from __future__ import annotations

from datetime import datetime, timezone
from decimal import Decimal
from typing import Any

from fastapi import Depends, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, ValidationError

from .config import AppConfig, RaterConfig, ThresholdConfig
from .errors import (
    AgentFailureError,
    HireflowError,
    IllegalTransitionError,
    InvalidInputError,
    NotFoundError,
    VersionConflictError,
)
from .evaluation import (
    ApiPriceTable,
    FunnelRow,
    RaterEntry,
    funnel_report,
    load_labels,
)
from .pipeline import (
    PipelineContext,
    build_context,
    collect_usage,
    ingest_submission,
    next_batch,
    ranked_scorecards,
    run_all,
    run_candidate,
    run_pool,
)
from .scoring import RankingConfig, Scorecard
from .store import (
    DocumentStore,
    PipelineStage,
    ReviewDecision,
    ReviewerFeedback,
    Verdict,
)

_STATUS_BY_CODE = {
    "not_found": 404,
    "version_conflict": 409,
    "illegal_transition": 409,
    "validation_failed": 400,
    "undefined_metric": 400,
    "agent_failure": 500,
    "provider_error": 502,
    "configuration_error": 500,
    "unauthorized": 401,
}


class UnauthorizedError(HireflowError):
    code = "unauthorized"


def _error_response(code: str, message: str) -> JSONResponse:
    status = _STATUS_BY_CODE.get(code, 500)
    return JSONResponse(
        status_code=status,
        content={"error": {"code": code, "message": message}},
    )


class DecisionIn(BaseModel):
    candidate_id: str
    verdict: Verdict
    notes: str = ""
    reviewer_id: str
    version: int = Field(ge=1)
    decided_at: datetime | None = None


class FeedbackIn(BaseModel):
    candidate_id: str | None = None
    text: str


class ConfigPatch(BaseModel):
    ranking: RankingConfig | None = None
    thresholds: ThresholdConfig | None = None
    prices: ApiPriceTable | None = None
    raters: dict[str, RaterConfig] | None = None


def _summary(store: DocumentStore, sc: Scorecard, position: int) -> dict[str, Any]:
    return {
        "candidate_id": sc.candidate_id,
        "rank": position,
        "t_tech": sc.t_tech,
        "t_culture": sc.t_culture,
        "r_total": sc.r_total,
        "s_total": sc.s_total,
        "flag_count": len(sc.risk_flags),
        "stage": store.get_state(sc.candidate_id).stage.value,
        "decision_version": store.decision_version(sc.candidate_id),
    }


def _row_payload(row: FunnelRow) -> dict[str, Any]:
    def money(d: Decimal | None) -> str | None:
        return None if d is None else str(d)

    return {
        "name": row.name,
        "tp": row.cm.tp, "fp": row.cm.fp, "fn": row.cm.fn, "tn": row.cm.tn,
        "precision": row.precision,
        "recall": row.recall,
        "q": row.q,
        "t_avg_hours": row.t_avg_hours,
        "t_avg_weighted_hours": row.t_avg_weighted_hours,
        "labor_cost_per_qualified": money(row.labor_cost_per_qualified),
        "reported_t_avg_hours": row.reported_t_avg_hours,
        "api_cost_per_qualified": money(row.api_cost_per_qualified),
    }


def rater_entries(config: AppConfig, store: DocumentStore | None = None) -> tuple[list[RaterEntry], Any]:
    if not config.raters:
        raise InvalidInputError("no raters configured")
    ref = load_labels(config.labels_path(config.reference_rater), config.reference_rater)
    entries = []
    for name in sorted(config.raters):
        rc = config.raters[name]
        usage = None
        if rc.attach_run_usage and store is not None:
            usage = collect_usage(store)
        entries.append(RaterEntry(
            name=name,
            labels=load_labels(config.labels_path(name), name),
            t_scr_hours=rc.t_scr_hours,
            hourly_rate=rc.hourly_rate,
            tech_interview_hours=rc.tech_interview_hours,
            q_override=rc.q_override,
            w_scr=rc.w_scr,
            w_tech=rc.w_tech,
            reported_t_avg_hours=rc.reported_t_avg_hours,
            usage=usage,
        ))
    return entries, ref


def create_app(config: AppConfig, store: DocumentStore | None = None) -> FastAPI:
    ctx: PipelineContext = build_context(config, store)
    app = FastAPI(title="hireflow", version="1.0")
    app.state.ctx = ctx
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"], allow_methods=["*"], allow_headers=["*"],
    )

    @app.exception_handler(HireflowError)
    async def _hireflow_error(request: Request, exc: HireflowError):
        return _error_response(exc.code, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _request_invalid(request: Request, exc: RequestValidationError):
        return _error_response("validation_failed", str(exc))

    @app.exception_handler(ValidationError)
    async def _model_invalid(request: Request, exc: ValidationError):
        return _error_response("validation_failed", str(exc))

    async def _auth(request: Request) -> None:
        token = ctx.config.api_token
        if token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {token}":
            raise UnauthorizedError("invalid or missing API token")

    guarded = [Depends(_auth)]

    @app.post("/v1/candidates", status_code=201, dependencies=guarded)
    async def submit_candidate(payload: dict):
        from .domain import Submission

        try:
            submission = Submission.model_validate(payload)
        except ValidationError as exc:
            raise InvalidInputError(str(exc)) from exc
        if ctx.store.exists("submissions", submission.candidate_id):
            raise InvalidInputError(
                f"candidate {submission.candidate_id!r} already submitted"
            )
        state = ingest_submission(ctx.store, submission)
        return {"candidate_id": submission.candidate_id, "stage": state.stage.value}

    @app.post("/v1/pipeline/run", dependencies=guarded)
    async def pipeline_run(candidate_id: str | None = None, all: bool = False):
        if all and candidate_id:
            raise InvalidInputError("pass candidate_id or all=true, not both")
        if all:
            return {"outcome": run_all(ctx)}
        if candidate_id is None:
            raise InvalidInputError("candidate_id or all=true required")
        state = run_candidate(ctx, candidate_id)
        if state.stage is PipelineStage.SCORED:
            run_pool(ctx.store, ctx.config)
            state = ctx.store.get_state(candidate_id)
        return {"outcome": {candidate_id: state.stage.value}}

    @app.get("/v1/ranking", dependencies=guarded)
    async def ranking(offset: int = 0, limit: int | None = None):
        if offset < 0 or (limit is not None and limit < 0):
            raise InvalidInputError("offset and limit must be >= 0")
        ranked = ranked_scorecards(ctx.store)
        window = ranked[offset:offset + limit if limit is not None else None]
        return {
            "total": len(ranked),
            "candidates": [
                _summary(ctx.store, sc, offset + i + 1) for i, sc in enumerate(window)
            ],
        }

    @app.post("/v1/batches/next", dependencies=guarded)
    async def batches_next():
        ranked = ranked_scorecards(ctx.store)
        positions = {sc.candidate_id: i + 1 for i, sc in enumerate(ranked)}
        batch = next_batch(ctx.store, ctx.config)
        return {
            "batch": [_summary(ctx.store, sc, positions[sc.candidate_id]) for sc in batch],
        }

    @app.get("/v1/candidates/{candidate_id}/scorecard", dependencies=guarded)
    async def scorecard_detail(candidate_id: str):
        sc = ctx.store.get_model("scorecards", candidate_id, Scorecard)
        consistency = None
        if ctx.store.exists("consistency", candidate_id):
            consistency = ctx.store.get("consistency", candidate_id)
        decision = None
        if ctx.store.decision_version(candidate_id) > 0:
            decision = ctx.store.get_decision(candidate_id).model_dump(mode="json")
        return {
            "scorecard": sc.model_dump(mode="json"),
            "consistency": consistency,
            "stage": ctx.store.get_state(candidate_id).stage.value,
            "decision": decision,
        }

    @app.post("/v1/decisions", status_code=201, dependencies=guarded)
    async def post_decision(payload: DecisionIn):
        state = ctx.store.get_state(payload.candidate_id)
        if state.stage not in (PipelineStage.IN_REVIEW, PipelineStage.DECIDED):
            raise IllegalTransitionError(
                f"{payload.candidate_id} is at {state.stage.value}; decisions "
                f"require IN_REVIEW"
            )
        decision = ReviewDecision(
            candidate_id=payload.candidate_id,
            verdict=payload.verdict,
            notes=payload.notes,
            reviewer_id=payload.reviewer_id,
            decided_at=payload.decided_at or datetime.now(timezone.utc),
            version=payload.version,
        )
        stored = ctx.store.put_decision(decision)
        if state.stage is PipelineStage.IN_REVIEW:
            ctx.store.advance_stage(payload.candidate_id, PipelineStage.DECIDED)
        return stored.model_dump(mode="json")

    @app.post("/v1/feedback", status_code=201, dependencies=guarded)
    async def post_feedback(payload: FeedbackIn):
        try:
            feedback = ReviewerFeedback(
                candidate_id=payload.candidate_id,
                text=payload.text,
                created_at=datetime.now(timezone.utc),
            )
        except ValidationError as exc:
            raise InvalidInputError(str(exc)) from exc
        entity_id = ctx.store.append_feedback(feedback)
        return {"feedback_id": entity_id}

    @app.get("/v1/evaluation/report", dependencies=guarded)
    async def evaluation_report(ref: str | None = None):
        config = ctx.config
        if ref is not None:
            if ref not in config.raters:
                raise NotFoundError(f"no rater {ref!r} in config")
            config = config.model_copy(update={"reference_rater": ref})
        entries, ref_labels = rater_entries(config, ctx.store)
        report = funnel_report(entries, ref_labels, config.prices)
        return {
            "reference_rater": ref_labels.rater_id,
            "markdown": report.markdown,
            "csv": report.csv_text,
            "rows": [_row_payload(row) for row in report.rows],
        }

    def _config_view() -> dict[str, Any]:
        c = ctx.config
        return {
            "ranking": c.ranking.model_dump(mode="json"),
            "thresholds": c.thresholds.model_dump(mode="json"),
            "prices": {k: str(v) for k, v in c.prices.model_dump().items()},
            "raters": {k: v.model_dump(mode="json") for k, v in c.raters.items()},
            "reference_rater": c.reference_rater,
            "provider": c.provider,
        }

    @app.get("/v1/config", dependencies=guarded)
    async def get_config():
        return _config_view()

    @app.put("/v1/config", dependencies=guarded)
    async def put_config(patch: ConfigPatch):
        updates = {
            name: value
            for name, value in (
                ("ranking", patch.ranking),
                ("thresholds", patch.thresholds),
                ("prices", patch.prices),
                ("raters", patch.raters),
            )
            if value is not None
        }
        if not updates:
            raise InvalidInputError("no config sections to update")
        ctx.config = ctx.config.model_copy(update=updates)
        return _config_view()

    return app

"""Screening-quality metrics and funnel economics.

Compares a rater's (or the system's) qualified/not-qualified calls against
the reference rater, then prices the hiring funnel:

    t_avg          = t_scr / (q * R) + t_interview / P
    t_avg_weighted = w_scr * t_scr / (q * R) + w_tech * t_interview / P

t_avg is the expected hours spent per genuinely suitable candidate who makes
it through: imperfect recall makes you screen more people to find each good
one, imperfect precision makes you interview people who wash out. Money is
handled in Decimal and rounded to cents half-up.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator

from .errors import InvalidInputError, UndefinedMetricError

CENT = Decimal("0.01")


class Label(str, Enum):
    QUALIFIED = "qualified"
    NOT_QUALIFIED = "not_qualified"


class LabelSet(BaseModel):
    rater_id: str
    labels: dict[str, Label]

    @property
    def qualified_ids(self) -> set[str]:
        return {cid for cid, lab in self.labels.items() if lab is Label.QUALIFIED}

    @property
    def base_rate(self) -> float:
        if not self.labels:
            raise InvalidInputError(f"label set {self.rater_id!r} is empty")
        return len(self.qualified_ids) / len(self.labels)


def load_labels(path: str | Path, rater_id: str | None = None) -> LabelSet:
    """Read a `candidate_id,label` CSV (header required) into a LabelSet."""
    path = Path(path)
    labels: dict[str, Label] = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != ["candidate_id", "label"]:
            raise InvalidInputError(
                f"{path}: expected header 'candidate_id,label', got {reader.fieldnames}"
            )
        for row in reader:
            cid = row["candidate_id"].strip()
            if cid in labels:
                raise InvalidInputError(f"{path}: duplicate candidate id {cid!r}")
            try:
                labels[cid] = Label(row["label"].strip())
            except ValueError:
                raise InvalidInputError(
                    f"{path}: bad label {row['label']!r} for {cid!r}"
                ) from None
    return LabelSet(rater_id=rater_id or path.stem, labels=labels)


class ConfusionMatrix(BaseModel):
    tp: int = Field(ge=0)
    fp: int = Field(ge=0)
    fn: int = Field(ge=0)
    tn: int = Field(ge=0)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def confusion(pred: LabelSet, ref: LabelSet) -> ConfusionMatrix:
    """Counts with *ref* as ground truth and qualified as the positive class."""
    if set(pred.labels) != set(ref.labels):
        only_pred = sorted(set(pred.labels) - set(ref.labels))
        only_ref = sorted(set(ref.labels) - set(pred.labels))
        raise InvalidInputError(
            f"label sets cover different candidates: "
            f"only in pred={only_pred}, only in ref={only_ref}"
        )
    tp = fp = fn = tn = 0
    for cid, truth in ref.labels.items():
        guess = pred.labels[cid]
        if truth is Label.QUALIFIED:
            if guess is Label.QUALIFIED:
                tp += 1
            else:
                fn += 1
        else:
            if guess is Label.QUALIFIED:
                fp += 1
            else:
                tn += 1
    return ConfusionMatrix(tp=tp, fp=fp, fn=fn, tn=tn)


def precision_recall(cm: ConfusionMatrix) -> tuple[float, float]:
    if cm.tp + cm.fp == 0:
        raise UndefinedMetricError("precision undefined: no positive predictions")
    if cm.tp + cm.fn == 0:
        raise UndefinedMetricError("recall undefined: no positive reference labels")
    return cm.tp / (cm.tp + cm.fp), cm.tp / (cm.tp + cm.fn)


# ---------------------------------------------------------------------------
# Funnel time model
# ---------------------------------------------------------------------------

class FunnelParams(BaseModel):
    t_scr_hours: float = Field(gt=0)
    tech_interview_hours: float = Field(ge=0, default=0.5)
    precision_p: float = Field(gt=0, le=1)
    recall_r: float = Field(gt=0, le=1)
    base_rate_q: float = Field(gt=0, le=1)
    w_scr: float = Field(gt=0, default=1.0)
    w_tech: float = Field(gt=0, default=1.0)
    hourly_rate: float = Field(ge=0, default=0.0)


def t_avg(params: FunnelParams) -> float:
    """Expected hours per genuinely suitable candidate hired into the funnel."""
    return (
        params.t_scr_hours / (params.base_rate_q * params.recall_r)
        + params.tech_interview_hours / params.precision_p
    )


def t_avg_weighted(params: FunnelParams) -> float:
    """Same shape with positive stage weights; unit weights reduce to t_avg."""
    return (
        params.w_scr * params.t_scr_hours / (params.base_rate_q * params.recall_r)
        + params.w_tech * params.tech_interview_hours / params.precision_p
    )


# ---------------------------------------------------------------------------
# Cost model
# ---------------------------------------------------------------------------

def _as_money(value) -> Decimal:
    d = value if isinstance(value, Decimal) else Decimal(str(value))
    if d < 0:
        raise ValueError(f"price must be non-negative, got {d}")
    return d


class ApiPriceTable(BaseModel):
    """Per-unit API prices. Defaults are current published list prices."""

    input_token_price: Decimal = Decimal("2.50")       # per 1M tokens
    output_token_price: Decimal = Decimal("10.00")     # per 1M tokens
    embedding_token_price: Decimal = Decimal("0.02")   # per 1M tokens
    stt_price: Decimal = Decimal("0.006")              # per minute
    vision_frame_price: Decimal = Decimal("0.0028")    # per frame

    @field_validator("*", mode="before")
    @classmethod
    def _money(cls, v):
        return _as_money(v)


class UsageTotals(BaseModel):
    input_tokens: int = Field(ge=0, default=0)
    output_tokens: int = Field(ge=0, default=0)
    embedding_tokens: int = Field(ge=0, default=0)
    audio_minutes: float = Field(ge=0, default=0.0)
    frames: int = Field(ge=0, default=0)

    def merged(self, other: "UsageTotals") -> "UsageTotals":
        return UsageTotals(
            input_tokens=self.input_tokens + other.input_tokens,
            output_tokens=self.output_tokens + other.output_tokens,
            embedding_tokens=self.embedding_tokens + other.embedding_tokens,
            audio_minutes=self.audio_minutes + other.audio_minutes,
            frames=self.frames + other.frames,
        )


def labor_cost(t_avg_hours: float, hourly_rate: float) -> Decimal:
    if t_avg_hours < 0 or hourly_rate < 0:
        raise InvalidInputError("labor cost inputs must be non-negative")
    return (Decimal(str(t_avg_hours)) * Decimal(str(hourly_rate))).quantize(
        CENT, rounding=ROUND_HALF_UP
    )


MILLION = Decimal(1_000_000)


def api_cost(usage: UsageTotals, prices: ApiPriceTable | None = None) -> Decimal:
    prices = prices or ApiPriceTable()
    total = (
        Decimal(usage.input_tokens) * prices.input_token_price / MILLION
        + Decimal(usage.output_tokens) * prices.output_token_price / MILLION
        + Decimal(usage.embedding_tokens) * prices.embedding_token_price / MILLION
        + Decimal(str(usage.audio_minutes)) * prices.stt_price
        + Decimal(usage.frames) * prices.vision_frame_price
    )
    return total.quantize(CENT, rounding=ROUND_HALF_UP)


# ---------------------------------------------------------------------------
# Funnel report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RaterEntry:
    """One screening path (a rater or the automated system) to price."""

    name: str
    labels: LabelSet
    t_scr_hours: float
    hourly_rate: float
    tech_interview_hours: float = 0.5
    q_override: float | None = None
    w_scr: float = 1.0
    w_tech: float = 1.0
    reported_t_avg_hours: float | None = None
    usage: UsageTotals | None = None


@dataclass(frozen=True)
class FunnelRow:
    name: str
    cm: ConfusionMatrix
    precision: float
    recall: float
    q: float
    t_avg_hours: float
    t_avg_weighted_hours: float
    labor_cost_per_qualified: Decimal
    reported_t_avg_hours: float | None
    api_cost_per_qualified: Decimal | None


@dataclass(frozen=True)
class FunnelReport:
    rows: list[FunnelRow]
    markdown: str
    csv_text: str


def funnel_row(entry: RaterEntry, ref: LabelSet, prices: ApiPriceTable | None = None) -> FunnelRow:
    cm = confusion(entry.labels, ref)
    p, r = precision_recall(cm)
    q = entry.q_override if entry.q_override is not None else ref.base_rate
    params = FunnelParams(
        t_scr_hours=entry.t_scr_hours,
        tech_interview_hours=entry.tech_interview_hours,
        precision_p=p,
        recall_r=r,
        base_rate_q=q,
        w_scr=entry.w_scr,
        w_tech=entry.w_tech,
        hourly_rate=entry.hourly_rate,
    )
    hours = t_avg(params)
    per_qualified = None
    if entry.usage is not None:
        if cm.tp == 0:
            raise UndefinedMetricError(f"{entry.name}: API cost per qualified needs tp > 0")
        per_qualified = (api_cost(entry.usage, prices) / cm.tp).quantize(
            CENT, rounding=ROUND_HALF_UP
        )
    return FunnelRow(
        name=entry.name,
        cm=cm,
        precision=p,
        recall=r,
        q=q,
        t_avg_hours=hours,
        t_avg_weighted_hours=t_avg_weighted(params),
        labor_cost_per_qualified=labor_cost(hours, entry.hourly_rate),
        reported_t_avg_hours=entry.reported_t_avg_hours,
        api_cost_per_qualified=per_qualified,
    )


def funnel_report(
    entries: list[RaterEntry],
    ref: LabelSet,
    prices: ApiPriceTable | None = None,
) -> FunnelReport:
    """Markdown table plus machine-readable CSV, one row per screening path.

    Externally reported hour figures, when set on an entry, are printed
    alongside the computed values; no agreement is forced.
    """
    if not entries:
        raise InvalidInputError("funnel report needs at least one entry")
    rows = [funnel_row(entry, ref, prices) for entry in entries]

    md = io.StringIO()
    md.write("# Screening funnel report\n\n")
    md.write(f"Reference rater: {ref.rater_id} ")
    md.write(f"({len(ref.qualified_ids)} of {len(ref.labels)} candidates qualified, ")
    md.write(f"base rate {ref.base_rate:.4f}).\n\n")
    md.write("| path | TP | FP | FN | TN | precision | recall | q | "
             "t_avg (h) | reported (h) | weighted t_avg (h) | labor $/qualified | API $/qualified |\n")
    md.write("|---|---|---|---|---|---|---|---|---|---|---|---|---|\n")
    for row in rows:
        reported = f"{row.reported_t_avg_hours:.2f}" if row.reported_t_avg_hours is not None else "-"
        api = f"{row.api_cost_per_qualified}" if row.api_cost_per_qualified is not None else "-"
        md.write(
            f"| {row.name} | {row.cm.tp} | {row.cm.fp} | {row.cm.fn} | {row.cm.tn} "
            f"| {row.precision:.4f} | {row.recall:.4f} | {row.q:.4f} "
            f"| {row.t_avg_hours:.4f} | {reported} | {row.t_avg_weighted_hours:.4f} "
            f"| {row.labor_cost_per_qualified} | {api} |\n"
        )

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([
        "name", "tp", "fp", "fn", "tn", "precision", "recall", "q",
        "t_avg_hours", "reported_t_avg_hours", "t_avg_weighted_hours",
        "labor_cost_per_qualified", "api_cost_per_qualified",
    ])
    for row in rows:
        writer.writerow([
            row.name, row.cm.tp, row.cm.fp, row.cm.fn, row.cm.tn,
            f"{row.precision:.6f}", f"{row.recall:.6f}", f"{row.q:.6f}",
            f"{row.t_avg_hours:.6f}",
            "" if row.reported_t_avg_hours is None else f"{row.reported_t_avg_hours:.6f}",
            f"{row.t_avg_weighted_hours:.6f}",
            str(row.labor_cost_per_qualified),
            "" if row.api_cost_per_qualified is None else str(row.api_cost_per_qualified),
        ])
    return FunnelReport(rows=rows, markdown=md.getvalue(), csv_text=buf.getvalue())

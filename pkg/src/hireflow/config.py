"""One YAML config file for the whole engine.

Relative paths inside the file (label CSVs, fixture dirs, source record
files, store root) are resolved against the directory containing the config
file, so a checked-in config keeps working from any working directory.
"""

from __future__ import annotations

from pathlib import Path

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from .domain import CompanyValues, JobSpec
from .errors import InvalidInputError, NotFoundError
from .evaluation import ApiPriceTable
from .scoring import RankingConfig

CONFIG_ENV_VAR = "HIREFLOW_CONFIG"


class ThresholdConfig(BaseModel):
    linkage_confidence: float = Field(default=0.8, ge=0.0, le=1.0)
    max_gap_months: int = Field(default=12, ge=1)


class RaterConfig(BaseModel):
    """Funnel inputs for one screening path, to price against the reference."""

    labels_csv: str
    t_scr_hours: float = Field(gt=0)
    hourly_rate: float = Field(ge=0)
    tech_interview_hours: float = Field(default=0.5, ge=0)
    q_override: float | None = Field(default=None, gt=0, le=1)
    w_scr: float = Field(default=1.0, gt=0)
    w_tech: float = Field(default=1.0, gt=0)
    reported_t_avg_hours: float | None = None
    # price this path's API usage from the store's recorded totals
    attach_run_usage: bool = False


class AppConfig(BaseModel):
    job_spec: JobSpec
    company_values: CompanyValues
    required_questions: list[str] = Field(min_length=1)
    ranking: RankingConfig = Field(default_factory=RankingConfig)
    thresholds: ThresholdConfig = Field(default_factory=ThresholdConfig)
    prices: ApiPriceTable = Field(default_factory=ApiPriceTable)
    provider: str = "scripted"
    fixtures_dir: str = "fixtures"
    store_root: str = "var/store"
    sources: dict[str, str] = Field(default_factory=dict)
    raters: dict[str, RaterConfig] = Field(default_factory=dict)
    reference_rater: str = "professional"
    api_token: str | None = None
    base_dir: Path = Field(default_factory=Path.cwd)

    @model_validator(mode="after")
    def _reference_known(self) -> "AppConfig":
        if self.raters and self.reference_rater not in self.raters:
            raise ValueError(
                f"reference_rater {self.reference_rater!r} has no raters entry"
            )
        return self

    def resolve(self, relative: str | Path) -> Path:
        p = Path(relative)
        return p if p.is_absolute() else self.base_dir / p

    def fixtures_path(self) -> Path:
        return self.resolve(self.fixtures_dir)

    def store_path(self) -> Path:
        return self.resolve(self.store_root)

    def labels_path(self, rater: str) -> Path:
        if rater not in self.raters:
            raise NotFoundError(f"no rater {rater!r} in config")
        return self.resolve(self.raters[rater].labels_csv)

    def source_paths(self) -> dict[str, Path]:
        return {platform: self.resolve(p) for platform, p in self.sources.items()}


def load_config(path: str | Path) -> AppConfig:
    path = Path(path)
    if not path.exists():
        raise NotFoundError(f"config file {path} not found")
    try:
        raw = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except yaml.YAMLError as exc:
        raise InvalidInputError(f"{path}: invalid YAML: {exc}") from exc
    if not isinstance(raw, dict):
        raise InvalidInputError(f"{path}: config must be a mapping")
    raw.setdefault("base_dir", str(path.resolve().parent))
    try:
        return AppConfig.model_validate(raw)
    except ValidationError as exc:
        raise InvalidInputError(f"{path}: {exc}") from exc

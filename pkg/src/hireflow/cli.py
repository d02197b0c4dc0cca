"""Operator CLI over the same core the HTTP service uses.

Exit codes: 0 success, 2 missing file or entity, 3 validation failure,
4 agent failure. Output is deterministic for the same inputs so runs can be
diffed in CI.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click
from pydantic import ValidationError

from .config import CONFIG_ENV_VAR, AppConfig, load_config
from .errors import (
    AgentFailureError,
    HireflowError,
    InvalidInputError,
    NotFoundError,
)
from .evaluation import (
    FunnelParams,
    UsageTotals,
    api_cost,
    confusion,
    labor_cost,
    load_labels,
    precision_recall,
    t_avg,
)
from .pipeline import build_context, ingest_dir, run_all, run_candidate, run_pool
from .scoring import Scorecard
from .store import DocumentStore, PipelineStage

EXIT_MISSING = 2
EXIT_VALIDATION = 3
EXIT_AGENT = 4


def _fail(code: int, err_code: str, message: str):
    click.echo(f"error code={err_code}: {message}", err=True)
    sys.exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (NotFoundError, FileNotFoundError) as exc:
            _fail(EXIT_MISSING, "not_found", str(exc))
        except AgentFailureError as exc:
            _fail(EXIT_AGENT, exc.code, str(exc))
        except (InvalidInputError, ValidationError) as exc:
            _fail(EXIT_VALIDATION, "validation_failed", str(exc))
        except HireflowError as exc:
            _fail(EXIT_VALIDATION, exc.code, str(exc))

    return wrapper


def _load(config_path: str | None) -> AppConfig:
    path = config_path or "config.yaml"
    return load_config(path)


@click.group()
@click.option(
    "--config", "config_path", envvar=CONFIG_ENV_VAR, default=None,
    help=f"Config file (default config.yaml; env {CONFIG_ENV_VAR}).",
)
@click.pass_context
def main(ctx: click.Context, config_path: str | None) -> None:
    """Candidate screening pipeline: ingest, run, rank, evaluate, serve."""
    ctx.obj = {"config_path": config_path}


@main.command()
@click.argument("submissions_dir", type=click.Path())
@click.pass_context
@handle_errors
def ingest(ctx: click.Context, submissions_dir: str) -> None:
    """Load every <candidate>/submission.json under SUBMISSIONS_DIR."""
    config = _load(ctx.obj["config_path"])
    store = DocumentStore(config.store_path())
    ingested = ingest_dir(store, submissions_dir)
    for cid in ingested:
        click.echo(f"ingested {cid}")
    click.echo(f"total {len(ingested)}")


@main.command()
@click.option("--candidate", "candidate_id", default=None)
@click.option("--all", "run_everyone", is_flag=True, default=False)
@click.pass_context
@handle_errors
def run(ctx: click.Context, candidate_id: str | None, run_everyone: bool) -> None:
    """Run the pipeline to RANKED for one candidate or the whole pool."""
    if bool(candidate_id) == run_everyone:
        raise InvalidInputError("pass exactly one of --candidate or --all")
    config = _load(ctx.obj["config_path"])
    pipeline_ctx = build_context(config)
    if run_everyone:
        outcome = run_all(pipeline_ctx)
    else:
        state = run_candidate(pipeline_ctx, candidate_id)
        if state.stage is PipelineStage.SCORED:
            run_pool(pipeline_ctx.store, config)
        outcome = {candidate_id: pipeline_ctx.store.get_state(candidate_id).stage.value}
    for cid in sorted(outcome):
        click.echo(f"{cid} {outcome[cid]}")


@main.command()
@click.option("--csv", "csv_out", type=click.Path(), default=None,
              help="Also write the ranking as CSV to this path.")
@click.pass_context
@handle_errors
def rank(ctx: click.Context, csv_out: str | None) -> None:
    """Print the current ranking (highest score first)."""
    config = _load(ctx.obj["config_path"])
    store = DocumentStore(config.store_path())
    ranking = store.get("rankings", "latest")
    for position, cid in enumerate(ranking["order"], start=1):
        sc = store.get_model("scorecards", cid, Scorecard)
        click.echo(f"{position:3d}  {cid}  s_total={sc.s_total:.6f}")
    if csv_out is not None:
        Path(csv_out).write_text(ranking["csv"], encoding="utf-8")
        click.echo(f"wrote {csv_out}")


@main.command()
@click.option("--pred", "pred_csv", required=True, type=click.Path())
@click.option("--ref", "ref_csv", required=True, type=click.Path())
@click.option("--params", "params_rater", default=None,
              help="Config rater section supplying funnel params.")
@click.pass_context
@handle_errors
def evaluate(ctx: click.Context, pred_csv: str, ref_csv: str, params_rater: str | None) -> None:
    """Precision/recall of PRED against REF; funnel hours with --params."""
    pred = load_labels(pred_csv)
    ref = load_labels(ref_csv)
    cm = confusion(pred, ref)
    p, r = precision_recall(cm)
    click.echo(f"tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
    click.echo(f"precision={p:.4f}")
    click.echo(f"recall={r:.4f}")
    if params_rater is not None:
        config = _load(ctx.obj["config_path"])
        if params_rater not in config.raters:
            raise NotFoundError(f"no rater {params_rater!r} in config")
        rc = config.raters[params_rater]
        q = rc.q_override if rc.q_override is not None else ref.base_rate
        params = FunnelParams(
            t_scr_hours=rc.t_scr_hours,
            tech_interview_hours=rc.tech_interview_hours,
            precision_p=p, recall_r=r, base_rate_q=q,
            w_scr=rc.w_scr, w_tech=rc.w_tech,
            hourly_rate=rc.hourly_rate,
        )
        hours = t_avg(params)
        click.echo(f"q={q:.4f}")
        click.echo(f"t_avg_hours={hours:.4f}")
        click.echo(f"labor_cost_per_qualified={labor_cost(hours, rc.hourly_rate)}")
        if rc.reported_t_avg_hours is not None:
            click.echo(f"reported_t_avg_hours={rc.reported_t_avg_hours:.4f}")


@main.command()
@click.option("--usage", "usage_file", required=True, type=click.Path())
@click.pass_context
@handle_errors
def costs(ctx: click.Context, usage_file: str) -> None:
    """Price a usage-totals JSON file with the configured API prices."""
    path = Path(usage_file)
    if not path.exists():
        raise NotFoundError(f"usage file {path} not found")
    usage = UsageTotals.model_validate(json.loads(path.read_text(encoding="utf-8")))
    config = _load(ctx.obj["config_path"])
    click.echo(f"input_tokens={usage.input_tokens}")
    click.echo(f"output_tokens={usage.output_tokens}")
    click.echo(f"embedding_tokens={usage.embedding_tokens}")
    click.echo(f"audio_minutes={usage.audio_minutes:g}")
    click.echo(f"frames={usage.frames}")
    click.echo(f"api_cost={api_cost(usage, config.prices)}")


@main.command()
@click.option("--port", default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.pass_context
@handle_errors
def serve(ctx: click.Context, port: int, host: str) -> None:
    """Start the HTTP API."""
    import uvicorn

    from .service import create_app

    config = _load(ctx.obj["config_path"])
    uvicorn.run(create_app(config), host=host, port=port)


@main.command()
@click.option("--candidate", "candidate_id", required=True)
@click.option("--out", "out_dir", type=click.Path(), default="var/export",
              show_default=True)
@click.pass_context
@handle_errors
def export(ctx: click.Context, candidate_id: str, out_dir: str) -> None:
    """Write one candidate's report (.md) and scorecard (.json) to --out."""
    config = _load(ctx.obj["config_path"])
    store = DocumentStore(config.store_path())
    sc = store.get_model("scorecards", candidate_id, Scorecard)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / f"{candidate_id}.md").write_text(sc.report_md, encoding="utf-8")
    (out / f"{candidate_id}.json").write_text(
        json.dumps(sc.model_dump(mode="json"), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    click.echo(f"wrote {out / f'{candidate_id}.md'}")
    click.echo(f"wrote {out / f'{candidate_id}.json'}")


if __name__ == "__main__":
    main()

from __future__ import annotations

import pytest
import yaml

from hireflow.config import load_config
from hireflow.errors import InvalidInputError, NotFoundError

MINIMAL = {
    "job_spec": {
        "role_title": "Backend Engineer",
        "seniority": "mid",
        "description": "x",
        "required_skills": [{"name": "python", "weight": 1.0}],
    },
    "company_values": {
        "culture_categories": {
            "work_style": "a", "collaboration": "b", "communication": "c",
            "growth_mindset": "d", "ownership": "e", "innovation": "f",
            "values_list": "g",
        },
    },
    "required_questions": ["q1"],
}


def _write(tmp_path, payload, name="config.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(payload), encoding="utf-8")
    return path


def test_minimal_config_fills_defaults(tmp_path):
    cfg = load_config(_write(tmp_path, MINIMAL))
    assert cfg.ranking.beta == 0.6
    assert cfg.ranking.batch_size == 10
    assert cfg.thresholds.linkage_confidence == 0.8
    assert cfg.provider == "scripted"
    assert cfg.base_dir == tmp_path


def test_relative_paths_resolve_against_config_dir(tmp_path):
    cfg = load_config(_write(tmp_path, dict(MINIMAL, store_root="var/s")))
    assert cfg.store_path() == tmp_path / "var" / "s"
    assert cfg.fixtures_path() == tmp_path / "fixtures"


def test_missing_file(tmp_path):
    with pytest.raises(NotFoundError):
        load_config(tmp_path / "nope.yaml")


def test_invalid_yaml(tmp_path):
    path = tmp_path / "broken.yaml"
    path.write_text("job_spec: [unclosed", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_config(path)


def test_non_mapping_rejected(tmp_path):
    path = tmp_path / "list.yaml"
    path.write_text("- a\n- b\n", encoding="utf-8")
    with pytest.raises(InvalidInputError):
        load_config(path)


def test_reference_rater_must_exist(tmp_path):
    payload = dict(MINIMAL, raters={
        "novice": {"labels_csv": "n.csv", "t_scr_hours": 3.0, "hourly_rate": 8},
    })
    with pytest.raises(InvalidInputError):
        load_config(_write(tmp_path, payload))
    payload["reference_rater"] = "novice"
    cfg = load_config(_write(tmp_path, payload, name="ok.yaml"))
    assert cfg.labels_path("novice") == tmp_path / "n.csv"
    with pytest.raises(NotFoundError):
        cfg.labels_path("professional")


def test_bad_field_becomes_invalid_input(tmp_path):
    payload = dict(MINIMAL, ranking={"beta": 1.5})
    with pytest.raises(InvalidInputError):
        load_config(_write(tmp_path, payload))


def test_example_config_parses(app_config):
    assert app_config.reference_rater == "professional"
    assert set(app_config.raters) == {"professional", "novice", "system"}
    assert app_config.raters["system"].attach_run_usage
    assert app_config.sources.keys() == {"github", "linkedin"}
    assert str(app_config.prices.input_token_price) == "2.50"

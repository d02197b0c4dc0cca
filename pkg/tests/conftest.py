from __future__ import annotations

import shutil
from pathlib import Path

import pytest

from hireflow.config import AppConfig, load_config
from hireflow.pipeline import build_context, ingest_dir, run_all
from hireflow.store import DocumentStore

REPO_ROOT = Path(__file__).resolve().parents[1]
EXAMPLE_CONFIG = REPO_ROOT / "config.example.yaml"


@pytest.fixture(scope="session")
def app_config() -> AppConfig:
    return load_config(EXAMPLE_CONFIG)


@pytest.fixture(scope="session")
def golden_store(app_config, tmp_path_factory) -> DocumentStore:
    """One full pipeline run over the committed fixture pool.

    Session-scoped and treated as read-only; anything that decides, batches,
    or otherwise mutates must take `store_copy` instead.
    """
    store = DocumentStore(tmp_path_factory.mktemp("golden-store"))
    ctx = build_context(app_config, store=store)
    ingest_dir(store, app_config.fixtures_path() / "submissions")
    run_all(ctx)
    return store


@pytest.fixture()
def store_copy(golden_store, tmp_path) -> DocumentStore:
    root = tmp_path / "store"
    shutil.copytree(golden_store.root, root)
    return DocumentStore(root)


# One human-readable pass/fail line per acceptance criterion, printed after
# the run so the gate can be read off the terminal without grepping -v output.
_acceptance: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    # parametrized cases collapse onto one criterion line: pass iff all pass
    name = report.nodeid.split("::")[-1].split("[")[0]
    if report.when == "call":
        _acceptance[name] = _acceptance.get(name, True) and report.passed
    elif report.failed:  # setup/teardown error counts as a failure
        _acceptance[name] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in _acceptance.items():
        label = name.removeprefix("test_").replace("_", " ")
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}")

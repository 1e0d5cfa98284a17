import sys
import pathlib
ROOT = pathlib.Path(__file__).resolve().parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

import importlib
import json
import random

import pytest
from click.testing import CliRunner


@pytest.fixture
def app():
    """
    Flask app from the factory with a fixed RunConfig, so tests do not
    depend on KRON_SEED in the environment.
    """
    config = importlib.import_module("config")
    app_module = importlib.import_module("app")
    app = app_module.create_app(config.RunConfig(seed=7))
    app.config.update(TESTING=True)
    return app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.delenv("KRON_SEED", raising=False)
    return CliRunner(mix_stderr=False)


@pytest.fixture
def rng():
    return random.Random(20240607)


# --- Canonical curves ---------------------------------------------------------

@pytest.fixture
def twisted_cubic():
    return importlib.import_module("rational_curves").twisted_cubic()


@pytest.fixture
def sigma_cubic():
    return importlib.import_module("rational_curves").sigma_cubic()


@pytest.fixture
def split_quartic():
    return importlib.import_module("rational_curves").split_quartic()


@pytest.fixture
def cubic_resolution(twisted_cubic):
    """0 -> O(1)^2 -> O(3)^4 -> N -> 0 for the twisted cubic."""
    return importlib.import_module("rational_curves").normal_resolution(twisted_cubic)


# --- Small helpers for tests that read JSON files -----------------------------

@pytest.fixture
def write_json(tmp_path):
    def _write(name: str, payload) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write

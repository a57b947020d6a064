"""Pytest configuration for the BLOTLESS test suite."""

from pathlib import Path
import sys

import numpy as np
import pytest


ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

FIXTURES = ROOT / "tests" / "fixtures"
IMAGES_DIR = FIXTURES / "images"
PRESETS_FILE = ROOT / "configs" / "experiments.yaml"


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", default=False, help="run desk-scale Monte-Carlo tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale Monte-Carlo runs (minutes)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def _presets_env(monkeypatch):
    monkeypatch.setenv("BLOTLESS_PRESETS", str(PRESETS_FILE))
    yield


@pytest.fixture
def rng():
    return np.random.default_rng(20240229)


@pytest.fixture
def images_dir() -> Path:
    return IMAGES_DIR


@pytest.fixture
def exact_instance():
    """Noise-free square instance well above the sample bound."""

    from app.packages.models_generated import GenConfig
    from app.packages.synth import gen_training_set

    return gen_training_set(GenConfig(m=8, l=8, n=200, theta=0.2, seed=11))

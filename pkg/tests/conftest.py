import json
from pathlib import Path

import pytest

from aivi import load_model, load_observations, resolve_dataset

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model_path() -> Path:
    return FIXTURES / "model-equal.json"


@pytest.fixture(scope="session")
def data_path() -> Path:
    return FIXTURES / "synthetic-2025.csv"


@pytest.fixture(scope="session")
def golden() -> dict:
    return json.loads((FIXTURES / "golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def sensitivity_golden() -> dict:
    return json.loads((FIXTURES / "sensitivity-golden.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def model(model_path):
    return load_model(model_path)


@pytest.fixture(scope="session")
def observations(data_path):
    return load_observations(data_path)


@pytest.fixture(scope="session")
def resolved(model, observations):
    return resolve_dataset(model, observations)

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).parent
DATA_DIR = TESTS_DIR / "data"
GOLDEN_DIR = DATA_DIR / "golden"

sys.path.insert(0, str(TESTS_DIR))  # makes oracles importable as a plain module

from mpoxtriage.ingest import load_dataset, stratified_split  # noqa: E402


@pytest.fixture(scope="session")
def mini_csv() -> Path:
    return DATA_DIR / "mini_cases.csv"


@pytest.fixture(scope="session")
def fixture_csv() -> Path:
    return DATA_DIR / "cases_fixture.csv"


@pytest.fixture(scope="session")
def mini_dataset(mini_csv):
    dataset, _ = load_dataset(mini_csv)
    return dataset


@pytest.fixture(scope="session")
def mini_split(mini_dataset):
    return stratified_split(mini_dataset, 0.2, seed=42)


@pytest.fixture(scope="session")
def fixture_dataset(fixture_csv):
    dataset, _ = load_dataset(fixture_csv)
    return dataset

#!/usr/bin/env python3
"""Regenerate the golden files under tests/data/golden/.

Goldens freeze the byte-exact outputs of the deterministic pipeline so any
behavioral drift fails loudly. Regenerate only after auditing that the new
outputs are correct; the test suite documents which values were hand-checked.

Run from the repository root: python scripts/refresh_goldens.py
"""

from __future__ import annotations

import json
import os
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

import numpy as np

REPO = Path(__file__).resolve().parent.parent
DATA = REPO / "tests" / "data"
GOLDEN = DATA / "golden"


def node_to_obj(node):
    from mpoxtriage.modelstore import _node_to_obj

    return _node_to_obj(node)


def golden_pipeline_files() -> None:
    """model.json + report.json from the CLI, run with fixed relative paths."""
    from mpoxtriage.cli import main

    with tempfile.TemporaryDirectory() as tmp:
        tmp_path = Path(tmp)
        shutil.copy(DATA / "cases_fixture.csv", tmp_path / "cases_fixture.csv")
        old_cwd = os.getcwd()
        os.chdir(tmp_path)
        try:
            code = main(["train", "--data", "cases_fixture.csv"])
            assert code == 0, f"train exited {code}"
        finally:
            os.chdir(old_cwd)
        shutil.copy(tmp_path / "model.json", GOLDEN / "fixture_model.json")
        shutil.copy(tmp_path / "report.json", GOLDEN / "fixture_report.json")
    print("wrote fixture_model.json, fixture_report.json")


def golden_round1_tree() -> None:
    """One boosting round on the mini training split (min_child_weight=0)."""
    from mpoxtriage.booster import TrainConfig, train
    from mpoxtriage.ingest import load_dataset, stratified_split

    dataset, _ = load_dataset(DATA / "mini_cases.csv")
    train_set, _ = stratified_split(dataset, 0.2, seed=42)
    model, _ = train(train_set, TrainConfig(n_trees=1, min_child_weight=0.0))
    obj = node_to_obj(model.trees[0])
    (GOLDEN / "tree_round1.json").write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")
    print("wrote tree_round1.json")


def golden_smote_synthetics() -> None:
    """Synthetic rows appended to the mini training split under seed 42."""
    from mpoxtriage.ingest import load_dataset, stratified_split
    from mpoxtriage.sampler import SmoteConfig, oversample

    dataset, _ = load_dataset(DATA / "mini_cases.csv")
    train_set, _ = stratified_split(dataset, 0.2, seed=42)
    out, log = oversample(train_set, SmoteConfig(seed=42))
    payload = {
        "synthetics": [out.X[e.synthetic_index].tolist() for e in log],
        "parentage": [
            {"synthetic_index": e.synthetic_index, "parent_index": e.parent_index,
             "neighbor_index": e.neighbor_index, "u": e.u}
            for e in log
        ],
    }
    (GOLDEN / "smote_mini.json").write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    print("wrote smote_mini.json")


def golden_service_bodies() -> None:
    """Response bytes for the diagnosis endpoint against the fixture model."""
    from fastapi.testclient import TestClient

    from mpoxtriage import modelstore
    from mpoxtriage.service import create_app

    model_path = GOLDEN / "fixture_model.json"
    model = modelstore.load(model_path)
    app = create_app(model, modelstore.file_model_id(model_path))
    client = TestClient(app)
    request = {"symptoms": ["fever", "rash", "swollen lymph nodes", "xyzzy"]}
    response = client.post("/api/diagnose", json=request)
    assert response.status_code == 200
    (GOLDEN / "diagnose_request.json").write_text(json.dumps(request) + "\n", encoding="utf-8")
    (GOLDEN / "diagnose_body.json").write_bytes(response.content)
    print("wrote diagnose_request.json, diagnose_body.json")


def golden_predict_stdout() -> None:
    """Exact stdout of the predict subcommand against the fixture model."""
    result = subprocess.run(
        [sys.executable, "-m", "mpoxtriage.cli", "predict",
         "--model", str(GOLDEN / "fixture_model.json"),
         "--symptom", "fever", "--symptom", "rash"],
        capture_output=True,
        check=True,
    )
    (GOLDEN / "predict_stdout.json").write_bytes(result.stdout)
    print("wrote predict_stdout.json")


def main() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    golden_pipeline_files()
    golden_round1_tree()
    golden_smote_synthetics()
    golden_service_bodies()
    golden_predict_stdout()


if __name__ == "__main__":
    main()

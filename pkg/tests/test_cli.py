import json
import shutil
import socket

import pytest

from mpoxtriage.cli import main

from conftest import DATA_DIR, GOLDEN_DIR


@pytest.fixture()
def workdir(tmp_path, monkeypatch):
    """Fixed relative paths inside a scratch cwd keep outputs byte-stable."""
    shutil.copy(DATA_DIR / "cases_fixture.csv", tmp_path / "cases_fixture.csv")
    shutil.copy(DATA_DIR / "mini_cases.csv", tmp_path / "mini_cases.csv")
    monkeypatch.chdir(tmp_path)
    return tmp_path


def test_train_writes_golden_outputs(workdir, capsys):
    code = main(["train", "--data", "cases_fixture.csv"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("accuracy=0.9756")
    assert (workdir / "model.json").read_bytes() == (GOLDEN_DIR / "fixture_model.json").read_bytes()
    assert (workdir / "report.json").read_bytes() == (GOLDEN_DIR / "fixture_report.json").read_bytes()


def test_train_twice_byte_identical(workdir):
    argv = ["train", "--data", "cases_fixture.csv"]
    assert main(argv) == 0
    first_model = (workdir / "model.json").read_bytes()
    first_report = (workdir / "report.json").read_bytes()
    assert main(argv) == 0
    assert (workdir / "model.json").read_bytes() == first_model
    assert (workdir / "report.json").read_bytes() == first_report


def test_train_missing_file_exits_2(workdir, capsys):
    code = main(["train", "--data", "nowhere.csv"])
    assert code == 2
    assert "nowhere.csv" in capsys.readouterr().err


def test_train_bad_flag_value_exits_2(workdir, capsys):
    assert main(["train", "--data", "cases_fixture.csv", "--eta", "7.0"]) == 2
    assert "eta" in capsys.readouterr().err


def test_train_without_data_exits_2(workdir, capsys):
    assert main(["train"]) == 2
    assert "data" in capsys.readouterr().err


def test_train_config_file_and_flag_precedence(workdir):
    (workdir / "run.toml").write_text(
        "\n".join(
            [
                'data_path = "cases_fixture.csv"',
                "split_seed = 7",
                "[train]",
                "n_trees = 3",
                "eta = 0.2",
                "[smote]",
                "seed = 9",
            ]
        )
        + "\n",
        encoding="utf-8",
    )
    # flag overrides the file, file overrides the default
    assert main(["train", "--config", "run.toml", "--eta", "0.05"]) == 0
    report = json.loads((workdir / "report.json").read_text(encoding="utf-8"))
    assert report["config"]["train"]["eta"] == 0.05
    assert report["config"]["train"]["n_trees"] == 3
    assert report["config"]["split_seed"] == 7
    assert report["config"]["smote"]["seed"] == 9
    assert report["config"]["test_fraction"] == 0.2  # untouched default


def test_train_unknown_config_key_exits_2(workdir, capsys):
    (workdir / "bad.toml").write_text("bogus = 1\n", encoding="utf-8")
    assert main(["train", "--config", "bad.toml"]) == 2
    assert "bogus" in capsys.readouterr().err


def test_train_smote_order_flag_and_parentage_log(workdir):
    code = main(
        [
            "train", "--data", "cases_fixture.csv", "--smote-order", "before_split",
            "--parentage-out", "parents.csv", "--model-out", "m.json", "--report-out", "r.json",
        ]
    )
    assert code == 0
    lines = (workdir / "parents.csv").read_text(encoding="utf-8").splitlines()
    assert lines[0] == "synthetic_index,parent_index,neighbor_index,u"
    assert len(lines) > 1
    report = json.loads((workdir / "r.json").read_text(encoding="utf-8"))
    assert report["config"]["smote_order"] == "before_split"
    assert report["n"] == 56  # 20% of the fully balanced 138+138 set


def test_predict_golden_stdout(workdir, capsys):
    code = main(["predict", "--model", str(GOLDEN_DIR / "fixture_model.json"),
                 "--symptom", "fever", "--symptom", "rash"])
    assert code == 0
    out = capsys.readouterr().out
    assert out.encode("utf-8") == (GOLDEN_DIR / "predict_stdout.json").read_bytes()


def test_predict_no_symptoms_and_unknown_token(workdir, capsys):
    assert main(["predict", "--model", str(GOLDEN_DIR / "fixture_model.json")]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["diagnosis"] in ("positive", "negative")

    assert main(["predict", "--model", str(GOLDEN_DIR / "fixture_model.json"),
                 "--symptom", "xyzzy"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["unknown_symptoms"] == ["xyzzy"]


def test_predict_bad_model_exits_2(workdir, capsys):
    assert main(["predict", "--model", "missing.json"]) == 2
    (workdir / "broken.json").write_text("{}", encoding="utf-8")
    assert main(["predict", "--model", "broken.json"]) == 2


def test_vocab_prints_tokens_and_counts(workdir, capsys):
    code = main(["vocab", "--data", "mini_cases.csv"])
    assert code == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == (DATA_DIR / "mini_vocab.txt").read_text(encoding="utf-8").splitlines()
    assert "positive=7 negative=5" in captured.err


def test_vocab_out_file(workdir):
    assert main(["vocab", "--data", "mini_cases.csv", "--out", "vocab.txt"]) == 0
    assert (workdir / "vocab.txt").read_bytes() == (DATA_DIR / "mini_vocab.txt").read_bytes()


def test_vocab_unusable_data_exits_2(workdir, capsys):
    (workdir / "empty.csv").write_text("Symptoms,Status\n", encoding="utf-8")
    assert main(["vocab", "--data", "empty.csv"]) == 2


def test_serve_bound_port_exits_2(workdir, capsys):
    blocker = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    blocker.bind(("127.0.0.1", 0))
    port = blocker.getsockname()[1]
    try:
        code = main(["serve", "--model", str(GOLDEN_DIR / "fixture_model.json"), "--port", str(port)])
    finally:
        blocker.close()
    assert code == 2
    assert str(port) in capsys.readouterr().err


def test_serve_bad_model_exits_2(workdir, capsys):
    assert main(["serve", "--model", "missing.json"]) == 2


def test_serve_missing_assets_dir_exits_2(workdir, capsys):
    code = main(["serve", "--model", str(GOLDEN_DIR / "fixture_model.json"),
                 "--assets", "no-such-dir"])
    assert code == 2

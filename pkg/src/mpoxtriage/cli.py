"""Command-line pipeline: ingest -> split -> oversample -> boost -> evaluate.

Subcommands: train, predict, serve, vocab. Exit codes: 0 success, 1 runtime
failure, 2 configuration or input validation failure. For train, flags
override an optional TOML config file, which overrides built-in defaults;
the effective configuration is echoed into the evaluation report so every
reported number is reproducible.
"""

from __future__ import annotations

import argparse
import json
import socket
import sys
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ImportError:  # Python 3.10
    import tomli as tomllib

from . import evaluation, modelstore, service
from .booster import TrainConfig, train
from .ingest import IngestError, load_dataset, stratified_split, write_vocabulary
from .sampler import SmoteConfig, oversample, write_parentage_csv

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2

SMOTE_ORDERS = ("after_split", "before_split")


@dataclass
class PipelineConfig:
    """Everything one train run needs; mirrors the TOML schema."""

    data_path: str
    test_fraction: float = 0.2
    split_seed: int = 42
    smote_order: str = "after_split"
    smote: SmoteConfig = field(default_factory=SmoteConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    model_out: str = "model.json"
    report_out: str = "report.json"
    parentage_out: str | None = None

    def __post_init__(self) -> None:
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError(f"test_fraction must be in (0, 1), got {self.test_fraction}")
        if self.smote_order not in SMOTE_ORDERS:
            raise ValueError(f"smote_order must be one of {SMOTE_ORDERS}, got {self.smote_order!r}")

    def echo(self) -> dict:
        return {
            "data_path": self.data_path,
            "test_fraction": self.test_fraction,
            "split_seed": self.split_seed,
            "smote_order": self.smote_order,
            "smote": {
                "k_neighbors": self.smote.k_neighbors,
                "target_ratio": self.smote.target_ratio,
                "seed": self.smote.seed,
            },
            "train": {
                "eta": self.train.eta,
                "gamma": self.train.gamma,
                "reg_lambda": self.train.reg_lambda,
                "n_trees": self.train.n_trees,
                "max_depth": self.train.max_depth,
                "min_child_weight": self.train.min_child_weight,
                "base_score": self.train.base_score,
            },
            "model_out": self.model_out,
            "report_out": self.report_out,
        }


# TOML key -> argparse dest, per section.
_TOML_TOP = {
    "data_path": "data_path",
    "test_fraction": "test_fraction",
    "split_seed": "split_seed",
    "smote_order": "smote_order",
    "model_out": "model_out",
    "report_out": "report_out",
    "parentage_out": "parentage_out",
}
_TOML_SMOTE = {"k_neighbors": "smote_k", "target_ratio": "smote_ratio", "seed": "smote_seed"}
_TOML_TRAIN = {
    "eta": "eta",
    "gamma": "gamma",
    "reg_lambda": "reg_lambda",
    "n_trees": "n_trees",
    "max_depth": "max_depth",
    "min_child_weight": "min_child_weight",
    "base_score": "base_score",
}


def _config_file_defaults(path: str) -> dict:
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    defaults: dict = {}
    for key, value in raw.items():
        if key == "smote":
            for sub, sub_value in value.items():
                if sub not in _TOML_SMOTE:
                    raise ValueError(f"unknown config key smote.{sub}")
                defaults[_TOML_SMOTE[sub]] = sub_value
        elif key == "train":
            for sub, sub_value in value.items():
                if sub not in _TOML_TRAIN:
                    raise ValueError(f"unknown config key train.{sub}")
                defaults[_TOML_TRAIN[sub]] = sub_value
        elif key in _TOML_TOP:
            defaults[_TOML_TOP[key]] = value
        else:
            raise ValueError(f"unknown config key {key}")
    return defaults


def _add_train_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="TOML config file; flags override its values")
    parser.add_argument("--data", dest="data_path", help="case CSV to train on")
    parser.add_argument("--test-fraction", type=float, dest="test_fraction")
    parser.add_argument("--split-seed", type=int, dest="split_seed")
    parser.add_argument("--smote-order", choices=SMOTE_ORDERS, dest="smote_order")
    parser.add_argument("--smote-k", type=int, dest="smote_k")
    parser.add_argument("--smote-ratio", type=float, dest="smote_ratio")
    parser.add_argument("--smote-seed", type=int, dest="smote_seed")
    parser.add_argument("--parentage-out", dest="parentage_out")
    parser.add_argument("--eta", type=float)
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--reg-lambda", type=float, dest="reg_lambda")
    parser.add_argument("--trees", type=int, dest="n_trees")
    parser.add_argument("--max-depth", type=int, dest="max_depth")
    parser.add_argument("--min-child-weight", type=float, dest="min_child_weight")
    parser.add_argument("--base-score", type=float, dest="base_score")
    parser.add_argument("--model-out", dest="model_out")
    parser.add_argument("--report-out", dest="report_out")


_TRAIN_DEFAULTS = {
    "test_fraction": 0.2,
    "split_seed": 42,
    "smote_order": "after_split",
    "smote_k": 5,
    "smote_ratio": 1.0,
    "smote_seed": 0,
    "parentage_out": None,
    "eta": 0.0991,
    "gamma": 0.0,
    "reg_lambda": 1.0,
    "n_trees": 80,
    "max_depth": 6,
    "min_child_weight": 1.0,
    "base_score": 0.5,
    "model_out": "model.json",
    "report_out": "report.json",
}


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    if args.data_path is None:
        raise ValueError("no data file given (use --data or data_path in the config file)")
    return PipelineConfig(
        data_path=args.data_path,
        test_fraction=args.test_fraction,
        split_seed=args.split_seed,
        smote_order=args.smote_order,
        smote=SmoteConfig(k_neighbors=args.smote_k, target_ratio=args.smote_ratio, seed=args.smote_seed),
        train=TrainConfig(
            eta=args.eta,
            gamma=args.gamma,
            reg_lambda=args.reg_lambda,
            n_trees=args.n_trees,
            max_depth=args.max_depth,
            min_child_weight=args.min_child_weight,
            base_score=args.base_score,
        ),
        model_out=args.model_out,
        report_out=args.report_out,
        parentage_out=args.parentage_out,
    )


def run_pipeline(config: PipelineConfig) -> tuple[evaluation.EvalReport, dict]:
    """Execute one full training run and return (report, report payload)."""
    dataset, _ = load_dataset(config.data_path)
    if config.smote_order == "before_split":
        dataset, parentage = oversample(dataset, config.smote)
        train_set, test_set = stratified_split(dataset, config.test_fraction, config.split_seed)
    else:
        train_set, test_set = stratified_split(dataset, config.test_fraction, config.split_seed)
        train_set, parentage = oversample(train_set, config.smote)

    model, _ = train(train_set, config.train)
    report = evaluation.evaluate(model, test_set)

    modelstore.save(model, config.model_out)
    payload = evaluation.report_payload(
        report,
        fingerprint=evaluation.dataset_fingerprint(test_set),
        config_echo=config.echo(),
        model_id=modelstore.model_id(model),
    )
    Path(config.report_out).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    if config.parentage_out is not None:
        write_parentage_csv(parentage, config.parentage_out)
    return report, payload


def cmd_train(args: argparse.Namespace) -> int:
    try:
        config = _pipeline_config(args)
        report, _ = run_pipeline(config)
    except (FileNotFoundError, IngestError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"accuracy={report.accuracy:.4f} ({report.tp + report.tn}/{report.n})")
    return EXIT_OK


def cmd_predict(args: argparse.Namespace) -> int:
    try:
        model = modelstore.load(args.model)
        model_id = modelstore.file_model_id(args.model)
    except (FileNotFoundError, modelstore.ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    payload = service.diagnose_payload(model, model_id, args.symptom)
    print(json.dumps(payload))
    return EXIT_OK


def cmd_vocab(args: argparse.Namespace) -> int:
    try:
        dataset, report = load_dataset(args.data_path)
        if args.out is not None:
            write_vocabulary(dataset.vocabulary, args.out)
    except (FileNotFoundError, IngestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    for token in dataset.vocabulary.tokens:
        print(token)
    print(f"positive={report.n_positive} negative={report.n_negative}", file=sys.stderr)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        model = modelstore.load(args.model)
        model_id = modelstore.file_model_id(args.model)
    except (FileNotFoundError, modelstore.ModelError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.assets is not None and not Path(args.assets).is_dir():
        print(f"error: assets directory not found: {args.assets}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((args.host, args.port))
        probe.close()
    except OSError as exc:
        print(f"error: cannot bind {args.host}:{args.port}: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    import uvicorn

    app = service.create_app(model, model_id, assets_dir=args.assets)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parsers() -> tuple[argparse.ArgumentParser, argparse.ArgumentParser]:
    """Returns (main parser, train subparser); the latter is exposed so config
    file values can be installed as defaults before a re-parse."""
    parser = argparse.ArgumentParser(prog="mpoxtriage", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", help="run the full pipeline and write model + report")
    _add_train_flags(p_train)
    p_train.set_defaults(func=cmd_train, **_TRAIN_DEFAULTS, data_path=None)

    p_predict = sub.add_parser("predict", help="diagnose a symptom list with a saved model")
    p_predict.add_argument("--model", required=True)
    p_predict.add_argument("--symptom", action="append", default=[], help="repeatable symptom token")
    p_predict.set_defaults(func=cmd_predict)

    p_serve = sub.add_parser("serve", help="run the inference HTTP service")
    p_serve.add_argument("--model", required=True)
    p_serve.add_argument("--port", type=int, default=8080)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--assets", default=None, help="directory of static UI files served at /")
    p_serve.set_defaults(func=cmd_serve)

    p_vocab = sub.add_parser("vocab", help="print the vocabulary derived from a case CSV")
    p_vocab.add_argument("--data", dest="data_path", required=True)
    p_vocab.add_argument("--out", default=None, help="also write the vocabulary to this file")
    p_vocab.set_defaults(func=cmd_vocab)

    return parser, p_train


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, train_parser = build_parsers()
    args = parser.parse_args(argv)
    if args.command == "train" and args.config is not None:
        try:
            file_defaults = _config_file_defaults(args.config)
        except FileNotFoundError:
            print(f"error: config file not found: {args.config}", file=sys.stderr)
            return EXIT_CONFIG
        except (ValueError, tomllib.TOMLDecodeError) as exc:
            print(f"error: bad config file {args.config}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        # Precedence: flags > config file > defaults. Re-parse with the file's
        # values installed as defaults so explicit flags still win.
        train_parser.set_defaults(**file_defaults)
        args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

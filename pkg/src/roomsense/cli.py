"""Command-line front end: simulate -> featurize -> train -> evaluate -> benchmark.

One top-level seed deterministically derives a sub-seed per pipeline stage
(simulate, featurize, train), so stages can be rerun independently and a
benchmark run is byte-identical to running the stage commands by hand with
the same config and seed.  Flags override config-file keys, which override
defaults; the effective config is echoed into every output.
"""

import argparse
import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import evaluation, features, ml
from ._seeds import derive_seed
from .dataset import PairingConfig, TraceFormatError, build_pairs, ingest_traces, write_traces
from .evaluation import ConfusionMatrix, EvalReport
from .features import FEATURE_NAMES, FeatureFormatError, read_feature_matrix, write_feature_matrix
from .simulator import SimConfig, generate

KDE_EXPORT_FEATURES = ("dtw_1", "dtw_2", "dtw_3", "high_3")

EXIT_RUNTIME = 1
EXIT_BAD_FILE = 2
EXIT_BAD_CONFIG = 3


class ConfigError(ValueError):
    """Invalid configuration (bad key, bad value, or inconsistent settings)."""


# ---------------------------------------------------------------------------
# Run configuration: flat key=value file, overridable by flags


def _parse_bool(text):
    if text.lower() in ("true", "1", "yes"):
        return True
    if text.lower() in ("false", "0", "no"):
        return False
    raise ValueError(f"expected a boolean, got {text!r}")


def _parse_optional_int(text):
    return None if text.lower() == "none" else int(text)


def _parse_trees_max_features(text):
    return "sqrt" if text.lower() == "sqrt" else int(text)


def _parse_optional_float(text):
    return None if text.lower() in ("scale", "none") else float(text)


def _parse_xy(text):
    x, y = text.split(",")
    return (float(x), float(y))


def _parse_ap_positions(text):
    positions = tuple(_parse_xy(part) for part in text.split(";"))
    if len(positions) != 3:
        raise ValueError("expected three access-point positions")
    return positions


def _format_value(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, tuple) and value and isinstance(value[0], tuple):
        return ";".join(f"{x!r},{y!r}" for x, y in value)
    if isinstance(value, tuple):
        return ",".join(repr(float(v)) for v in value)
    return str(value)


_PARSERS = {
    "seed": int,
    "ap_positions": _parse_ap_positions,
    "room_left": _parse_xy,
    "room_right": _parse_xy,
    "devices_per_room": int,
    "trials": int,
    "samples_per_trial": int,
    "interval_s": float,
    "gamma": float,
    "pl0_dbm": float,
    "d0_m": float,
    "wall_loss_db": float,
    "noise_sigma_db": float,
    "n_positive": int,
    "n_negative": int,
    "trial_matching": str,
    "algorithm": str,
    "lr_learning_rate": float,
    "lr_iterations": int,
    "knn_k": int,
    "dt_min_samples_split": int,
    "dt_max_depth": _parse_optional_int,
    "dt_max_features": _parse_optional_int,
    "rf_n_trees": int,
    "rf_max_features": _parse_trees_max_features,
    "rf_bootstrap": _parse_bool,
    "svm_c": float,
    "svm_gamma": _parse_optional_float,
    "svm_tol": float,
    "svm_max_passes": int,
    "train_fraction": float,
    "cv_folds": int,
}


@dataclass
class RunConfig:
    """Merged view of simulator, pairing, training, and evaluation settings."""

    seed: int = 0
    ap_positions: tuple = ((0.0, 0.0), (0.0, 21.0), (32.0, 0.0))
    room_left: tuple = (33.0, 25.0)
    room_right: tuple = (35.0, 25.0)
    devices_per_room: int = 10
    trials: int = 10
    samples_per_trial: int = 8
    interval_s: float = 4.0
    gamma: float = 2.5
    pl0_dbm: float = -40.0
    d0_m: float = 1.0
    wall_loss_db: float = 5.0
    noise_sigma_db: float = 4.0
    n_positive: int = 100
    n_negative: int = 200
    trial_matching: str = "equal"
    algorithm: str = "rf"
    lr_learning_rate: float = 0.1
    lr_iterations: int = 1000
    knn_k: int = 5
    dt_min_samples_split: int = 2
    dt_max_depth: int | None = None
    dt_max_features: int | None = None
    rf_n_trees: int = 100
    rf_max_features: object = "sqrt"
    rf_bootstrap: bool = True
    svm_c: float = 1.0
    svm_gamma: float | None = None
    svm_tol: float = 1e-3
    svm_max_passes: int = 10
    train_fraction: float = 0.75
    cv_folds: int = 10

    def stage_seed(self, stage: str) -> int:
        return derive_seed(self.seed, stage)

    def sim_config(self) -> SimConfig:
        try:
            return SimConfig(
                ap_positions=self.ap_positions,
                room_right=self.room_right,
                room_left=self.room_left,
                devices_per_room=self.devices_per_room,
                trials=self.trials,
                samples_per_trial=self.samples_per_trial,
                interval_s=self.interval_s,
                gamma=self.gamma,
                pl0_dbm=self.pl0_dbm,
                d0_m=self.d0_m,
                wall_loss_db=self.wall_loss_db,
                noise_sigma_db=self.noise_sigma_db,
                seed=self.stage_seed("simulate"),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def pairing_config(self) -> PairingConfig:
        try:
            return PairingConfig(self.n_positive, self.n_negative, self.trial_matching)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def train_config(self, algorithm: str | None = None) -> ml.TrainConfig:
        try:
            return ml.TrainConfig(
                algorithm=algorithm or self.algorithm,
                seed=self.stage_seed("train"),
                lr=ml.LRParams(self.lr_learning_rate, self.lr_iterations),
                knn=ml.KNNParams(self.knn_k),
                dt=ml.DTParams(
                    self.dt_min_samples_split, self.dt_max_depth, self.dt_max_features
                ),
                rf=ml.RFParams(self.rf_n_trees, self.rf_max_features, self.rf_bootstrap),
                svm=ml.SVMParams(
                    self.svm_c, self.svm_gamma, self.svm_tol, self.svm_max_passes
                ),
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def echo(self) -> dict:
        """Effective configuration as ordered key=value strings."""
        return {f.name: _format_value(getattr(self, f.name)) for f in fields(self)}


def parse_config_file(path) -> dict:
    """Read a flat key=value config file ('#' comments and blank lines ignored)."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _PARSERS:
            raise ConfigError(f"{path}:{line_no}: unknown config key {key!r}")
        try:
            values[key] = _PARSERS[key](value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{line_no}: bad value for {key}: {exc}") from None
    return values


def load_run_config(config_path=None, **overrides) -> RunConfig:
    values = parse_config_file(config_path) if config_path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig(**values)
    if cfg.algorithm not in ml.ALGORITHMS:
        raise ConfigError(f"algorithm must be one of {ml.ALGORITHMS}, got {cfg.algorithm!r}")
    if not 0 < cfg.train_fraction < 1:
        raise ConfigError(f"train_fraction must be in (0, 1), got {cfg.train_fraction}")
    return cfg


# ---------------------------------------------------------------------------
# Commands


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _load_config(args) -> RunConfig:
    overrides = {"seed": getattr(args, "seed", None)}
    if getattr(args, "algorithm", None):
        overrides["algorithm"] = args.algorithm
    return load_run_config(getattr(args, "config", None), **overrides)


def cmd_simulate(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    points = generate(cfg.sim_config())
    write_traces(points, out / "traces.csv", comments=cfg.echo())
    print(out / "traces.csv")
    return 0


def _featurize(cfg: RunConfig, traces_path):
    points = ingest_traces(traces_path)
    return build_pairs(points, cfg.pairing_config(), seed=cfg.stage_seed("featurize"))


def cmd_featurize(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    dataset = _featurize(cfg, args.traces)
    write_feature_matrix(
        dataset.feature_matrix(), dataset.labels(), out / "features.csv", comments=cfg.echo()
    )
    print(out / "features.csv")
    return 0


def _train_pipeline(X, y, cfg: RunConfig, algorithm: str):
    """Shared split + standardize + fit used by train, evaluate, and benchmark."""
    train_cfg = cfg.train_config(algorithm)
    seed = cfg.stage_seed("train")
    train_idx, _ = evaluation.train_test_split(y, cfg.train_fraction, seed)
    scaler = evaluation.standardize_fit(X[train_idx])
    model = ml.train(evaluation.standardize_apply(scaler, X[train_idx]), y[train_idx], train_cfg)
    return model, scaler, train_cfg, seed


def _save_model(model, scaler, cfg: RunConfig, algorithm, seed, path):
    ml.save_model(
        model,
        path,
        extra={
            "pipeline": {
                "seed": seed,
                "train_fraction": cfg.train_fraction,
                "cv_folds": cfg.cv_folds,
                "standardizer": scaler.to_dict(),
            },
            "config": cfg.echo() | {"algorithm": algorithm},
        },
    )


def cmd_train(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    X, y = read_feature_matrix(args.features)
    algorithm = cfg.algorithm
    model, scaler, _, seed = _train_pipeline(X, y, cfg, algorithm)
    path = out / f"model_{algorithm}.json"
    _save_model(model, scaler, cfg, algorithm, seed, path)
    print(path)
    return 0


def _evaluate_loaded(X, y, model, scaler, train_cfg, seed, train_fraction, cv_folds):
    """Holdout metrics for an already-fitted model plus CV by refitting."""
    train_idx, test_idx = evaluation.train_test_split(y, train_fraction, seed)
    pred = ml.predict(model, evaluation.standardize_apply(scaler, X[test_idx]))
    cm = ConfusionMatrix.from_labels(y[test_idx], pred)
    cv = evaluation.cross_validate(
        X[train_idx], y[train_idx], train_cfg, k=cv_folds, seed=derive_seed(seed, "cv")
    )
    importance = None
    if train_cfg.algorithm == "rf":
        importance = tuple(float(v) for v in ml.mdi_importance(model))
    return EvalReport(
        algorithm=train_cfg.algorithm,
        seed=seed,
        confusion=cm,
        accuracy=evaluation.accuracy(cm),
        f1_class0=evaluation.f1(cm, positive_class=0),
        f1_class1=evaluation.f1(cm, positive_class=1),
        cv_accuracies=tuple(float(a) for a in cv),
        importance=importance,
    )


def _write_report(report: EvalReport, cfg: RunConfig, out: Path) -> Path:
    path = out / f"report_{report.algorithm}.json"
    path.write_text(
        report.to_json(extra={"config": cfg.echo() | {"algorithm": report.algorithm}}),
        encoding="utf-8",
    )
    return path


def _write_importance_csv(report: EvalReport, cfg: RunConfig, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in cfg.echo().items():
            fh.write(f"# {key}={value}\n")
        fh.write("feature,importance\n")
        for name, value in zip(FEATURE_NAMES, report.importance):
            fh.write(f"{name},{value!r}\n")


def cmd_evaluate(args) -> int:
    cfg = _load_config(args)
    out = _out_dir(args)
    X, y = read_feature_matrix(args.features)

    if args.model:
        model, doc = ml.load_model(args.model)
        try:
            pipeline = doc["pipeline"]
            echo = doc["config"]
            train_cfg = ml.TrainConfig.from_hyperparams(
                doc["algorithm"], pipeline["seed"], _typed_hyperparams(echo)
            )
            scaler = evaluation.Standardizer.from_dict(pipeline["standardizer"])
            report = _evaluate_loaded(
                X, y, model, scaler, train_cfg,
                pipeline["seed"], pipeline["train_fraction"], pipeline["cv_folds"],
            )
        except (KeyError, TypeError) as exc:
            raise ml.ModelFormatError(f"model document lacks pipeline info ({exc})") from None
    else:
        report = evaluation.evaluate(
            X, y, cfg.train_config(), seed=cfg.stage_seed("train"),
            train_fraction=cfg.train_fraction, cv_folds=cfg.cv_folds,
        )

    if args.importance and report.importance is None:
        raise ConfigError("--importance requires the rf algorithm")

    path = _write_report(report, cfg, out)
    print(path)
    if args.importance:
        _write_importance_csv(report, cfg, out / "importance.csv")
        print(out / "importance.csv")
    if args.kde:
        indices = [FEATURE_NAMES.index(name) for name in KDE_EXPORT_FEATURES]
        evaluation.write_kde_csv(
            X, y, FEATURE_NAMES, indices, out / "kde.csv", comments=cfg.echo()
        )
        print(out / "kde.csv")
    return 0


def _typed_hyperparams(echo: dict) -> dict:
    """Parse the hyperparameter subset of a config echo back to typed values."""
    return {
        key: _PARSERS[key](str(echo[key]))
        for key in (
            "lr_learning_rate", "lr_iterations", "knn_k", "dt_min_samples_split",
            "dt_max_depth", "dt_max_features", "rf_n_trees", "rf_max_features",
            "rf_bootstrap", "svm_c", "svm_gamma", "svm_tol", "svm_max_passes",
        )
    }


def cmd_benchmark(args) -> int:
    """Full pipeline over all five classifiers; writes every stage output."""
    cfg = _load_config(args)
    out = _out_dir(args)

    points = generate(cfg.sim_config())
    write_traces(points, out / "traces.csv", comments=cfg.echo())
    dataset = _featurize(cfg, out / "traces.csv")
    write_feature_matrix(
        dataset.feature_matrix(), dataset.labels(), out / "features.csv", comments=cfg.echo()
    )
    X, y = read_feature_matrix(out / "features.csv")

    rows = []
    for algorithm in ml.ALGORITHMS:
        model, scaler, train_cfg, seed = _train_pipeline(X, y, cfg, algorithm)
        _save_model(model, scaler, cfg, algorithm, seed, out / f"model_{algorithm}.json")
        report = _evaluate_loaded(
            X, y, model, scaler, train_cfg, seed, cfg.train_fraction, cfg.cv_folds
        )
        _write_report(report, cfg, out)
        rows.append((algorithm, report.accuracy, report.f1_class0, report.f1_class1))

    table = out / "benchmark.csv"
    with open(table, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in cfg.echo().items():
            fh.write(f"# {key}={value}\n")
        fh.write("algorithm,accuracy,f1_class0,f1_class1\n")
        for algorithm, acc, f1_0, f1_1 in rows:
            fh.write(f"{algorithm},{acc!r},{f1_0!r},{f1_1!r}\n")
    print(table)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing and entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roomsense",
        description="Same-room vs different-room classification from Wi-Fi RSSI traces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--seed", type=int, help="top-level seed (derives all stage seeds)")
        p.add_argument("--out", default="out", help="output directory (default: out)")

    p = sub.add_parser("simulate", help="generate synthetic RSSI traces")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("featurize", help="build the labeled feature matrix from traces")
    p.add_argument("traces", help="trace CSV produced by simulate (or compatible)")
    common(p)
    p.set_defaults(func=cmd_featurize)

    p = sub.add_parser("train", help="train one classifier on a feature matrix")
    p.add_argument("features", help="feature CSV produced by featurize")
    common(p)
    p.add_argument("--algorithm", choices=ml.ALGORITHMS, help="classifier (default: rf)")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="evaluate a classifier on a feature matrix")
    p.add_argument("features", help="feature CSV produced by featurize")
    common(p)
    p.add_argument("--algorithm", choices=ml.ALGORITHMS, help="classifier (default: rf)")
    p.add_argument("--model", help="evaluate a saved model JSON instead of retraining")
    p.add_argument("--importance", action="store_true", help="write importance.csv (rf only)")
    p.add_argument("--kde", action="store_true", help="write class-conditional KDE curves")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("benchmark", help="simulate, featurize, and evaluate all classifiers")
    common(p)
    p.set_defaults(func=cmd_benchmark)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: config: {exc}", file=sys.stderr)
        return EXIT_BAD_CONFIG
    except (TraceFormatError, FeatureFormatError, ml.ModelFormatError) as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except FileNotFoundError as exc:
        print(f"error: input: {exc}", file=sys.stderr)
        return EXIT_BAD_FILE
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"error: runtime: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

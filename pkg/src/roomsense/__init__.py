"""roomsense: same-room vs different-room classification from Wi-Fi RSSI traces.

Pipeline: simulate (or ingest) RSSI traces -> build a labeled pair dataset
with six features per access point -> train one of five classifiers ->
evaluate with holdout metrics, cross-validation, feature importance, and
class-conditional densities.
"""

from . import dataset, dtw, evaluation, features, ml, simulator
from .dataset import (
    Dataset,
    PairingConfig,
    PairSample,
    PointRecord,
    RssiReading,
    Trace,
    build_pairs,
    ingest_traces,
    unique_values,
    write_traces,
)
from .dtw import WarpResult, dtw_distance
from .evaluation import ConfusionMatrix, EvalReport, Standardizer, evaluate
from .features import FEATURE_NAMES, featurize_pair
from .ml import TrainConfig, predict, train
from .simulator import SimConfig, generate, path_loss_db, sample_rssi

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "PairingConfig",
    "PairSample",
    "PointRecord",
    "RssiReading",
    "Trace",
    "build_pairs",
    "ingest_traces",
    "unique_values",
    "write_traces",
    "WarpResult",
    "dtw_distance",
    "ConfusionMatrix",
    "EvalReport",
    "Standardizer",
    "evaluate",
    "FEATURE_NAMES",
    "featurize_pair",
    "TrainConfig",
    "predict",
    "train",
    "SimConfig",
    "generate",
    "path_loss_db",
    "sample_rssi",
    "dataset",
    "dtw",
    "evaluation",
    "features",
    "ml",
    "simulator",
]

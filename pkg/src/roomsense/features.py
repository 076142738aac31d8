"""Six per-access-point features for a pair of device points.

Every operation consumes the two points' unique-RSSI sequences for one AP.
Statistical features work on absolute dBm magnitudes (so "minimum strength"
names the strongest observed signal); the ratio features count values at or
below the -50 dBm (high) and -70 dBm (average) marks over the deduplicated
union; signal similarity is the DTW distance between the ordered sequences.
Concatenating the six features over the three APs yields the 18-value vector,
which is symmetric in the two points.
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dataset import AP_IDS, PointRecord, unique_values
from .dtw import dtw_distance

HIGH_STRENGTH_DBM = -50
AVG_STRENGTH_DBM = -70

AP_FEATURE_NAMES = ("md", "savg", "smin", "high", "avg", "dtw")
FEATURE_NAMES = tuple(f"{name}_{ap}" for ap in AP_IDS for name in AP_FEATURE_NAMES)
FEATURE_CSV_HEADER = "label," + ",".join(FEATURE_NAMES)


class FeatureFormatError(ValueError):
    """Malformed feature-matrix file; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def _check_nonempty(u, v):
    if len(u) == 0 or len(v) == 0:
        raise ValueError("feature inputs must be nonempty")


def _union(u, v):
    return set(u) | set(v)


def mean_difference(u, v) -> float:
    """Gap between the two points' mean absolute RSSI values."""
    _check_nonempty(u, v)
    return abs(float(np.mean(np.abs(u))) - float(np.mean(np.abs(v))))


def mean_strength(u, v) -> float:
    """Mean absolute RSSI over the deduplicated union of both points' values."""
    _check_nonempty(u, v)
    return float(np.mean([abs(s) for s in _union(u, v)]))


def min_strength(u, v) -> float:
    """Smallest absolute RSSI over the union, i.e. the strongest signal seen."""
    _check_nonempty(u, v)
    return float(min(abs(s) for s in _union(u, v)))


def high_strength_ratio(u, v) -> float:
    """Fraction of the union at or below -50 dBm."""
    _check_nonempty(u, v)
    union = _union(u, v)
    return sum(1 for s in union if s <= HIGH_STRENGTH_DBM) / len(union)


def avg_strength_ratio(u, v) -> float:
    """Fraction of the union at or below -70 dBm."""
    _check_nonempty(u, v)
    union = _union(u, v)
    return sum(1 for s in union if s <= AVG_STRENGTH_DBM) / len(union)


def signal_similarity(u, v) -> float:
    """DTW distance between the two ordered unique-value sequences."""
    _check_nonempty(u, v)
    return dtw_distance(u, v).distance


@dataclass(frozen=True)
class ApFeatures:
    """The six features for one access point."""

    md: float
    s_avg: float
    s_min: float
    rssi_high: float
    rssi_avg: float
    dtw: float

    def as_tuple(self):
        return (self.md, self.s_avg, self.s_min, self.rssi_high, self.rssi_avg, self.dtw)


@dataclass(frozen=True)
class PairFeatures:
    """Per-AP feature blocks for a pair, in access-point order 1, 2, 3."""

    per_ap: tuple[ApFeatures, ApFeatures, ApFeatures]

    def as_vector(self) -> np.ndarray:
        return np.array([x for ap in self.per_ap for x in ap.as_tuple()], dtype=float)


def ap_features(u, v) -> ApFeatures:
    """All six features for one AP from two unique-value sequences."""
    return ApFeatures(
        md=mean_difference(u, v),
        s_avg=mean_strength(u, v),
        s_min=min_strength(u, v),
        rssi_high=high_strength_ratio(u, v),
        rssi_avg=avg_strength_ratio(u, v),
        dtw=signal_similarity(u, v),
    )


def pair_features(
    a: PointRecord, b: PointRecord, trial_a: int = 0, trial_b: int | None = None
) -> PairFeatures:
    """Features for a pair of points at the chosen trials (trial_b defaults to trial_a)."""
    if trial_b is None:
        trial_b = trial_a
    blocks = []
    for ap_id in AP_IDS:
        try:
            trace_a = a.traces[(ap_id, trial_a)]
            trace_b = b.traces[(ap_id, trial_b)]
        except KeyError as exc:
            raise ValueError(f"missing trace for (ap_id, trial) {exc.args[0]}") from None
        blocks.append(ap_features(unique_values(trace_a), unique_values(trace_b)))
    return PairFeatures(tuple(blocks))


def featurize_pair(
    a: PointRecord, b: PointRecord, trial_a: int = 0, trial_b: int | None = None
) -> np.ndarray:
    """18-value feature vector, AP-major in the order md, savg, smin, high, avg, dtw."""
    return pair_features(a, b, trial_a, trial_b).as_vector()


# ---------------------------------------------------------------------------
# Feature matrix file: CSV with header `label,md_1,...,dtw_3`, one sample per
# row, '#'-prefixed comment lines ignored.


def write_feature_matrix(X, y, dest, comments=None):
    """Write a labeled feature matrix as CSV (deterministic float repr)."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if X.ndim != 2 or X.shape[1] != len(FEATURE_NAMES):
        raise ValueError(f"expected an n x {len(FEATURE_NAMES)} matrix, got {X.shape}")
    if len(y) != len(X):
        raise ValueError("label count does not match row count")
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            write_feature_matrix(X, y, fh, comments)
        return
    for key, value in (comments or {}).items():
        dest.write(f"# {key}={value}\n")
    dest.write(FEATURE_CSV_HEADER + "\n")
    for label, row in zip(y, X):
        dest.write(f"{int(label)}," + ",".join(repr(float(v)) for v in row) + "\n")


def read_feature_matrix(source):
    """Read a feature-matrix CSV back into (X, y)."""
    if isinstance(source, (str, Path)):
        with open(source, encoding="utf-8", newline="") as fh:
            return read_feature_matrix(fh)

    rows, labels = [], []
    header_seen = False
    for line_no, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line != FEATURE_CSV_HEADER:
                raise FeatureFormatError(line_no, "unexpected feature CSV header")
            header_seen = True
            continue
        fields = line.split(",")
        if len(fields) != 1 + len(FEATURE_NAMES):
            raise FeatureFormatError(
                line_no, f"expected {1 + len(FEATURE_NAMES)} fields, got {len(fields)}"
            )
        try:
            label = int(fields[0])
            values = [float(f) for f in fields[1:]]
        except ValueError as exc:
            raise FeatureFormatError(line_no, f"unparseable field ({exc})") from None
        if label not in (0, 1):
            raise FeatureFormatError(line_no, f"label must be 0 or 1, got {label}")
        labels.append(label)
        rows.append(values)
    if not header_seen:
        raise FeatureFormatError(1, "empty feature file")
    return np.array(rows, dtype=float), np.array(labels, dtype=int)

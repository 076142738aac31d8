"""Standardization, splits, cross-validation, metrics, and KDE analysis.

The headline numbers come from a stratified 75/25 holdout; 10-fold
cross-validation runs inside the training portion as a stability measure,
never touching the held-out test rows.  Standardization statistics are fit
on training data only.
"""

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import ml
from ._seeds import derive_seed, generator


# ---------------------------------------------------------------------------
# Confusion matrix and derived metrics


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be >= 0")

    @classmethod
    def from_labels(cls, y_true, y_pred) -> "ConfusionMatrix":
        y_true = np.asarray(y_true, dtype=int)
        y_pred = np.asarray(y_pred, dtype=int)
        if len(y_true) != len(y_pred):
            raise ValueError("label arrays differ in length")
        return cls(
            tp=int(np.sum((y_pred == 1) & (y_true == 1))),
            fp=int(np.sum((y_pred == 1) & (y_true == 0))),
            fn=int(np.sum((y_pred == 0) & (y_true == 1))),
            tn=int(np.sum((y_pred == 0) & (y_true == 0))),
        )

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


def accuracy(cm: ConfusionMatrix) -> float:
    """(tp + tn) / total."""
    if cm.total == 0:
        raise ValueError("accuracy of an empty confusion matrix")
    return (cm.tp + cm.tn) / cm.total


def f1(cm: ConfusionMatrix, positive_class: int = 1) -> float:
    """Harmonic mean of precision and recall for the chosen class.

    Choosing class 0 swaps the matrix roles.  When precision and recall are
    both zero the score is defined as 0.
    """
    if positive_class == 1:
        tp, fp, fn = cm.tp, cm.fp, cm.fn
    elif positive_class == 0:
        tp, fp, fn = cm.tn, cm.fn, cm.fp
    else:
        raise ValueError(f"positive_class must be 0 or 1, got {positive_class}")
    precision = tp / (tp + fp) if tp + fp > 0 else 0.0
    recall = tp / (tp + fn) if tp + fn > 0 else 0.0
    if precision + recall == 0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


# ---------------------------------------------------------------------------
# Standardization (population statistics, fit on training data only)


@dataclass(frozen=True)
class Standardizer:
    mean: tuple[float, ...]
    std: tuple[float, ...]

    def to_dict(self):
        return {"mean": list(self.mean), "std": list(self.std)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["mean"]), tuple(d["std"]))


def standardize_fit(X_train) -> Standardizer:
    """Per-feature mean and population standard deviation of training rows."""
    X_train = np.asarray(X_train, dtype=float)
    if X_train.ndim != 2 or len(X_train) < 2:
        raise ValueError("standardize_fit needs a 2-D matrix with >= 2 rows")
    if np.isnan(X_train).any():
        raise ValueError("X contains NaN")
    mean = X_train.mean(axis=0)
    std = X_train.std(axis=0)  # population (ddof=0); documented, keeps tests exact
    return Standardizer(tuple(float(m) for m in mean), tuple(float(s) for s in std))


def standardize_apply(s: Standardizer, X) -> np.ndarray:
    """Apply fitted statistics; constant features map to all-zero columns."""
    X = np.asarray(X, dtype=float)
    mean = np.array(s.mean)
    std = np.array(s.std)
    if X.ndim != 2 or X.shape[1] != len(mean):
        raise ValueError(f"expected {len(mean)} columns, got {X.shape}")
    scale = np.where(std == 0, 1.0, std)
    out = (X - mean) / scale
    out[:, std == 0] = 0.0
    return out


# ---------------------------------------------------------------------------
# Stratified splitting


def train_test_split(y, train_fraction: float = 0.75, seed: int = 0):
    """Stratified holdout split; returns sorted (train_idx, test_idx).

    Each class lands in the test side in proportion to its frequency
    (within one sample, via rounding), so 100/200 labels at 75/25 give a
    25/50 test split.
    """
    y = np.asarray(y, dtype=int)
    if not 0 < train_fraction < 1:
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = generator(seed, "split")
    test_parts = []
    for cls in np.unique(y):
        members = np.nonzero(y == cls)[0]
        if len(members) < 2:
            raise ValueError(f"class {cls} has {len(members)} sample(s); need >= 2")
        n_test = int(round(len(members) * (1.0 - train_fraction)))
        n_test = min(max(n_test, 1), len(members) - 1)  # keep both sides populated
        shuffled = rng.permutation(members)
        test_parts.append(shuffled[:n_test])
    test_idx = np.sort(np.concatenate(test_parts))
    mask = np.ones(len(y), dtype=bool)
    mask[test_idx] = False
    return np.nonzero(mask)[0], test_idx


def kfold(y, k: int = 10, seed: int = 0):
    """Stratified k folds; returns k (train_idx, validation_idx) pairs.

    Class-grouped indices are dealt round-robin, so folds are pairwise
    disjoint, cover everything, stay within one sample of each other in
    size, and preserve class ratios within one sample per class.
    """
    y = np.asarray(y, dtype=int)
    n = len(y)
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    if n < k:
        raise ValueError(f"cannot make {k} folds from {n} samples")
    rng = generator(seed, "kfold")
    ordered = np.concatenate(
        [rng.permutation(np.nonzero(y == cls)[0]) for cls in np.unique(y)]
    )
    folds = [ordered[f::k] for f in range(k)]
    pairs = []
    for f in range(k):
        val_idx = np.sort(folds[f])
        mask = np.ones(n, dtype=bool)
        mask[val_idx] = False
        pairs.append((np.nonzero(mask)[0], val_idx))
    return pairs


# ---------------------------------------------------------------------------
# Kernel density estimation (Gaussian kernel, Silverman bandwidth)


def silverman_bandwidth(values) -> float:
    values = np.asarray(values, dtype=float)
    sigma = float(values.std(ddof=1))
    if sigma == 0:
        raise ValueError("zero spread: density degenerates to a point mass")
    return 1.06 * sigma * len(values) ** (-0.2)


def kde(values, grid) -> np.ndarray:
    """Gaussian-kernel density of the samples evaluated at the grid points."""
    values = np.asarray(values, dtype=float)
    grid = np.asarray(grid, dtype=float)
    if len(values) < 2:
        raise ValueError("kde needs at least 2 samples")
    h = silverman_bandwidth(values)
    z = (grid[:, None] - values[None, :]) / h
    return np.exp(-0.5 * z * z).sum(axis=1) / (len(values) * h * math.sqrt(2.0 * math.pi))


def density_grid(*value_sets, points: int = 512) -> np.ndarray:
    """Shared evaluation grid spanning all samples plus 3 bandwidths of margin."""
    bandwidths = [silverman_bandwidth(v) for v in value_sets]
    lo = min(float(np.min(v)) for v in value_sets) - 3.0 * max(bandwidths)
    hi = max(float(np.max(v)) for v in value_sets) + 3.0 * max(bandwidths)
    return np.linspace(lo, hi, points)


def overlap_coefficient(values_a, values_b, points: int = 512) -> float:
    """Integral of min(f_a, f_b) over a shared grid; 1 means identical densities."""
    grid = density_grid(values_a, values_b, points=points)
    fa = kde(values_a, grid)
    fb = kde(values_b, grid)
    return float(np.trapezoid(np.minimum(fa, fb), grid))


# ---------------------------------------------------------------------------
# End-to-end evaluation


@dataclass(frozen=True)
class EvalReport:
    algorithm: str
    seed: int
    confusion: ConfusionMatrix
    accuracy: float
    f1_class0: float
    f1_class1: float
    cv_accuracies: tuple[float, ...]
    importance: tuple[float, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "seed": self.seed,
            "confusion": {
                "tp": self.confusion.tp,
                "fp": self.confusion.fp,
                "fn": self.confusion.fn,
                "tn": self.confusion.tn,
            },
            "accuracy": self.accuracy,
            "f1": {"class0": self.f1_class0, "class1": self.f1_class1},
            "cv_accuracies": list(self.cv_accuracies),
            "importance": None if self.importance is None else list(self.importance),
        }

    def to_json(self, extra: dict | None = None) -> str:
        doc = self.to_dict()
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(
            algorithm=d["algorithm"],
            seed=d["seed"],
            confusion=ConfusionMatrix(**d["confusion"]),
            accuracy=d["accuracy"],
            f1_class0=d["f1"]["class0"],
            f1_class1=d["f1"]["class1"],
            cv_accuracies=tuple(d["cv_accuracies"]),
            importance=None if d["importance"] is None else tuple(d["importance"]),
        )


def cross_validate(X, y, cfg: ml.TrainConfig, k: int = 10, seed: int = 0) -> np.ndarray:
    """Per-fold validation accuracies; each fold refits its own standardizer."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    accuracies = []
    for train_idx, val_idx in kfold(y, k=k, seed=seed):
        scaler = standardize_fit(X[train_idx])
        model = ml.train(standardize_apply(scaler, X[train_idx]), y[train_idx], cfg)
        pred = ml.predict(model, standardize_apply(scaler, X[val_idx]))
        accuracies.append(accuracy(ConfusionMatrix.from_labels(y[val_idx], pred)))
    return np.array(accuracies)


def evaluate(
    X,
    y,
    cfg: ml.TrainConfig,
    seed: int = 0,
    train_fraction: float = 0.75,
    cv_folds: int = 10,
) -> EvalReport:
    """Split, standardize, train, and score one classifier.

    Pipeline: stratified holdout split -> standardizer fit on train ->
    train -> predict on standardized test -> metrics.  CV accuracies come
    from stratified folds inside the training portion.  Random forests also
    report impurity-based feature importance.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    train_idx, test_idx = train_test_split(y, train_fraction, seed)
    scaler = standardize_fit(X[train_idx])
    model = ml.train(standardize_apply(scaler, X[train_idx]), y[train_idx], cfg)
    pred = ml.predict(model, standardize_apply(scaler, X[test_idx]))
    cm = ConfusionMatrix.from_labels(y[test_idx], pred)
    cv = cross_validate(
        X[train_idx], y[train_idx], cfg, k=cv_folds, seed=derive_seed(seed, "cv")
    )
    importance = None
    if cfg.algorithm == "rf":
        importance = tuple(float(v) for v in ml.mdi_importance(model))
    return EvalReport(
        algorithm=cfg.algorithm,
        seed=seed,
        confusion=cm,
        accuracy=accuracy(cm),
        f1_class0=f1(cm, positive_class=0),
        f1_class1=f1(cm, positive_class=1),
        cv_accuracies=tuple(float(a) for a in cv),
        importance=importance,
    )


def write_kde_csv(X, y, feature_names, feature_indices, dest, points: int = 256,
                  comments: dict | None = None):
    """Class-conditional KDE curves as CSV rows `feature,class,x,density`."""
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    if isinstance(dest, (str, Path)):
        with open(dest, "w", encoding="utf-8", newline="\n") as fh:
            write_kde_csv(X, y, feature_names, feature_indices, fh, points, comments)
        return
    for key, value in (comments or {}).items():
        dest.write(f"# {key}={value}\n")
    dest.write("feature,class,x,density\n")
    for idx in feature_indices:
        name = feature_names[idx]
        per_class = [X[y == cls, idx] for cls in (0, 1)]
        try:
            grid = density_grid(*per_class, points=points)
        except ValueError:
            # degenerate column: all values identical within a class
            for cls, values in zip((0, 1), per_class):
                if len(values) and float(np.ptp(values)) == 0.0:
                    dest.write(f"# {name} class {cls}: point mass at {float(values[0])!r}\n")
            continue
        for cls, values in zip((0, 1), per_class):
            density = kde(values, grid)
            for gx, d in zip(grid, density):
                dest.write(f"{name},{cls},{float(gx)!r},{float(d)!r}\n")

"""Random forest of Gini trees with impurity-based feature importance."""

import math

import numpy as np

from .._seeds import generator
from .tree import DecisionTree


class RandomForest:
    """Bagged Gini trees; majority vote with even-vote ties going to class 0.

    max_features="sqrt" (the default) samples floor(sqrt(n_features))
    candidate features per split.  Each tree draws its bootstrap sample and
    feature subsets from a stream keyed by (seed, tree index), so training
    could run per-tree in parallel without changing the result.
    """

    def __init__(
        self,
        n_trees=100,
        max_features="sqrt",
        bootstrap=True,
        min_samples_split=2,
        max_depth=None,
        seed=0,
    ):
        if n_trees < 1:
            raise ValueError("n_trees must be >= 1")
        self.n_trees = n_trees
        self.max_features = max_features
        self.bootstrap = bootstrap
        self.min_samples_split = min_samples_split
        self.max_depth = max_depth
        self.seed = seed
        self.trees_ = None
        self.n_features_ = None

    def _resolved_max_features(self, n_features):
        if self.max_features == "sqrt":
            return max(1, math.floor(math.sqrt(n_features)))
        if self.max_features is None:
            return n_features
        return int(self.max_features)

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        n = len(y)
        self.n_features_ = X.shape[1]
        max_features = self._resolved_max_features(self.n_features_)
        self.trees_ = []
        for t in range(self.n_trees):
            rng = generator(self.seed, "rf-tree", t)
            idx = rng.integers(0, n, size=n) if self.bootstrap else np.arange(n)
            tree = DecisionTree(
                min_samples_split=self.min_samples_split,
                max_depth=self.max_depth,
                max_features=max_features,
            )
            tree.fit(X[idx], y[idx], rng=rng)
            self.trees_.append(tree)
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[1] != self.n_features_:
            raise ValueError(f"expected {self.n_features_} features, got {X.shape[1]}")
        votes = np.zeros(len(X), dtype=int)
        for tree in self.trees_:
            votes += tree.predict(X)
        # strict majority for class 1; an exact tie falls back to class 0
        return (2 * votes > self.n_trees).astype(int)


def mdi_importance(model: RandomForest) -> np.ndarray:
    """Mean-decrease-of-impurity feature importance of a trained forest.

    Per tree, each split contributes its sample-weighted impurity decrease to
    the split feature; per-tree totals are normalized, averaged over trees,
    and the result normalized to sum to 1.
    """
    if not isinstance(model, RandomForest):
        raise ValueError("mdi_importance requires a RandomForest model")
    if not model.trees_:
        raise ValueError("model is not trained")
    acc = np.zeros(model.n_features_)
    for tree in model.trees_:
        totals = tree.decrease_by_feature()
        tree_sum = totals.sum()
        if tree_sum > 0:
            acc += totals / tree_sum
    grand = acc.sum()
    if grand == 0:
        raise ValueError("forest contains no splits; importance undefined")
    return acc / grand

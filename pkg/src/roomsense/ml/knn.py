"""k-nearest-neighbors classifier over Euclidean distance."""

import numpy as np


class KNearestNeighbors:
    """Majority vote among the k nearest training rows.

    k must be odd so a binary vote cannot tie.  Equal distances at the k-th
    neighbor break toward the lower training-row index (stable sort).
    """

    def __init__(self, k=5):
        if k < 1 or k % 2 == 0:
            raise ValueError(f"k must be odd and >= 1, got {k}")
        self.k = k
        self.X_ = None
        self.y_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        if self.k > len(y):
            raise ValueError(f"k={self.k} exceeds the {len(y)} training samples")
        self.X_ = X.copy()
        self.y_ = y.copy()
        return self

    def predict(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[1] != self.X_.shape[1]:
            raise ValueError(f"expected {self.X_.shape[1]} features, got {X.shape[1]}")
        diff = X[:, None, :] - self.X_[None, :, :]
        dist = np.sqrt((diff * diff).sum(axis=2))
        nearest = np.argsort(dist, axis=1, kind="stable")[:, : self.k]
        out = np.empty(len(X), dtype=int)
        for i, idx in enumerate(nearest):
            out[i] = int(np.argmax(np.bincount(self.y_[idx], minlength=2)))
        return out

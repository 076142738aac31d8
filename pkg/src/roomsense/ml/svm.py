"""RBF-kernel support vector machine trained with simplified SMO."""

import numpy as np

from .._seeds import generator


def rbf_kernel(A, B, gamma):
    """exp(-gamma * ||a - b||^2) for every row pair of A and B."""
    sq = (
        np.sum(A * A, axis=1)[:, None]
        + np.sum(B * B, axis=1)[None, :]
        - 2.0 * (A @ B.T)
    )
    return np.exp(-gamma * np.maximum(sq, 0.0))


class SupportVectorMachine:
    """Binary SVM with an RBF kernel, optimized pairwise (simplified SMO).

    Training stops after max_passes consecutive full sweeps without an alpha
    update (with a hard sweep cap as a safety net).  gamma=None scales as
    1 / (n_features * var(X)).  A decision value of exactly 0 classifies as
    class 0.
    """

    def __init__(self, c=1.0, gamma=None, tol=1e-3, max_passes=10, seed=0, max_sweeps=1000):
        if c <= 0:
            raise ValueError("c must be > 0")
        self.c = c
        self.gamma = gamma
        self.tol = tol
        self.max_passes = max_passes
        self.max_sweeps = max_sweeps
        self.seed = seed
        self.X_ = None
        self.y_signed_ = None
        self.alphas_ = None
        self.bias_ = None
        self.gamma_ = None

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=int)
        n = len(y)
        y_signed = np.where(y == 1, 1.0, -1.0)

        gamma = self.gamma
        if gamma is None:
            spread = float(X.var())
            gamma = 1.0 / (X.shape[1] * spread) if spread > 0 else 1.0 / X.shape[1]

        K = rbf_kernel(X, X, gamma)
        alphas = np.zeros(n)
        b = 0.0
        rng = generator(self.seed, "svm")
        C, tol = self.c, self.tol

        def f(i):
            return float((alphas * y_signed) @ K[:, i] + b)

        passes = 0
        sweeps = 0
        while passes < self.max_passes and sweeps < self.max_sweeps:
            changed = 0
            for i in range(n):
                E_i = f(i) - y_signed[i]
                r_i = y_signed[i] * E_i
                if not ((r_i < -tol and alphas[i] < C) or (r_i > tol and alphas[i] > 0)):
                    continue
                j = int(rng.integers(n - 1))
                if j >= i:
                    j += 1
                E_j = f(j) - y_signed[j]
                a_i_old, a_j_old = alphas[i], alphas[j]
                if y_signed[i] != y_signed[j]:
                    L = max(0.0, a_j_old - a_i_old)
                    H = min(C, C + a_j_old - a_i_old)
                else:
                    L = max(0.0, a_i_old + a_j_old - C)
                    H = min(C, a_i_old + a_j_old)
                if L == H:
                    continue
                eta = 2.0 * K[i, j] - K[i, i] - K[j, j]
                if eta >= 0:
                    continue
                a_j = a_j_old - y_signed[j] * (E_i - E_j) / eta
                a_j = min(H, max(L, a_j))
                if abs(a_j - a_j_old) < 1e-5:
                    continue
                a_i = a_i_old + y_signed[i] * y_signed[j] * (a_j_old - a_j)
                b1 = (
                    b
                    - E_i
                    - y_signed[i] * (a_i - a_i_old) * K[i, i]
                    - y_signed[j] * (a_j - a_j_old) * K[i, j]
                )
                b2 = (
                    b
                    - E_j
                    - y_signed[i] * (a_i - a_i_old) * K[i, j]
                    - y_signed[j] * (a_j - a_j_old) * K[j, j]
                )
                if 0 < a_i < C:
                    b = b1
                elif 0 < a_j < C:
                    b = b2
                else:
                    b = (b1 + b2) / 2.0
                alphas[i], alphas[j] = a_i, a_j
                changed += 1
            passes = passes + 1 if changed == 0 else 0
            sweeps += 1

        self.X_ = X
        self.y_signed_ = y_signed
        self.alphas_ = alphas
        self.bias_ = float(b)
        self.gamma_ = float(gamma)
        return self

    @property
    def support_mask_(self):
        return self.alphas_ > 1e-12

    def decision_function(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[1] != self.X_.shape[1]:
            raise ValueError(f"expected {self.X_.shape[1]} features, got {X.shape[1]}")
        mask = self.support_mask_
        if not mask.any():
            return np.full(len(X), self.bias_)
        K = rbf_kernel(self.X_[mask], X, self.gamma_)
        return (self.alphas_[mask] * self.y_signed_[mask]) @ K + self.bias_

    def predict(self, X):
        return (self.decision_function(X) > 0).astype(int)

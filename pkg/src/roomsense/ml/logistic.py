"""Logistic regression trained by batch gradient descent."""

import numpy as np


def _sigmoid(z):
    return 1.0 / (1.0 + np.exp(-np.clip(z, -500, 500)))


class LogisticRegression:
    """Unregularized batch gradient descent on mean cross-entropy.

    loss_history_ holds the loss before training and after every step
    (iterations + 1 values).  A probability of exactly 0.5 classifies as 1.
    """

    def __init__(self, learning_rate=0.1, iterations=1000):
        if iterations < 1:
            raise ValueError("iterations must be >= 1")
        if learning_rate <= 0:
            raise ValueError("learning_rate must be > 0")
        self.learning_rate = learning_rate
        self.iterations = iterations
        self.weights_ = None
        self.bias_ = None
        self.loss_history_ = None

    @staticmethod
    def _loss(z, y):
        # mean cross-entropy via logaddexp, stable for large |z|
        return float(np.mean(np.logaddexp(0.0, z) - y * z))

    def fit(self, X, y):
        X = np.asarray(X, dtype=float)
        y = np.asarray(y, dtype=float)
        n, d = X.shape
        w = np.zeros(d)
        b = 0.0
        history = []
        for _ in range(self.iterations):
            z = X @ w + b
            history.append(self._loss(z, y))
            residual = _sigmoid(z) - y
            w -= self.learning_rate * (X.T @ residual) / n
            b -= self.learning_rate * float(np.mean(residual))
        history.append(self._loss(X @ w + b, y))
        self.weights_ = w
        self.bias_ = b
        self.loss_history_ = np.array(history)
        return self

    def decision_function(self, X):
        X = np.asarray(X, dtype=float)
        if X.shape[1] != len(self.weights_):
            raise ValueError(f"expected {len(self.weights_)} features, got {X.shape[1]}")
        return X @ self.weights_ + self.bias_

    def predict(self, X):
        return (_sigmoid(self.decision_function(X)) >= 0.5).astype(int)

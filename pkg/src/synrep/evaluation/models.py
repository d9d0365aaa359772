"""Linear classifiers and validation-based model selection."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, clone
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.utils.multiclass import unique_labels
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y


def _spectral_norm_sq(X: np.ndarray, n_iter: int = 50) -> float:
    """Upper estimate of the largest eigenvalue of ``X.T @ X`` (power iteration)."""
    v = np.ones(X.shape[1]) / np.sqrt(X.shape[1])
    lam = 0.0
    for _ in range(n_iter):
        w = X.T @ (X @ v)
        lam = float(np.linalg.norm(w))
        if lam == 0:
            return 0.0
        v = w / lam
    return lam * 1.05


def _softmax(Z: np.ndarray) -> np.ndarray:
    Z = Z - Z.max(axis=1, keepdims=True)
    np.exp(Z, out=Z)
    Z /= Z.sum(axis=1, keepdims=True)
    return Z


class _LinearClassifier(ClassifierMixin, BaseEstimator):
    def _prepare(self, X, y):
        X, y = check_X_y(X, y, dtype=np.float64)
        self.classes_ = unique_labels(y)
        if len(self.classes_) < 2:
            raise ValueError(f"need at least 2 classes in the training data, got {len(self.classes_)}")
        self.n_features_in_ = X.shape[1]
        return X, np.searchsorted(self.classes_, y)

    def decision_function(self, X):
        check_is_fitted(self, "coef_")
        X = check_array(X, dtype=np.float64)
        scores = X @ self.coef_.T + self.intercept_
        return scores[:, 0] if scores.shape[1] == 1 else scores

    def predict(self, X):
        scores = self.decision_function(X)
        if scores.ndim == 1:
            return self.classes_[(scores > 0).astype(int)]
        return self.classes_[np.argmax(scores, axis=1)]


class SoftmaxRegression(_LinearClassifier):
    """Multinomial logistic regression, L2-penalised, full-batch accelerated GD.

    Minimises ``mean cross-entropy + alpha/2 * ||W||^2`` (bias unpenalised)
    with Nesterov momentum and a constant step ``1/L`` from the loss's
    Lipschitz bound. Deterministic: zero initialisation, no sampling.
    """

    loss = "logistic"

    def __init__(self, alpha=1e-3, max_iter=300, tol=1e-7):
        self.alpha = alpha
        self.max_iter = max_iter
        self.tol = tol

    def _objective(self, Xb, Y, W):
        Z = Xb @ W
        Z -= Z.max(axis=1, keepdims=True)
        logp = Z - np.log(np.exp(Z).sum(axis=1, keepdims=True))
        return -np.mean(np.sum(Y * logp, axis=1)) + 0.5 * self.alpha * np.sum(W[:-1] ** 2)

    def fit(self, X, y):
        X, yi = self._prepare(X, y)
        n, d = X.shape
        k = len(self.classes_)
        Xb = np.hstack([X, np.ones((n, 1))])
        Y = np.eye(k)[yi]
        step = 1.0 / (0.5 * _spectral_norm_sq(Xb) / n + self.alpha)
        mask = np.ones((d + 1, 1))
        mask[-1] = 0.0

        W = np.zeros((d + 1, k))
        V = W.copy()
        prev = np.inf
        t = 1.0
        self.n_iter_ = 0
        for it in range(1, self.max_iter + 1):
            P = _softmax(Xb @ V)
            grad = Xb.T @ (P - Y) / n + self.alpha * mask * V
            W_next = V - step * grad
            t_next = (1 + np.sqrt(1 + 4 * t * t)) / 2
            V = W_next + ((t - 1) / t_next) * (W_next - W)
            W, t = W_next, t_next
            self.n_iter_ = it
            if it % 10 == 0 or it == self.max_iter:
                obj = self._objective(Xb, Y, W)
                if not np.isfinite(obj):
                    raise FloatingPointError(
                        f"non-finite loss at iteration {it} (alpha={self.alpha}, step={step:.3g}, "
                        f"max|W|={np.abs(W).max():.3g})"
                    )
                if abs(prev - obj) <= self.tol * max(1.0, abs(obj)):
                    break
                prev = obj
        self.loss_ = float(self._objective(Xb, Y, W))
        coef = W[:-1].T
        intercept = W[-1]
        if k == 2:
            coef = (coef[1] - coef[0])[None, :]
            intercept = np.array([intercept[1] - intercept[0]])
        self.coef_ = coef
        self.intercept_ = intercept
        return self


class LinearSVM(_LinearClassifier):
    """One-vs-rest linear SVM (hinge + L2) trained with mini-batch Pegasos SGD.

    The bias is an extra constant feature. The averaged iterate over the
    final half of the updates is returned.
    """

    loss = "hinge"

    def __init__(self, alpha=1e-4, epochs=20, batch_size=16, random_state=0):
        self.alpha = alpha
        self.epochs = epochs
        self.batch_size = batch_size
        self.random_state = random_state

    def fit(self, X, y):
        X, yi = self._prepare(X, y)
        n, d = X.shape
        k = len(self.classes_)
        heads = 1 if k == 2 else k
        Xb = np.hstack([X, np.ones((n, 1))])
        if heads == 1:
            Y = np.where(yi == 1, 1.0, -1.0)[:, None]
        else:
            Y = np.where(np.arange(k)[None, :] == yi[:, None], 1.0, -1.0)

        rng = np.random.default_rng(self.random_state)
        W = np.zeros((d + 1, heads))
        W_avg = np.zeros_like(W)
        radius = 1.0 / np.sqrt(self.alpha)
        total = self.epochs * int(np.ceil(n / self.batch_size))
        start_avg = total // 2
        n_avg = 0
        t = 0
        for _ in range(self.epochs):
            order = rng.permutation(n)
            for s in range(0, n, self.batch_size):
                idx = order[s : s + self.batch_size]
                t += 1
                eta = 1.0 / (self.alpha * t)
                margins = Y[idx] * (Xb[idx] @ W)
                active = (margins < 1.0) * Y[idx]
                W *= 1.0 - eta * self.alpha
                W += (eta / len(idx)) * (Xb[idx].T @ active)
                norms = np.linalg.norm(W, axis=0)
                scale = np.minimum(1.0, radius / np.maximum(norms, 1e-300))
                W *= scale
                if t > start_avg:
                    n_avg += 1
                    W_avg += (W - W_avg) / n_avg
        if not np.all(np.isfinite(W_avg)):
            raise FloatingPointError(f"non-finite weights (alpha={self.alpha})")
        self.coef_ = W_avg[:-1].T.copy()
        self.intercept_ = W_avg[-1].copy()
        return self


def default_grid(random_state: int = 0) -> list[tuple[str, BaseEstimator]]:
    """Standardised features followed by each candidate classifier."""
    grid = []
    for a in (1e-4, 1e-3, 1e-2, 1e-1):
        grid.append((f"logreg(alpha={a:g})", make_pipeline(StandardScaler(), SoftmaxRegression(alpha=a))))
    for a in (1e-4, 1e-3, 1e-2):
        grid.append((f"svm(alpha={a:g})", make_pipeline(StandardScaler(), LinearSVM(alpha=a, random_state=random_state))))
    return grid


@dataclass
class SelectedModel:
    name: str
    estimator: BaseEstimator
    validation_accuracy: float
    scores: dict[str, float] = field(default_factory=dict)

    def predict(self, X):
        return self.estimator.predict(X)


def train_linear(model_spec, train, validation) -> SelectedModel:
    """Fit every candidate on ``train`` and keep the validation-best one.

    ``model_spec`` is a list of ``(name, estimator)`` pairs (or ``None`` for
    :func:`default_grid`). Ties go to the earlier candidate. With an empty
    validation split the first candidate is used.
    """
    X_tr, y_tr = train
    X_val, y_val = validation
    if len(np.unique(y_tr)) < 2:
        raise ValueError("training split contains a single class")
    candidates = default_grid() if model_spec is None else list(model_spec)
    if not candidates:
        raise ValueError("no candidate models")
    best = None
    scores = {}
    for name, est in candidates:
        fitted = clone(est).fit(X_tr, y_tr)
        acc = float(np.mean(fitted.predict(X_val) == y_val)) if len(y_val) else 0.0
        scores[name] = acc
        if best is None or acc > best.validation_accuracy:
            best = SelectedModel(name, fitted, acc)
        if not len(y_val):
            break
    best.scores = scores
    return best

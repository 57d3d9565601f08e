"""Minimal two-layer feed-forward binary classifier, trained from scratch.

Forward pass: ``sigmoid(w2 . leaky_relu(W1 x + b1) + b2)``. Weights use He
normal initialisation (standard deviation ``sqrt(2 / fan_in)``), biases
start at zero. Training performs full-batch gradient steps on the mean
weighted binary cross-entropy; one "epoch" is one Adam step over the whole
batch, which makes single-example incremental updates and multi-epoch
retraining the same code path.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import expit

# probability clamp that keeps log() in the cross-entropy finite
PROB_EPS = 1e-7


class NumericalError(FloatingPointError):
    """A gradient turned non-finite; the pending update was discarded."""


def he_std(fan_in: int) -> float:
    return math.sqrt(2.0 / fan_in)


def leaky_relu(z, slope: float = 0.01):
    return np.where(z >= 0.0, z, slope * z)


def weighted_bce(y, p, weight=1.0):
    """Weighted binary cross-entropy, elementwise; ``p`` is clamped."""
    y = np.asarray(y, dtype=float)
    p = np.clip(p, PROB_EPS, 1.0 - PROB_EPS)
    return weight * -(y * np.log(p) + (1.0 - y) * np.log1p(-p))


class Adam:
    """Adam with bias correction over a dict of parameter arrays.

    Updates the arrays in place; ``t`` counts optimizer steps since init.
    """

    def __init__(self, params: dict, learning_rate: float = 0.01,
                 beta1: float = 0.9, beta2: float = 0.999, eps: float = 1e-8):
        self.params = params
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.eps = eps
        self.t = 0
        self.m = {k: np.zeros_like(v) for k, v in params.items()}
        self.v = {k: np.zeros_like(v) for k, v in params.items()}

    def step(self, grads: dict) -> None:
        self.t += 1
        c1 = 1.0 - self.beta1 ** self.t
        c2 = 1.0 - self.beta2 ** self.t
        for name, p in self.params.items():
            g = grads[name]
            m = self.m[name]
            v = self.v[name]
            m *= self.beta1
            m += (1.0 - self.beta1) * g
            v *= self.beta2
            v += (1.0 - self.beta2) * (g * g)
            p -= self.learning_rate * (m / c1) / (np.sqrt(v / c2) + self.eps)


class BinaryMLP:
    """One hidden layer (leaky ReLU), sigmoid output, Adam optimizer."""

    def __init__(self, n_inputs: int = 2, hidden_units: int = 8,
                 leaky_slope: float = 0.01, learning_rate: float = 0.01,
                 rng=None):
        self.n_inputs = n_inputs
        self.hidden_units = hidden_units
        self.leaky_slope = leaky_slope
        self.learning_rate = learning_rate
        self.reinitialize(np.random.default_rng(rng))

    def reinitialize(self, rng: np.random.Generator) -> None:
        """Draw fresh He-normal weights and reset the optimizer state."""
        self.params = {
            "w1": rng.normal(0.0, he_std(self.n_inputs), (self.hidden_units, self.n_inputs)),
            "b1": np.zeros(self.hidden_units),
            "w2": rng.normal(0.0, he_std(self.hidden_units), self.hidden_units),
            "b2": np.zeros(1),
        }
        self.opt = Adam(self.params, self.learning_rate)

    # -- inference ---------------------------------------------------------

    def forward(self, X: np.ndarray) -> np.ndarray:
        """Probabilities of the positive class for a batch X of shape (n, d)."""
        Z1 = X @ self.params["w1"].T + self.params["b1"]
        A1 = leaky_relu(Z1, self.leaky_slope)
        z2 = A1 @ self.params["w2"] + self.params["b2"][0]
        return expit(z2)

    def forward_one(self, x: np.ndarray) -> float:
        z1 = self.params["w1"] @ x + self.params["b1"]
        a1 = leaky_relu(z1, self.leaky_slope)
        z2 = self.params["w2"] @ a1 + self.params["b2"][0]
        return float(expit(z2))

    # -- training ----------------------------------------------------------

    def batch_loss(self, X, y, sample_weight=None) -> float:
        """Mean weighted cross-entropy over the batch."""
        X, y, w = self._as_batch(X, y, sample_weight)
        return float(np.mean(weighted_bce(y, self.forward(X), w)))

    def gradients(self, X, y, sample_weight=None) -> dict:
        """Backprop gradients of the mean weighted cross-entropy."""
        X, y, w = self._as_batch(X, y, sample_weight)
        return self._grads(X, y, w)

    def _grads(self, X, y, w) -> dict:
        n = len(y)
        Z1 = X @ self.params["w1"].T + self.params["b1"]
        A1 = leaky_relu(Z1, self.leaky_slope)
        z2 = A1 @ self.params["w2"] + self.params["b2"][0]
        p = expit(z2)

        dz2 = w * (p - y) / n
        gw2 = A1.T @ dz2
        gb2 = np.array([dz2.sum()])
        dA1 = np.outer(dz2, self.params["w2"])
        dZ1 = dA1 * np.where(Z1 >= 0.0, 1.0, self.leaky_slope)
        gw1 = dZ1.T @ X
        gb1 = dZ1.sum(axis=0)
        return {"w1": gw1, "b1": gb1, "w2": gw2, "b2": gb2}

    def train(self, X, y, sample_weight=None, epochs: int = 1) -> "BinaryMLP":
        """Run ``epochs`` full-batch Adam steps on the given batch."""
        if epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {epochs}")
        X, y, w = self._as_batch(X, y, sample_weight)
        for _ in range(epochs):
            grads = self._grads(X, y, w)
            for g in grads.values():
                if not np.all(np.isfinite(g)):
                    raise NumericalError("non-finite gradient; update aborted")
            self.opt.step(grads)
        return self

    def _as_batch(self, X, y, sample_weight):
        X = np.asarray(X, dtype=float)
        if X.ndim != 2:
            raise ValueError(f"X must be 2-dimensional, got shape {X.shape}")
        y = np.asarray(y, dtype=float)
        if len(y) != len(X):
            raise ValueError("X and y lengths differ")
        if len(y) == 0:
            raise ValueError("training batch is empty")
        if sample_weight is None:
            w = np.ones(len(y))
        else:
            w = np.asarray(sample_weight, dtype=float)
            if w.ndim == 0:
                w = np.full(len(y), float(w))
            if np.any(w <= 0):
                raise ValueError("sample weights must be positive")
        return X, y, w

    # -- debugging aids ----------------------------------------------------

    def dump_parameters(self, path) -> None:
        """Flat ``layer,row,col,value`` text dump; format is not a stable contract."""
        with open(path, "w", encoding="utf-8") as fh:
            for i, j in np.ndindex(self.params["w1"].shape):
                fh.write(f"w1,{i},{j},{self.params['w1'][i, j]:.17g}\n")
            for i, v in enumerate(self.params["b1"]):
                fh.write(f"b1,{i},0,{v:.17g}\n")
            for j, v in enumerate(self.params["w2"]):
                fh.write(f"w2,0,{j},{v:.17g}\n")
            fh.write(f"b2,0,0,{self.params['b2'][0]:.17g}\n")

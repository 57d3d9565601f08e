"""Online binary classifiers for imbalanced, drifting streams.

One estimator hosts five method variants that differ only in their passive
update (what the incremental training set is), and each variant can run
with or without the active layer (the drift detector):

* ``baseline``: one-pass, trains on the most recent example only.
* ``sliding``: trains on a fixed sliding window of recent examples.
* ``adaptive_cs``: one-pass with an adaptive cost-sensitive loss weight.
* ``oob``: one-pass with Poisson-multiplicity oversampling of the minority.
* ``areba``: trains on the class-balanced adaptive dual queue.

The per-step protocol is prequential: predict first, then consume the true
label. ``step`` performs one such cycle and reports the prediction made
before the label was used; ``partial_fit`` applies it row by row, which is
how the estimator composes with scikit-learn tooling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .detector import DetectionEvent, DriftDetector, prediction_score
from .imbalance import ClassRates, CostSchedule, oversample_multiplicity
from .memory import DualQueue, SlidingWindowMemory
from .network import BinaryMLP
from .validation import check_binary_labels, check_feature_matrix

METHODS = ("baseline", "sliding", "adaptive_cs", "oob", "areba")


@dataclass
class StepReport:
    """Outcome of one prequential step."""

    y_pred: int
    proba: float
    event: DetectionEvent


class HybridStreamClassifier(BaseEstimator, ClassifierMixin):
    """Incremental neural classifier with optional threshold drift detection.

    Parameters
    ----------
    method : str, default="areba"
        Passive update variant, one of ``METHODS``.
    hybrid : bool, default=True
        Enable the active layer: score monitoring, warning/drift alarms,
        and full re-training on detected drift.
    budget : int, default=20
        Total dual-queue memory (``areba`` only); even, >= 2.
    window_size : int, default=1000
        Sliding window length (``sliding`` only).
    waiting_time : int, default=500
        Steps before the active layer starts scoring.
    expire_time : int, default=100
        Steps a warning may stay raised before it expires.
    scores_window : int, default=500
        Length of the 0/1 score window.
    drift_buffer : int, default=100
        Capacity of the warning-phase example buffer.
    beta_improve, beta_warn, beta_drift : float
        Threshold multipliers on the Binomial standard deviation.
    hidden_units, learning_rate, leaky_slope : network hyper-parameters.
    drift_epochs : int, default=50
        Full-batch epochs for post-drift re-training.
    rate_decay : float, default=0.99
        Decay of the faded class rates (``adaptive_cs`` and ``oob``).
    cost_refresh_every, cost_cap : cost schedule knobs (``adaptive_cs``).
    oversample_cap : float, default=100.0
        Clip on the Poisson oversampling rate (``oob``).
    random_state : int, Generator or None
        Seeds weight initialisation and the oversampling draws.

    Attributes
    ----------
    classes_ : ndarray of shape (2,)
        Always ``[0, 1]``.
    t_ : int
        Number of stream examples processed.
    events_ : list of (t, DetectionEvent)
        Every non-trivial detector event, in order.
    """

    def __init__(self, method="areba", hybrid=True, budget=20, window_size=1000,
                 waiting_time=500, expire_time=100, scores_window=500,
                 drift_buffer=100, beta_improve=2.5, beta_warn=3.0,
                 beta_drift=5.0, hidden_units=8, learning_rate=0.01,
                 leaky_slope=0.01, drift_epochs=50, rate_decay=0.99,
                 cost_refresh_every=250, cost_cap=50.0, oversample_cap=100.0,
                 random_state=None):
        self.method = method
        self.hybrid = hybrid
        self.budget = budget
        self.window_size = window_size
        self.waiting_time = waiting_time
        self.expire_time = expire_time
        self.scores_window = scores_window
        self.drift_buffer = drift_buffer
        self.beta_improve = beta_improve
        self.beta_warn = beta_warn
        self.beta_drift = beta_drift
        self.hidden_units = hidden_units
        self.learning_rate = learning_rate
        self.leaky_slope = leaky_slope
        self.drift_epochs = drift_epochs
        self.rate_decay = rate_decay
        self.cost_refresh_every = cost_refresh_every
        self.cost_cap = cost_cap
        self.oversample_cap = oversample_cap
        self.random_state = random_state

    # -- lifecycle -----------------------------------------------------------

    def _initialize(self, n_features: int) -> None:
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}; expected one of {METHODS}")
        self.n_features_in_ = n_features
        self.classes_ = np.array([0, 1])
        self.rng_ = np.random.default_rng(self.random_state)
        self.net_ = BinaryMLP(n_features, self.hidden_units, self.leaky_slope,
                              self.learning_rate, rng=self.rng_)
        self.detector_ = None
        if self.hybrid:
            self.detector_ = DriftDetector(
                self.scores_window, self.drift_buffer, self.expire_time,
                self.beta_improve, self.beta_warn, self.beta_drift,
            )
        self.memory_ = None
        self.rates_ = None
        self.cost_ = None
        if self.method == "areba":
            self.memory_ = DualQueue(self.budget)
        elif self.method == "sliding":
            self.memory_ = SlidingWindowMemory(self.window_size, n_features)
        elif self.method == "adaptive_cs":
            self.rates_ = ClassRates(self.rate_decay)
            self.cost_ = CostSchedule(self.cost_refresh_every, self.cost_cap)
        elif self.method == "oob":
            self.rates_ = ClassRates(self.rate_decay)
        self.t_ = 0
        self.events_ = []

    def _ensure_initialized(self, n_features: int) -> None:
        if not hasattr(self, "net_"):
            self._initialize(n_features)
        elif n_features != self.n_features_in_:
            raise ValueError(
                f"X has {n_features} features, but this estimator was initialised "
                f"with {self.n_features_in_}"
            )

    def __sklearn_is_fitted__(self) -> bool:
        return hasattr(self, "net_")

    # -- scikit-learn surface --------------------------------------------------

    def fit(self, X, y):
        """Discard any learned state and replay (X, y) as a fresh stream."""
        for attr in ("net_", "detector_", "memory_", "rates_", "cost_",
                     "rng_", "t_", "events_", "n_features_in_", "classes_"):
            if hasattr(self, attr):
                delattr(self, attr)
        return self.partial_fit(X, y)

    def partial_fit(self, X, y, classes=None):
        """Consume a chunk of the stream one example at a time, in order."""
        X = check_feature_matrix(X)
        y = check_binary_labels(y)
        if len(X) != len(y):
            raise ValueError("X and y lengths differ")
        if classes is not None and sorted(int(c) for c in classes) != [0, 1]:
            raise ValueError(f"classes must be [0, 1], got {classes}")
        self._ensure_initialized(X.shape[1])
        for xi, yi in zip(X, y):
            self._step(xi, int(yi))
        return self

    def predict_proba(self, X) -> np.ndarray:
        X = check_feature_matrix(X)
        self._ensure_initialized(X.shape[1])
        p = self.net_.forward(X)
        return np.column_stack([1.0 - p, p])

    def predict(self, X) -> np.ndarray:
        # ties at 0.5 go to the positive class
        return (self.predict_proba(X)[:, 1] >= 0.5).astype(int)

    # -- streaming surface -----------------------------------------------------

    def step(self, x, y: int) -> StepReport:
        """One prequential cycle: predict on x, then learn from (x, y)."""
        x = np.asarray(x, dtype=float).reshape(-1)
        self._ensure_initialized(x.shape[0])
        y = int(y)
        if y not in (0, 1):
            raise ValueError(f"label must be 0 or 1, got {y}")
        return self._step(x, y)

    def _step(self, x: np.ndarray, y: int) -> StepReport:
        t = self.t_ + 1
        proba = self.net_.forward_one(x)
        y_pred = 1 if proba >= 0.5 else 0

        event = DetectionEvent.NONE
        if self.detector_ is not None and t >= self.waiting_time:
            event = self.detector_.step(prediction_score(y, y_pred), (x, y), t)
            if event is DetectionEvent.DRIFT_DETECTED:
                self._respond_to_drift()

        # passive branch is suspended only while a warning is pending
        if t < self.waiting_time or self.detector_ is None or not self.detector_.warning:
            self._passive_update(x, y)

        self.t_ = t
        if event is not DetectionEvent.NONE:
            self.events_.append((t, event))
        return StepReport(y_pred, proba, event)

    def _respond_to_drift(self) -> None:
        """Replace the model, re-train on the warning buffer, reset memories."""
        self.net_.reinitialize(self.rng_)
        X, y = self.detector_.buffered_arrays()
        if len(y):
            # one example at a time, mini-batch size 1: a full-batch pass on
            # the heavily majority-skewed buffer would only learn the
            # majority class within the epoch budget
            for _ in range(self.drift_epochs):
                for i in range(len(y)):
                    self.net_.train(X[i : i + 1], y[i : i + 1])
        if self.method == "areba":
            self.memory_.reset()
        elif self.method == "sliding":
            self.memory_.clear()
        elif self.method in ("adaptive_cs", "oob"):
            self.rates_.reset()
            if self.cost_ is not None:
                self.cost_.reset()
        self.detector_.reset_after_drift()

    def _passive_update(self, x: np.ndarray, y: int) -> None:
        method = self.method
        if method == "baseline":
            self.net_.train(x[None, :], [y])
        elif method == "sliding":
            self.memory_.append(x, y)
            Xb, yb = self.memory_.arrays()
            self.net_.train(Xb, yb)
        elif method == "adaptive_cs":
            self.rates_.update(y)
            self.cost_.tick(self.rates_)
            self.net_.train(x[None, :], [y], sample_weight=self.cost_.weight(y))
        elif method == "oob":
            self.rates_.update(y)
            k = oversample_multiplicity(self.rates_, y, self.rng_, self.oversample_cap)
            if k > 0:
                self.net_.train(x[None, :], [y], epochs=k)
        else:  # areba
            self.memory_.append(x, y)
            Xb, yb = self.memory_.arrays()
            self.net_.train(Xb, yb)

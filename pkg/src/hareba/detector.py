"""Threshold-based concept drift detection over 0/1 prediction scores.

The detector keeps a sliding window of recent scores (1 for a correct
prediction, 0 for a mistake) and models the window mean as a Binomial
proportion: ``mu = p`` and ``sigma = sqrt(p (1 - p) / n)``. When the window
first fills, reference thresholds are frozen at

    theta_improve = mu + sigma * beta_improve
    theta_warn    = mu - sigma * beta_warn
    theta_drift   = mu - sigma * beta_drift

with beta_warn < beta_drift. From then on, each step compares the current
window mean against the frozen thresholds:

* mean >= theta_improve: the learner got better, so the reference level is
  re-frozen at the new stats and any pending warning is discarded.
* mean <= theta_warn (or a warning is already active): a warning phase is
  active; incoming examples are buffered as candidate training data for the
  post-drift model. A warning that lasts ``expire_time`` steps without a
  drift alarm expires and the buffer is dropped.
* mean <= theta_drift: drift alarm. The caller retrains on the buffered
  examples, then calls :meth:`DriftDetector.reset_after_drift`, which
  empties the detector so thresholds are re-frozen once the score window
  refills.

A step may both buffer a warning example and raise the drift alarm; the
drift alarm wins as the reported event.
"""

from __future__ import annotations

import math
from collections import deque
from enum import Enum

import numpy as np


class DetectionEvent(Enum):
    NONE = "none"
    IMPROVED = "improved"
    WARNING_RAISED = "warning_raised"
    WARNING_EXPIRED = "warning_expired"
    DRIFT_DETECTED = "drift_detected"


def prediction_score(y_true: int, y_pred: int) -> int:
    """The 0/1 score: 1 iff the prediction was right."""
    return 1 if y_true == y_pred else 0


def binomial_window_stats(score_sum: float, n: int) -> tuple[float, float]:
    p = score_sum / n
    return p, math.sqrt(p * (1.0 - p) / n)


def compute_thresholds(mu: float, sigma: float, beta_improve: float = 2.5,
                       beta_warn: float = 3.0, beta_drift: float = 5.0):
    return (
        mu + sigma * beta_improve,
        mu - sigma * beta_warn,
        mu - sigma * beta_drift,
    )


class DriftDetector:
    def __init__(self, scores_window: int = 500, drift_buffer: int = 100,
                 expire_time: int = 100, beta_improve: float = 2.5,
                 beta_warn: float = 3.0, beta_drift: float = 5.0):
        if beta_warn >= beta_drift:
            raise ValueError("beta_warn must be smaller than beta_drift")
        self.scores_window = scores_window
        self.expire_time = expire_time
        self.beta_improve = beta_improve
        self.beta_warn = beta_warn
        self.beta_drift = beta_drift
        self._scores: deque = deque(maxlen=scores_window)
        self._sum = 0  # integer running sum keeps the window mean exact
        self.examples: deque = deque(maxlen=drift_buffer)
        self.warning = False
        self._warn_started = 0
        self.thresholds_set = False
        self.frozen_mu = 0.0
        self.frozen_sigma = 0.0
        self.theta_improve = 0.0
        self.theta_warn = 0.0
        self.theta_drift = 0.0

    def window_stats(self) -> tuple[float, float]:
        if not self._scores:
            raise ValueError("score window is empty")
        return binomial_window_stats(self._sum, len(self._scores))

    def _freeze(self) -> None:
        self.frozen_mu, self.frozen_sigma = self.window_stats()
        # near-perfect windows freeze a vanishing sigma, which would let one
        # or two mistakes raise a drift alarm; keep the margin at a few
        # score flips no matter how lucky the frozen window was
        sigma = max(self.frozen_sigma, 2.0 / self.scores_window)
        self.theta_improve, self.theta_warn, self.theta_drift = compute_thresholds(
            self.frozen_mu, sigma,
            self.beta_improve, self.beta_warn, self.beta_drift,
        )
        self.thresholds_set = True

    def step(self, score: int, example, t: int) -> DetectionEvent:
        """Ingest one 0/1 score plus the (x, y) pair it came from.

        ``t`` is the caller's step index, used only for the warning-expiry
        clock. Returns the single event for this step.
        """
        if len(self._scores) == self.scores_window:
            self._sum -= self._scores[0]
        score = int(score)
        self._scores.append(score)
        self._sum += score
        if len(self._scores) < self.scores_window:
            return DetectionEvent.NONE
        if not self.thresholds_set:
            # first fill, or first refill after a drift reset
            self._freeze()

        mu = self._sum / self.scores_window
        if mu >= self.theta_improve:
            self._freeze()
            self.warning = False
            self.examples.clear()
            return DetectionEvent.IMPROVED

        event = DetectionEvent.NONE
        if mu <= self.theta_warn or self.warning:
            if not self.warning:
                self.warning = True
                self._warn_started = t
            self.examples.append(example)
            if t - self._warn_started >= self.expire_time:
                self.examples.clear()
                self.warning = False
                event = DetectionEvent.WARNING_EXPIRED
            else:
                event = DetectionEvent.WARNING_RAISED
        if mu <= self.theta_drift:
            # caller retrains on the buffer, then calls reset_after_drift()
            event = DetectionEvent.DRIFT_DETECTED
        return event

    def buffered_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Buffered warning-phase examples as (X, y) arrays, oldest first."""
        if not self.examples:
            return np.empty((0, 0)), np.empty(0)
        X = np.array([x for x, _ in self.examples])
        y = np.array([y for _, y in self.examples], dtype=float)
        return X, y

    def reset_after_drift(self) -> None:
        self._scores.clear()
        self._sum = 0
        self.examples.clear()
        self.warning = False
        self.thresholds_set = False

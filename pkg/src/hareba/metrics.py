"""Prequential evaluation metric: G-mean with fading factors."""

from __future__ import annotations

import math


class FadedGMean:
    """Geometric mean of recall and specificity over a fading horizon.

    Both classes' correct/total accumulators decay by ``fade`` every step
    (not just the observed class's), so performance on a class that stopped
    appearing fades out instead of pinning the metric to stale history.
    With ``fade = 1`` the metric reduces exactly to the batch G-mean of the
    cumulative confusion counts.
    """

    def __init__(self, fade: float = 0.99):
        if not 0.0 < fade <= 1.0:
            raise ValueError(f"fade must be in (0, 1], got {fade}")
        self.fade = fade
        self._correct = [0.0, 0.0]
        self._total = [0.0, 0.0]

    def update(self, y_true: int, y_pred: int) -> float:
        """Fold in one (label, prediction) pair; returns the current G-mean."""
        f = self.fade
        for k in (0, 1):
            self._correct[k] *= f
            self._total[k] *= f
        self._total[y_true] += 1.0
        if y_pred == y_true:
            self._correct[y_true] += 1.0
        return self.gmean

    @property
    def recall(self) -> float:
        return self._correct[1] / self._total[1] if self._total[1] > 0.0 else 0.0

    @property
    def specificity(self) -> float:
        return self._correct[0] / self._total[0] if self._total[0] > 0.0 else 0.0

    @property
    def gmean(self) -> float:
        # both classes must have been seen for the G-mean to be defined
        if self._total[0] <= 0.0 or self._total[1] <= 0.0:
            return 0.0
        return math.sqrt(self.recall * self.specificity)

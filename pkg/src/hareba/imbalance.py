"""Online class-imbalance machinery.

Time-decayed per-class occurrence rates estimate the current imbalance on
the fly; they drive both the adaptive cost-sensitive weighting and the
Poisson update-multiplicity rule used for online oversampling.
"""

from __future__ import annotations

import numpy as np


class ClassRates:
    """Exponentially faded occurrence rate of each class.

    Starting from the uninformative (0.5, 0.5) prior, every observed label
    moves the pair by a convex step, so the rates always stay on the
    simplex: ``positive + negative == 1``.
    """

    def __init__(self, decay: float = 0.99):
        if not 0.0 < decay < 1.0:
            raise ValueError(f"decay must be in (0, 1), got {decay}")
        self.decay = decay
        self.reset()

    def reset(self) -> None:
        self.positive = 0.5
        self.negative = 0.5

    def update(self, y: int) -> None:
        d = self.decay
        self.positive = d * self.positive + (1.0 - d) * (1.0 if y == 1 else 0.0)
        self.negative = d * self.negative + (1.0 - d) * (1.0 if y == 0 else 0.0)

    def rate(self, y: int) -> float:
        return self.positive if y == 1 else self.negative


class CostSchedule:
    """Per-class misclassification costs with a periodically refreshed ratio.

    Positive examples are weighted by the cost ratio, negative ones by 1.
    The ratio starts at gamma_positive / gamma_negative = 0.95 / 0.05 and is
    re-estimated from the observed class rates every ``refresh_every``
    steps, clipped into [1, cap] for stability.
    """

    def __init__(self, refresh_every: int = 250, cap: float = 50.0):
        if refresh_every < 1:
            raise ValueError("refresh_every must be positive")
        self.refresh_every = refresh_every
        self.cap = cap
        self.reset()

    def reset(self) -> None:
        self.gamma_positive = 0.95
        self.gamma_negative = 0.05
        self.ratio = self.gamma_positive / self.gamma_negative
        self._steps = 0

    def tick(self, rates: ClassRates) -> None:
        """Advance the refresh clock by one step; refresh on the cadence."""
        self._steps += 1
        if self._steps % self.refresh_every == 0:
            self.refresh(rates)

    def refresh(self, rates: ClassRates) -> None:
        if rates.positive <= 0.0:
            c = self.cap
        else:
            c = min(max(rates.negative / rates.positive, 1.0), self.cap)
        self.ratio = c
        self.gamma_positive = c / (1.0 + c)
        self.gamma_negative = 1.0 / (1.0 + c)

    def weight(self, y: int) -> float:
        return self.ratio if y == 1 else 1.0


def oversample_multiplicity(rates: ClassRates, y: int, rng: np.random.Generator,
                            cap: float = 100.0) -> int:
    """How many single-example updates one observation earns.

    The Poisson rate is the faded rate of the opposite class over the rate
    of the observed one, clipped into [1, cap]: minority examples trigger
    several updates, majority examples stay at expectation 1.
    """
    own = rates.rate(y)
    if own <= 0.0:
        lam = cap
    else:
        lam = min(max(rates.rate(1 - y) / own, 1.0), cap)
    return int(rng.poisson(lam))

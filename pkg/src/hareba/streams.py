"""Synthetic binary data streams with controllable class imbalance and an
abrupt concept swap.

Three classic benchmark tasks over the unit square: a circular positive
region, the region below one period of a sine curve, and a linear "sea"
threshold. Every stream draws the class label first (Bernoulli prior on the
positive class) and then rejection-samples the feature vector from the
matching region, so the configured prior holds exactly no matter how large
or small each class region is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

CIRCLE_CENTER = (0.4, 0.5)
CIRCLE_RADIUS = 0.2
SEA_THRESHOLD = 7.0

KINDS = ("circle", "sine", "sea")

# candidate draws allowed before a class region is declared unreachable
REJECTION_CAP = 1_000_000


class DegenerateConceptError(RuntimeError):
    """Rejection sampling could not hit the requested class region."""


def _circle_label(x1: float, x2: float) -> int:
    dx = x1 - CIRCLE_CENTER[0]
    dy = x2 - CIRCLE_CENTER[1]
    return 1 if dx * dx + dy * dy < CIRCLE_RADIUS * CIRCLE_RADIUS else 0


def _sine_label(x1: float, x2: float) -> int:
    # native ranges are x1 in [0, 2*pi], x2 in [-1, 1]; inputs arrive rescaled to [0, 1]
    return 1 if 2.0 * x2 - 1.0 < math.sin(2.0 * math.pi * x1) else 0


def _sea_label(x1: float, x2: float) -> int:
    # native range is [0, 10] per feature
    return 1 if 10.0 * x1 + 10.0 * x2 <= SEA_THRESHOLD else 0


_LABELERS = {"circle": _circle_label, "sine": _sine_label, "sea": _sea_label}


class Concept:
    """Labeling rule of one task, optionally with the concept swap applied.

    The swap inverts every label, which abruptly changes the posterior
    p(y | x) while leaving the feature space untouched.
    """

    def __init__(self, kind: str, swapped: bool = False):
        if kind not in _LABELERS:
            raise ValueError(f"unknown concept kind {kind!r}; expected one of {KINDS}")
        self.kind = kind
        self.swapped = bool(swapped)
        self._base = _LABELERS[kind]

    def label(self, x1: float, x2: float) -> int:
        y = self._base(x1, x2)
        return 1 - y if self.swapped else y

    def swap(self) -> "Concept":
        return Concept(self.kind, not self.swapped)

    def __repr__(self) -> str:
        return f"Concept({self.kind!r}, swapped={self.swapped})"


class Example(NamedTuple):
    t: int
    x: np.ndarray
    y: int


@dataclass(frozen=True)
class StreamConfig:
    """Full description of one reproducible stream.

    ``drift_step`` is the first step at which the swapped concept is in
    force; ``None`` disables the drift entirely.
    """

    kind: str = "circle"
    minority_rate: float = 0.10
    total_steps: int = 5000
    drift_step: int | None = 2501
    seed: int = 0

    def __post_init__(self):
        if self.kind not in _LABELERS:
            raise ValueError(f"unknown concept kind {self.kind!r}; expected one of {KINDS}")
        if not 0.0 < self.minority_rate <= 1.0:
            raise ValueError(f"minority_rate must be in (0, 1], got {self.minority_rate}")
        if self.total_steps < 1:
            raise ValueError("total_steps must be positive")
        if self.drift_step is not None and not 1 <= self.drift_step <= self.total_steps:
            raise ValueError(
                f"drift_step must be in [1, {self.total_steps}] or None, got {self.drift_step}"
            )


def _sample_from_class(concept: Concept, wanted: int, rng: np.random.Generator) -> np.ndarray:
    for _ in range(REJECTION_CAP):
        x = rng.random(2)
        if concept.label(x[0], x[1]) == wanted:
            return x
    raise DegenerateConceptError(
        f"no example of class {wanted} found for {concept!r} in {REJECTION_CAP} draws"
    )


def stream_examples(config: StreamConfig) -> Iterator[Example]:
    """Yield the stream one example at a time, deterministically per seed."""
    rng = np.random.default_rng(config.seed)
    base = Concept(config.kind)
    after = base.swap()
    for t in range(1, config.total_steps + 1):
        drifted = config.drift_step is not None and t >= config.drift_step
        concept = after if drifted else base
        y = 1 if rng.random() < config.minority_rate else 0
        x = _sample_from_class(concept, y, rng)
        yield Example(t, x, y)


def generate_arrays(config: StreamConfig) -> tuple[np.ndarray, np.ndarray]:
    """Materialize the whole stream as (X, y) arrays in step order."""
    X = np.empty((config.total_steps, 2))
    y = np.empty(config.total_steps, dtype=np.int64)
    for ex in stream_examples(config):
        X[ex.t - 1] = ex.x
        y[ex.t - 1] = ex.y
    return X, y


def write_stream_csv(config: StreamConfig, path) -> None:
    """Dump the stream, one ``t,x1,x2,y`` line per example, 17 significant digits."""
    with open(path, "w", encoding="utf-8") as fh:
        for t, x, y in stream_examples(config):
            fh.write(f"{t},{x[0]:.17g},{x[1]:.17g},{y}\n")

"""Training-set memories for the passive learners."""

from __future__ import annotations

from collections import deque

import numpy as np


class DualQueue:
    """Two per-class FIFO queues whose capacities track each other.

    After every append each capacity is recomputed as
    ``min(budget / 2, other_queue_length + 1)`` and the queues are trimmed
    from the oldest end, so neither class can outnumber the other by more
    than one example. Under a balanced stream both queues grow to
    budget / 2; under heavy imbalance the majority queue stays pinned just
    above the minority one instead of flooding the memory.
    """

    def __init__(self, budget: int = 20):
        if budget < 2 or budget % 2 != 0:
            raise ValueError(f"budget must be an even integer >= 2, got {budget}")
        self.budget = budget
        self._pos: deque = deque()
        self._neg: deque = deque()
        self.cap_positive = 1
        self.cap_negative = 1

    def append(self, x, y: int) -> None:
        x = np.asarray(x, dtype=float)
        if y == 1:
            self._pos.append(x)
        else:
            self._neg.append(x)
        half = self.budget // 2
        self.cap_positive = min(half, len(self._neg) + 1)
        self.cap_negative = min(half, len(self._pos) + 1)
        while len(self._pos) > self.cap_positive:
            self._pos.popleft()
        while len(self._neg) > self.cap_negative:
            self._neg.popleft()

    def reset(self) -> None:
        self._pos.clear()
        self._neg.clear()
        self.cap_positive = 1
        self.cap_negative = 1

    @property
    def n_positive(self) -> int:
        return len(self._pos)

    @property
    def n_negative(self) -> int:
        return len(self._neg)

    def __len__(self) -> int:
        return len(self._pos) + len(self._neg)

    def examples(self) -> list:
        """Stored (x, y) pairs, oldest first within class, positives first."""
        return [(x, 1) for x in self._pos] + [(x, 0) for x in self._neg]

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        n_pos, n_neg = len(self._pos), len(self._neg)
        X = np.array(list(self._pos) + list(self._neg))
        y = np.concatenate([np.ones(n_pos), np.zeros(n_neg)])
        return X, y


class SlidingWindowMemory:
    """Fixed-capacity FIFO over the most recent examples.

    Backed by circular numpy buffers so per-step batch extraction stays
    cheap even at capacity 1000.
    """

    def __init__(self, capacity: int = 1000, n_features: int = 2):
        if capacity < 1:
            raise ValueError("capacity must be positive")
        self.capacity = capacity
        self._X = np.empty((capacity, n_features))
        self._y = np.empty(capacity)
        self._head = 0  # next slot to write
        self._size = 0

    def append(self, x, y: int) -> None:
        self._X[self._head] = x
        self._y[self._head] = y
        self._head = (self._head + 1) % self.capacity
        self._size = min(self._size + 1, self.capacity)

    def clear(self) -> None:
        self._head = 0
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Window contents in arrival order, oldest first."""
        if self._size < self.capacity:
            return self._X[: self._size].copy(), self._y[: self._size].copy()
        return (
            np.concatenate([self._X[self._head :], self._X[: self._head]]),
            np.concatenate([self._y[self._head :], self._y[: self._head]]),
        )

    def examples(self) -> list:
        X, y = self.arrays()
        return [(X[i], int(y[i])) for i in range(len(y))]

"""Input-validation helpers shared by the estimator and the harness."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array, column_or_1d


def check_feature_matrix(X) -> np.ndarray:
    """Validate a 2-d float feature matrix (finite values only)."""
    return check_array(X, dtype=np.float64, ensure_2d=True)


def check_binary_labels(y) -> np.ndarray:
    """Validate labels as a 1-d integer array with values in {0, 1}."""
    y = column_or_1d(y, warn=False)
    y = np.asarray(y)
    values = np.unique(y)
    if not np.isin(values, (0, 1)).all():
        raise ValueError(f"labels must be binary in {{0, 1}}, got values {values}")
    return y.astype(int)

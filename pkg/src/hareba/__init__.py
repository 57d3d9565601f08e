"""Online classification of imbalanced, nonstationary data streams.

The package couples incremental (passive) learners with a threshold-based
drift detector (active layer), ships the classic circle/sine/sea synthetic
streams with controllable imbalance and an abrupt concept swap, and
evaluates everything prequentially with a faded G-mean.
"""

from .classifier import METHODS, HybridStreamClassifier, StepReport
from .detector import (
    DetectionEvent,
    DriftDetector,
    compute_thresholds,
    prediction_score,
)
from .experiment import (
    CellResult,
    ExperimentConfig,
    run_cell,
    run_comparison,
    summarize,
)
from .imbalance import ClassRates, CostSchedule, oversample_multiplicity
from .memory import DualQueue, SlidingWindowMemory
from .metrics import FadedGMean
from .network import Adam, BinaryMLP, NumericalError, weighted_bce
from .streams import (
    Concept,
    DegenerateConceptError,
    Example,
    StreamConfig,
    generate_arrays,
    stream_examples,
    write_stream_csv,
)

__version__ = "0.1.0"

__all__ = [
    "Adam",
    "BinaryMLP",
    "CellResult",
    "ClassRates",
    "Concept",
    "CostSchedule",
    "DegenerateConceptError",
    "DetectionEvent",
    "DriftDetector",
    "DualQueue",
    "Example",
    "ExperimentConfig",
    "FadedGMean",
    "HybridStreamClassifier",
    "METHODS",
    "NumericalError",
    "SlidingWindowMemory",
    "StepReport",
    "StreamConfig",
    "compute_thresholds",
    "generate_arrays",
    "oversample_multiplicity",
    "prediction_score",
    "run_cell",
    "run_comparison",
    "stream_examples",
    "summarize",
    "weighted_bce",
    "write_stream_csv",
]

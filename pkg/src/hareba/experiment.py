"""Experiment harness: run (dataset, method, hybrid, seed) cells, aggregate
repetitions into mean and standard error per step, and emit CSV / SVG.

Repetition ``r`` of a cell seeds both the stream and the learner with
``seed + r``, so re-running a cell is byte-identical and different methods
compared under the same base seed see exactly the same example sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np
from joblib import Parallel, delayed

from .classifier import METHODS, HybridStreamClassifier
from .detector import DetectionEvent
from .metrics import FadedGMean
from .streams import StreamConfig, generate_arrays


@dataclass(frozen=True)
class ExperimentConfig:
    dataset: str = "circle"
    imbalance: float = 0.10
    method: str = "areba"
    hybrid: bool = True
    steps: int = 5000
    drift_step: int | None = 2501
    reps: int = 20
    seed: int = 0
    budget: int = 20
    window: int = 1000
    waiting_time: int = 500
    expire_time: int = 100
    scores_window: int = 500
    drift_buffer: int = 100
    beta_improve: float = 2.5
    beta_warn: float = 3.0
    beta_drift: float = 5.0
    fade: float = 0.99

    def stream_config(self, rep: int) -> StreamConfig:
        return StreamConfig(
            kind=self.dataset,
            minority_rate=self.imbalance,
            total_steps=self.steps,
            drift_step=self.drift_step,
            seed=self.seed + rep,
        )

    def make_classifier(self, rep: int) -> HybridStreamClassifier:
        return HybridStreamClassifier(
            method=self.method,
            hybrid=self.hybrid,
            budget=self.budget,
            window_size=self.window,
            waiting_time=self.waiting_time,
            expire_time=self.expire_time,
            scores_window=self.scores_window,
            drift_buffer=self.drift_buffer,
            beta_improve=self.beta_improve,
            beta_warn=self.beta_warn,
            beta_drift=self.beta_drift,
            random_state=self.seed + rep,
        )


@dataclass
class CellResult:
    """Per-step G-mean matrix (reps x steps) plus per-rep event logs."""

    gmean: np.ndarray
    events: list = field(default_factory=list)


def _run_rep(config: ExperimentConfig, rep: int, stream=None):
    if stream is None:
        stream = generate_arrays(config.stream_config(rep))
    X, y = stream
    clf = config.make_classifier(rep)
    metric = FadedGMean(config.fade)
    trace = np.empty(len(y))
    events = []
    for i in range(len(y)):
        yi = int(y[i])
        report = clf.step(X[i], yi)
        trace[i] = metric.update(yi, report.y_pred)
        if report.event is not DetectionEvent.NONE:
            events.append((i + 1, report.event.value))
    return trace, events


def _collect(jobs, n_jobs: int) -> list:
    if n_jobs == 1:
        return [_run_rep(*job) for job in jobs]
    return Parallel(n_jobs=n_jobs)(delayed(_run_rep)(*job) for job in jobs)


def run_cell(config: ExperimentConfig, n_jobs: int = 1) -> CellResult:
    """Run every repetition of one cell; deterministic per config."""
    results = _collect([(config, r) for r in range(config.reps)], n_jobs)
    return CellResult(np.vstack([t for t, _ in results]), [e for _, e in results])


def run_comparison(config: ExperimentConfig, methods=METHODS,
                   n_jobs: int = 1) -> dict:
    """Run several methods against byte-identical streams per repetition."""
    streams = [generate_arrays(config.stream_config(r)) for r in range(config.reps)]
    out = {}
    for method in methods:
        cfg = replace(config, method=method)
        results = _collect([(cfg, r, streams[r]) for r in range(cfg.reps)], n_jobs)
        out[method] = CellResult(np.vstack([t for t, _ in results]),
                                 [e for _, e in results])
    return out


# -- aggregation and output ----------------------------------------------------


def summarize(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-step mean and standard error of the mean across repetitions."""
    mean = matrix.mean(axis=0)
    if matrix.shape[0] > 1:
        stderr = matrix.std(axis=0, ddof=1) / math.sqrt(matrix.shape[0])
    else:
        stderr = np.zeros_like(mean)
    return mean, stderr


def write_gmean_csv(path, mean: np.ndarray, stderr: np.ndarray) -> None:
    lines = ["step,mean_gmean,stderr"]
    for i in range(len(mean)):
        lines.append(f"{i + 1},{float(mean[i])!r},{float(stderr[i])!r}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_events_csv(path, events) -> None:
    """One ``rep,t,event`` line per detector event; rep indices are 0-based."""
    lines = ["rep,t,event"]
    for rep, rep_events in enumerate(events):
        for t, name in rep_events:
            lines.append(f"{rep},{t},{name}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def render_gmean_svg(path, mean: np.ndarray, stderr: np.ndarray,
                     drift_step: int | None = None, title: str = "") -> None:
    """Static SVG: mean line, stderr band, optional drift marker."""
    width, height = 720, 420
    ml, mr, mt, mb = 62, 18, 34, 46
    pw, ph = width - ml - mr, height - mt - mb
    n = len(mean)

    def sx(i: float) -> float:
        return ml + pw * i / max(n - 1, 1)

    def sy(v: float) -> float:
        return mt + ph * (1.0 - min(max(v, 0.0), 1.0))

    def pts(values) -> str:
        return " ".join(f"{sx(i):.2f},{sy(v):.2f}" for i, v in values)

    band = pts(enumerate(mean + stderr))
    band += " " + pts(reversed(list(enumerate(mean - stderr))))
    line = pts(enumerate(mean))

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{ml}" y="20" font-family="sans-serif" font-size="14">{title}</text>',
        f'<polygon points="{band}" fill="#7aa6d6" fill-opacity="0.35" stroke="none"/>',
        f'<polyline points="{line}" fill="none" stroke="#1f4e8c" stroke-width="1.5"/>',
    ]
    if drift_step is not None and 1 <= drift_step <= n:
        x = sx(drift_step - 1)
        parts.append(
            f'<line x1="{x:.2f}" y1="{mt}" x2="{x:.2f}" y2="{mt + ph}" '
            'stroke="#c0392b" stroke-width="1" stroke-dasharray="5,4"/>'
        )
    # axes and ticks
    parts.append(f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>')
    parts.append(f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>')
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        y = sy(tick)
        parts.append(f'<line x1="{ml - 4}" y1="{y:.2f}" x2="{ml}" y2="{y:.2f}" stroke="black"/>')
        parts.append(
            f'<text x="{ml - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:g}</text>'
        )
    for frac in (0.0, 0.25, 0.5, 0.75, 1.0):
        step = 1 + round(frac * (n - 1))
        x = sx(step - 1)
        parts.append(
            f'<line x1="{x:.2f}" y1="{mt + ph}" x2="{x:.2f}" y2="{mt + ph + 4}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{mt + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{step}</text>'
        )
    parts.append(
        f'<text x="{ml + pw / 2:.0f}" y="{height - 8}" text-anchor="middle" '
        'font-family="sans-serif" font-size="12">step</text>'
    )
    parts.append(
        f'<text x="16" y="{mt + ph / 2:.0f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12" '
        f'transform="rotate(-90 16 {mt + ph / 2:.0f})">prequential G-mean</text>'
    )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")


def cell_dir_name(config: ExperimentConfig) -> str:
    mode = "hybrid" if config.hybrid else "nohybrid"
    return f"{config.dataset}_{config.imbalance!r}_{config.method}_{mode}"


def load_config_file(path) -> dict:
    """Flat ``key=value`` file, ``#`` comments; keys match the CLI flags."""
    settings = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, value = line.split("=", 1)
        settings[key.strip().replace("-", "_")] = value.strip()
    return settings

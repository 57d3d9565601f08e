"""Command-line experiment runner.

Runs one (dataset, imbalance, method, hybrid) cell, or with ``--compare``
several methods against the same streams, and writes per-step G-mean CSVs,
optional detector event logs, and optional SVG plots.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .classifier import METHODS
from .experiment import (
    ExperimentConfig,
    cell_dir_name,
    load_config_file,
    run_cell,
    run_comparison,
    summarize,
    write_events_csv,
    write_gmean_csv,
    render_gmean_svg,
)
from .streams import KINDS

_BOOL_WORDS = {"1": True, "true": True, "yes": True, "on": True,
               "0": False, "false": False, "no": False, "off": False}

_DEFAULTS = {
    "dataset": "circle",
    "imbalance": 0.10,
    "method": "areba",
    "hybrid": True,
    "steps": 5000,
    "drift_step": 2501,
    "reps": 20,
    "seed": 0,
    "budget": 20,
    "window": 1000,
    "out": None,
    "plot": False,
    "events_log": False,
    "compare": False,
    "jobs": 1,
}

_CASTS = {
    "dataset": str, "imbalance": float, "method": str, "hybrid": "bool",
    "steps": int, "drift_step": int, "reps": int, "seed": int,
    "budget": int, "window": int, "out": str, "plot": "bool",
    "events_log": "bool", "compare": "bool", "jobs": int,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hareba",
        description="Benchmark online classifiers on imbalanced drifting streams.",
    )
    p.add_argument("--config", type=Path, default=None,
                   help="flat key=value file; explicit flags override it")
    p.add_argument("--dataset", choices=KINDS, default=None)
    p.add_argument("--imbalance", type=float, default=None,
                   help="positive-class rate, e.g. 0.1 or 0.01")
    p.add_argument("--method", default=None,
                   help=f"one of {', '.join(METHODS)}; comma-separated list with --compare")
    p.add_argument("--hybrid", action=argparse.BooleanOptionalAction, default=None,
                   help="enable the drift-detection layer (default: on)")
    p.add_argument("--steps", type=int, default=None)
    p.add_argument("--drift-step", type=int, default=None, dest="drift_step",
                   help="step at which the concept swaps; 0 disables drift")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--budget", type=int, default=None, help="dual-queue memory budget")
    p.add_argument("--window", type=int, default=None, help="sliding window size")
    p.add_argument("--out", type=Path, default=None)
    p.add_argument("--plot", action="store_true", default=None)
    p.add_argument("--events-log", action="store_true", default=None, dest="events_log")
    p.add_argument("--compare", action="store_true", default=None,
                   help="run several methods against identical streams")
    p.add_argument("--jobs", type=int, default=None,
                   help="parallel workers for repetitions (default 1)")
    return p


def _merge_settings(args: argparse.Namespace, parser: argparse.ArgumentParser) -> dict:
    settings = dict(_DEFAULTS)
    if args.config is not None:
        try:
            raw = load_config_file(args.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        for key, value in raw.items():
            if key not in _DEFAULTS:
                parser.error(f"unknown config key {key!r}")
            cast = _CASTS[key]
            try:
                if cast == "bool":
                    settings[key] = _BOOL_WORDS[value.lower()]
                else:
                    settings[key] = cast(value)
            except (KeyError, ValueError):
                parser.error(f"bad value for config key {key!r}: {value!r}")
    for key in _DEFAULTS:
        value = getattr(args, key)
        if value is not None:
            settings[key] = value
    return settings


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    s = _merge_settings(args, parser)

    if s["dataset"] not in KINDS:
        parser.error(f"unknown dataset {s['dataset']!r}; expected one of {KINDS}")
    methods = [m.strip() for m in str(s["method"]).split(",") if m.strip()]
    for m in methods:
        if m not in METHODS:
            parser.error(f"unknown method {m!r}; expected one of {METHODS}")
    if len(methods) > 1 and not s["compare"]:
        parser.error("multiple methods require --compare")
    if s["compare"] and s["method"] == _DEFAULTS["method"] and args.method is None:
        methods = list(METHODS)
    drift_step = s["drift_step"] if s["drift_step"] else None

    config = ExperimentConfig(
        dataset=s["dataset"], imbalance=s["imbalance"], method=methods[0],
        hybrid=s["hybrid"], steps=s["steps"], drift_step=drift_step,
        reps=s["reps"], seed=s["seed"], budget=s["budget"], window=s["window"],
    )

    if s["compare"]:
        out = Path(s["out"]) if s["out"] else Path("results") / (
            f"compare_{config.dataset}_{config.imbalance!r}_"
            f"{'hybrid' if config.hybrid else 'nohybrid'}"
        )
        out.mkdir(parents=True, exist_ok=True)
        results = run_comparison(config, methods, n_jobs=s["jobs"])
        summary = ["method,end_mean_gmean,end_stderr"]
        for method in methods:
            mean, stderr = summarize(results[method].gmean)
            write_gmean_csv(out / f"{method}_gmean.csv", mean, stderr)
            if s["events_log"]:
                write_events_csv(out / f"{method}_events.csv", results[method].events)
            if s["plot"]:
                render_gmean_svg(out / f"{method}_plot.svg", mean, stderr,
                                 drift_step=config.drift_step,
                                 title=f"{config.dataset} {config.imbalance:g} {method}")
            summary.append(f"{method},{float(mean[-1])!r},{float(stderr[-1])!r}")
            print(f"{method:>12}: end G-mean {mean[-1]:.4f} +/- {stderr[-1]:.4f}")
        (out / "summary.csv").write_text("\n".join(summary) + "\n", encoding="utf-8")
        print(f"wrote {out}")
        return 0

    out = Path(s["out"]) if s["out"] else Path("results") / cell_dir_name(config)
    out.mkdir(parents=True, exist_ok=True)
    result = run_cell(config, n_jobs=s["jobs"])
    mean, stderr = summarize(result.gmean)
    write_gmean_csv(out / "gmean.csv", mean, stderr)
    if s["events_log"]:
        write_events_csv(out / "events.csv", result.events)
    if s["plot"]:
        render_gmean_svg(out / "plot.svg", mean, stderr, drift_step=config.drift_step,
                         title=f"{config.dataset} {config.imbalance:g} {config.method} "
                               f"{'hybrid' if config.hybrid else 'nohybrid'}")
    print(f"{config.method}: end G-mean {mean[-1]:.4f} +/- {stderr[-1]:.4f}")
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

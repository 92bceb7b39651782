"""Multi-seed experiment runner and report assembly."""
from __future__ import annotations

import datetime
import json
import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import cluster
from .data import Dataset, load_dataset, read_schema
from .evaluation import clustering_accuracy, summarize
from .metric import MetricConfig, preset

log = logging.getLogger(__name__)

DEFAULT_SEEDS = tuple(range(10))
TIMING_KEYS = ("elapsed", "mean_elapsed", "generated_at")

REPORT_SCHEMA = {
    "type": "object",
    "required": ["dataset", "k", "seeds", "max_iter", "variants"],
    "properties": {
        "dataset": {
            "type": "object",
            "required": ["n", "d_cat", "d_num"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "d_cat": {"type": "integer", "minimum": 1},
                "d_num": {"type": "integer", "minimum": 0},
                "path": {"type": ["string", "null"]},
            },
        },
        "k": {"type": "integer", "minimum": 1},
        "seeds": {"type": "array", "items": {"type": "integer"}, "minItems": 1},
        "max_iter": {"type": "integer", "minimum": 1},
        "generated_at": {"type": "string"},
        "variants": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "metric", "summary", "runs"],
                "properties": {
                    "name": {"type": "string"},
                    "metric": {"type": "object"},
                    "summary": {
                        "type": ["object", "null"],
                        "required": ["mean_ca", "std_ca", "runs", "mean_elapsed"],
                        "properties": {
                            "mean_ca": {"type": ["number", "null"]},
                            "std_ca": {"type": ["number", "null"], "minimum": 0},
                            "runs": {"type": "integer", "minimum": 0},
                            "mean_elapsed": {"type": ["number", "null"]},
                        },
                    },
                    "runs": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["seed", "ca", "iterations", "converged_by",
                                         "objective", "elapsed", "error"],
                            "properties": {
                                "seed": {"type": "integer"},
                                "ca": {"type": ["number", "null"]},
                                "iterations": {"type": ["integer", "null"]},
                                "converged_by": {"enum": list(cluster.CONVERGENCE_REASONS) + [None]},
                                "objective": {"type": ["number", "null"]},
                                "elapsed": {"type": ["number", "null"]},
                                "error": {"type": ["string", "null"]},
                            },
                        },
                    },
                },
            },
        },
    },
}


@dataclass
class ExperimentConfig:
    data: str
    schema: str
    k: int
    seeds: tuple = DEFAULT_SEEDS
    variants: tuple = ("hdm", "cadm")
    max_iter: int = 100
    header: bool = False
    out: Optional[str] = None
    cai: Optional[str] = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if not self.seeds:
            raise ValueError("need at least one seed")
        if not self.variants:
            raise ValueError("need at least one variant")

    def metrics(self) -> list:
        return [(name, resolve_variant(name, self.cai)) for name in self.variants]


def resolve_variant(name, cai: Optional[str] = None):
    """Turn a preset name (or a MetricConfig dict) into a MetricConfig.

    A ``cai`` override applies to every variant except the Hamming baseline.
    """
    if isinstance(name, MetricConfig):
        cfg = name
    elif isinstance(name, dict):
        cfg = MetricConfig.from_dict(name)
    else:
        cfg = preset(name)
    if cai is not None and name != "hdm":
        cfg = cfg.with_cai(cai)
    return cfg


def _run_one(dataset: Dataset, k, seed, cfg, max_iter) -> dict:
    try:
        res = cluster.run(dataset, k, seed=seed, cfg=cfg, max_iter=max_iter)
    except Exception as exc:  # reported per run, the batch goes on
        log.warning("seed %s failed: %s", seed, exc)
        return {"seed": int(seed), "ca": None, "iterations": None, "converged_by": None,
                "objective": None, "elapsed": None, "error": str(exc)}
    ca = None
    if dataset.labels_true is not None:
        ca = clustering_accuracy(res.labels, dataset.labels_true)
    return {"seed": int(seed), "ca": ca, "iterations": res.iterations,
            "converged_by": res.converged_by, "objective": res.objective_trace[-1],
            "elapsed": res.elapsed, "error": None}


def run_variants(dataset: Dataset, k: int, variants, seeds=DEFAULT_SEEDS,
                 max_iter: int = 100, path: Optional[str] = None) -> dict:
    """Run every (variant, seed) pair and assemble a report dict.

    ``variants`` is a sequence of ``(name, MetricConfig)`` pairs.
    """
    blocks = []
    for name, cfg in variants:
        runs = [_run_one(dataset, k, s, cfg, max_iter) for s in seeds]
        done = [r for r in runs if r["error"] is None]
        summary = {"mean_ca": None, "std_ca": None, "runs": len(done),
                   "mean_elapsed": float(np.mean([r["elapsed"] for r in done])) if done else None}
        if done and dataset.labels_true is not None:
            s = summarize((r["ca"], r["elapsed"]) for r in done)
            summary.update(mean_ca=s.mean, std_ca=s.std)
        blocks.append({"name": name, "metric": cfg.to_dict(), "summary": summary, "runs": runs})
    return {
        "dataset": {"path": path, "n": dataset.n, "d_cat": dataset.d_cat, "d_num": dataset.d_num},
        "k": k,
        "seeds": [int(s) for s in seeds],
        "max_iter": max_iter,
        "generated_at": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "variants": blocks,
    }


def run_experiment(config: ExperimentConfig) -> dict:
    schema = read_schema(config.schema)
    dataset = load_dataset(config.data, schema, header=config.header)
    report = run_variants(dataset, config.k, config.metrics(), config.seeds,
                          config.max_iter, path=str(config.data))
    if config.out:
        with open(config.out, "w") as fh:
            json.dump(report, fh, indent=2)
    return report


def ablation_suite(dataset: Dataset, k: int, seeds=DEFAULT_SEEDS, max_iter: int = 100) -> dict:
    return run_variants(dataset, k, [(v, preset(v)) for v in ("dm1", "dm2", "cadm")],
                        seeds, max_iter)


def all_runs_failed(report: dict) -> bool:
    return all(r["error"] is not None for v in report["variants"] for r in v["runs"])


def strip_timing(report):
    """Copy of ``report`` without wall-clock fields, for reproducibility checks."""
    if isinstance(report, dict):
        return {key: strip_timing(val) for key, val in report.items() if key not in TIMING_KEYS}
    if isinstance(report, list):
        return [strip_timing(x) for x in report]
    return report


def format_table(report: dict) -> str:
    lines = [f"n={report['dataset']['n']} k={report['k']} seeds={len(report['seeds'])}",
             f"{'variant':<10} {'CA':>14} {'runs':>5} {'iters':>7} {'time/s':>9}"]
    for v in report["variants"]:
        s = v["summary"]
        iters = [r["iterations"] for r in v["runs"] if r["iterations"] is not None]
        it = f"{np.mean(iters):.1f}" if iters else "-"
        if s["mean_ca"] is None:
            ca = "-"
        else:
            ca = f"{s['mean_ca']:.3f}±{s['std_ca']:.3f}"
        t = "-" if s["mean_elapsed"] is None else f"{s['mean_elapsed']:.3f}"
        lines.append(f"{v['name']:<10} {ca:>14} {s['runs']:>5} {it:>7} {t:>9}")
    return "\n".join(lines)

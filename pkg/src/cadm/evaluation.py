"""Clustering accuracy under optimal cluster-to-class matching."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment


def contingency(pred, truth) -> np.ndarray:
    """k_pred x k_true table of co-occurrence counts."""
    pred = np.asarray(pred, dtype=np.int64)
    truth = np.asarray(truth, dtype=np.int64)
    if pred.shape != truth.shape:
        raise ValueError(f"length mismatch: {pred.shape[0]} predictions, {truth.shape[0]} labels")
    if pred.size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    kp, kt = pred.max() + 1, truth.max() + 1
    return np.bincount(pred * kt + truth, minlength=kp * kt).reshape(kp, kt)


def hungarian(cost) -> np.ndarray:
    """Minimum-cost perfect matching on a cost matrix.

    Rectangular matrices are zero-padded to square. Returns ``perm`` with row
    ``i`` matched to column ``perm[i]`` of the padded matrix.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.size == 0:
        raise ValueError("cost must be a non-empty 2-d matrix")
    if not np.all(np.isfinite(cost)):
        raise ValueError("cost entries must be finite")
    m = max(cost.shape)
    padded = np.zeros((m, m))
    padded[:cost.shape[0], :cost.shape[1]] = cost
    rows, cols = linear_sum_assignment(padded)
    perm = np.empty(m, dtype=np.int64)
    perm[rows] = cols
    return perm


def clustering_accuracy(pred, truth) -> float:
    table = contingency(pred, truth)
    perm = hungarian(-table)
    m = len(perm)
    padded = np.zeros((m, m), dtype=np.int64)
    padded[:table.shape[0], :table.shape[1]] = table
    return float(padded[np.arange(m), perm].sum()) / len(np.asarray(pred))


@dataclass(frozen=True)
class RunSummary:
    mean: float
    std: float
    runs: int
    mean_elapsed: float

    def __str__(self):
        return f"{self.mean:.3f}±{self.std:.2f}"


def summarize(runs) -> RunSummary:
    """Aggregate ``(ca, seconds)`` pairs: mean, sample std, mean duration."""
    runs = list(runs)
    if not runs:
        raise ValueError("need at least one run")
    ca = np.array([r[0] for r in runs], dtype=float)
    t = np.array([r[1] for r in runs], dtype=float)
    std = float(ca.std(ddof=1)) if len(ca) > 1 else 0.0
    return RunSummary(float(ca.mean()), std, len(ca), float(t.mean()))

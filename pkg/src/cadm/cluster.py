"""k-modes / k-prototypes iteration driven by an adaptive metric."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .data import Dataset, global_counts
from .metric import (CADM, MetricConfig, build_cluster_stats, distance_matrix,
                     hamming_matrix)

CONVERGENCE_REASONS = ("centers-stable", "labels-stable", "cycle-detected", "max-iter")


@dataclass(frozen=True, eq=False)
class Centers:
    codes: np.ndarray
    means: np.ndarray

    @property
    def k(self) -> int:
        return self.codes.shape[0]

    def __eq__(self, other):
        if not isinstance(other, Centers):
            return NotImplemented
        return (np.array_equal(self.codes, other.codes)
                and np.array_equal(self.means, other.means, equal_nan=True))


@dataclass
class ClusteringResult:
    labels: np.ndarray
    centers: Centers
    objective_trace: list
    iterations: int
    converged_by: str
    elapsed: float
    init_indices: np.ndarray = field(default=None, repr=False)


def init_centers(dataset: Dataset, k: int, seed) -> tuple:
    """Draw ``k`` objects with pairwise distinct rows, uniformly under ``seed``.

    Returns ``(centers, indices)``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if k > dataset.n:
        raise ValueError(f"k={k} exceeds the number of objects n={dataset.n}")
    rows = dataset.row_keys()
    order = np.random.default_rng(seed).permutation(dataset.n)
    picked, seen = [], set()
    for i in order:
        key = rows[i].tobytes()
        if key in seen:
            continue
        seen.add(key)
        picked.append(int(i))
        if len(picked) == k:
            break
    else:
        raise ValueError(f"k={k} exceeds the number of distinct rows ({len(seen)})")
    idx = np.array(picked)
    return Centers(dataset.codes[idx].copy(), dataset.numerics[idx].copy()), idx


def bootstrap_assign(dataset: Dataset, centers: Centers, numeric_weight: float = 1.0) -> np.ndarray:
    """Hamming nearest-center labels; ties go to the lowest cluster id."""
    D = hamming_matrix(dataset, centers.codes, centers.means, numeric_weight)
    return D.argmin(axis=1)


def assign(dataset: Dataset, centers: Centers, stats, cfg: MetricConfig):
    """Return ``(labels, J, D)`` where J sums each object's distance to its
    assigned center and D is the full distance matrix."""
    if np.all(stats.sizes == 0):
        raise ValueError("all clusters are empty")
    D = distance_matrix(dataset, stats, cfg, centers)
    labels = D.argmin(axis=1)
    J = float(D[np.arange(dataset.n), labels].sum())
    return labels, J, D


def update_centers(dataset: Dataset, labels, k: int, point_cost=None) -> Centers:
    """Modes (lowest code on ties) and means of each cluster.

    An empty cluster gets the row of the object with the largest
    ``point_cost`` (default: Hamming distance to its own cluster mode).
    """
    labels = np.asarray(labels)
    stats = build_cluster_stats(dataset, labels, k)
    codes = stats.modes.copy()
    means = stats.means.copy()
    empty = np.flatnonzero(stats.sizes == 0)
    if empty.size:
        if point_cost is None:
            point_cost = (dataset.codes != codes[labels]).sum(axis=1).astype(float)
        # stable sort: ties resolved by lowest object index
        far = np.argsort(-np.asarray(point_cost, dtype=float), kind="stable")
        for l, i in zip(empty, far):
            codes[l] = dataset.codes[i]
            means[l] = dataset.numerics[i]
    return Centers(codes, means)


def repair_empty_clusters(labels, point_cost, k: int) -> np.ndarray:
    """Move the farthest objects (by ``point_cost``) into empty clusters.

    Only objects whose cluster keeps at least one other member are moved.
    """
    labels = np.array(labels)
    sizes = np.bincount(labels, minlength=k)
    if not np.any(sizes == 0):
        return labels
    order = np.argsort(-np.asarray(point_cost, dtype=float), kind="stable")
    pos = 0
    for l in np.flatnonzero(sizes == 0):
        while sizes[labels[order[pos]]] <= 1:
            pos += 1
        i = order[pos]
        sizes[labels[i]] -= 1
        labels[i] = l
        sizes[l] = 1
        pos += 1
    return labels


def objective(dataset: Dataset, labels, centers: Centers, stats, cfg: MetricConfig) -> float:
    D = distance_matrix(dataset, stats, cfg, centers)
    return float(D[np.arange(dataset.n), np.asarray(labels)].sum())


def run(dataset: Dataset, k: int, seed=0, cfg: MetricConfig = CADM,
        max_iter: int = 100, init: Optional[Centers] = None) -> ClusteringResult:
    """Cluster ``dataset`` into ``k`` groups.

    Each iteration rebuilds the cluster statistics from the current labels,
    reassigns every object to its nearest center under ``cfg`` and recomputes
    the centers. Stops when the centers or labels stop changing, when a label
    vector seen before comes back, or after ``max_iter`` iterations.
    """
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    t0 = time.perf_counter()
    if init is None:
        centers, init_idx = init_centers(dataset, k, seed)
    else:
        centers, init_idx = init, None
    gcounts = global_counts(dataset)
    labels = bootstrap_assign(dataset, centers, cfg.numeric_weight)
    centers = update_centers(dataset, labels, k)
    seen = {labels.tobytes()}
    trace = []
    reason = "max-iter"
    for _ in range(max_iter):
        stats = build_cluster_stats(dataset, labels, k, gcounts)
        new_labels, J, D = assign(dataset, centers, stats, cfg)
        trace.append(J)
        cost = D[np.arange(dataset.n), new_labels]
        new_labels = repair_empty_clusters(new_labels, cost, k)
        new_centers = update_centers(dataset, new_labels, k)
        key = new_labels.tobytes()
        if new_centers == centers:
            reason = "centers-stable"
        elif np.array_equal(new_labels, labels):
            reason = "labels-stable"
        elif key in seen:
            reason = "cycle-detected"
        labels, centers = new_labels, new_centers
        if reason != "max-iter":
            break
        seen.add(key)
    return ClusteringResult(labels, centers, trace, len(trace), reason,
                            time.perf_counter() - t0, init_idx)

"""Cluster-customized attribute-value distances and the baseline metrics.

All quantities are computed against a frozen :class:`ClusterStats` snapshot.
The scalar functions (``cvi``, ``rival_factor``, ``cvd``, ...) follow the
definitions one value at a time; :func:`distance_tables` and
:func:`distance_matrix` evaluate the same quantities for every code and
cluster at once and are what the clustering loop uses.
"""
from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, replace
from typing import Optional

import numpy as np

from .data import Dataset, GlobalCounts, global_counts

CAI_MODES = ("off", "additive", "multiplicative")


class RivalRole(enum.Enum):
    CENTER = "center-value"
    RIVAL = "rival-value"


@dataclass(frozen=True)
class MetricConfig:
    """Switches for the ablation ladder.

    ``use_order_info`` sums distances over intermediate ordinal values,
    ``use_cvd`` replaces unit mismatch steps with the per-cluster value
    distance, and ``cai_mode`` controls how the squared attribute importance
    enters the object-to-center distance.
    """

    use_order_info: bool = True
    use_cvd: bool = True
    cai_mode: str = "additive"
    smoothing: str = "clamp-one"
    numeric_weight: float = 1.0

    def __post_init__(self):
        if self.cai_mode not in CAI_MODES:
            raise ValueError(f"cai_mode must be one of {CAI_MODES}, got {self.cai_mode!r}")
        if self.smoothing != "clamp-one":
            raise ValueError(f"unsupported smoothing {self.smoothing!r}")
        if not self.numeric_weight >= 0:
            raise ValueError("numeric_weight must be nonnegative")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "MetricConfig":
        return cls(**d)

    def with_cai(self, mode: str) -> "MetricConfig":
        return replace(self, cai_mode=mode)


HDM = MetricConfig(use_order_info=False, use_cvd=False, cai_mode="off")
DM1 = MetricConfig(use_order_info=True, use_cvd=False, cai_mode="off")
DM2 = MetricConfig(use_order_info=True, use_cvd=True, cai_mode="off")
CADM = MetricConfig(use_order_info=True, use_cvd=True, cai_mode="additive")

PRESETS = {"hdm": HDM, "dm1": DM1, "dm2": DM2, "cadm": CADM}


def preset(name: str) -> MetricConfig:
    try:
        return PRESETS[name.lower()]
    except KeyError:
        raise ValueError(f"unknown variant {name!r}; choose from {sorted(PRESETS)}") from None


@dataclass(frozen=True, eq=False)
class ClusterStats:
    """Per-cluster value tallies for one labelling.

    ``counts[r]`` is a (k, v^r) array of C^l(o^r); ``modes`` is (k, d_cat)
    with -1 for empty clusters; ``means`` is (k, d_num) with NaN for empty
    clusters.
    """

    k: int
    n: int
    counts: tuple
    sizes: np.ndarray
    modes: np.ndarray
    means: np.ndarray
    ordinal: np.ndarray
    globals: GlobalCounts

    def __eq__(self, other):
        if not isinstance(other, ClusterStats):
            return NotImplemented
        return (self.k == other.k and self.n == other.n
                and all(np.array_equal(a, b) for a, b in zip(self.counts, other.counts))
                and np.array_equal(self.sizes, other.sizes)
                and np.array_equal(self.modes, other.modes)
                and np.array_equal(self.means, other.means, equal_nan=True))

    @property
    def empty(self) -> np.ndarray:
        return self.sizes == 0


def build_cluster_stats(dataset: Dataset, labels, k: int,
                        gcounts: Optional[GlobalCounts] = None) -> ClusterStats:
    labels = np.asarray(labels, dtype=np.int64)
    if k < 1:
        raise ValueError("k must be at least 1")
    if labels.shape != (dataset.n,):
        raise ValueError("need one label per object")
    if labels.size and (labels.min() < 0 or labels.max() >= k):
        raise ValueError(f"label outside [0, {k})")
    if gcounts is None:
        gcounts = global_counts(dataset)
    sizes = np.bincount(labels, minlength=k)
    counts = []
    modes = np.full((k, dataset.d_cat), -1, dtype=np.int64)
    for r, v in enumerate(dataset.cardinalities):
        c = np.bincount(labels * v + dataset.codes[:, r], minlength=k * v).reshape(k, v)
        # argmax picks the first maximum, i.e. the lowest code
        modes[:, r] = np.where(sizes > 0, c.argmax(axis=1), -1)
        c.setflags(write=False)
        counts.append(c)
    means = np.full((k, dataset.d_num), np.nan)
    if dataset.d_num:
        sums = np.zeros((k, dataset.d_num))
        np.add.at(sums, labels, dataset.numerics)
        nz = sizes > 0
        means[nz] = sums[nz] / sizes[nz, None]
    for a in (sizes, modes, means):
        a.setflags(write=False)
    return ClusterStats(k, dataset.n, tuple(counts), sizes, modes, means,
                        dataset.ordinal_mask, gcounts)


def cvi(stats: ClusterStats, l: int, r: int, value: int) -> float:
    """Count of ``value`` in cluster ``l`` over the largest whole-dataset
    count in attribute ``r``."""
    if not 0 <= r < len(stats.counts):
        raise IndexError(f"attribute {r} is not a categorical attribute")
    return stats.counts[r][l, value] / stats.globals.counts[r].max()


def rival_factor(stats: ClusterStats, l: int, r: int, value: int, role: RivalRole) -> float:
    if role is RivalRole.CENTER:
        return cvi(stats, l, r, value)
    # clamp-one smoothing keeps 1/CVI finite for values absent from the cluster
    count = max(int(stats.counts[r][l, value]), 1)
    return stats.globals.counts[r].max() / count


def cvd(stats: ClusterStats, l: int, r: int, s: int, p: int) -> float:
    """Distance from rival value ``s`` to center value ``p`` in cluster ``l``.

    Not symmetric in (s, p).
    """
    if s == p:
        return 0.0
    return rival_factor(stats, l, r, s, RivalRole.RIVAL) + rival_factor(stats, l, r, p, RivalRole.CENTER)


def attr_value_distance(stats: ClusterStats, cfg: MetricConfig, l: int, r: int,
                        x_code: int, c_code: int) -> float:
    if x_code == c_code:
        return 0.0
    step = (lambda j: cvd(stats, l, r, j, c_code)) if cfg.use_cvd else (lambda j: float(j != c_code))
    if cfg.use_order_info and stats.ordinal[r]:
        lo, hi = min(x_code, c_code), max(x_code, c_code)
        return float(sum(step(j) for j in range(lo, hi + 1)))
    return step(x_code)


def cai(stats: ClusterStats, l: int, r: int) -> float:
    # denominator is the dataset size n, not the cluster size
    return stats.counts[r][l].max() / stats.n


def attr_importance(stats: ClusterStats, l: int, r: int) -> float:
    return cai(stats, l, r) ** 2


def object_center_distance(dataset: Dataset, stats: ClusterStats, cfg: MetricConfig,
                           i: int, l: int, centers=None) -> float:
    """Dissimilarity between object ``i`` and the center of cluster ``l``.

    ``centers`` defaults to the cluster modes and means held by ``stats``.
    """
    if stats.sizes[l] == 0:
        raise ValueError(f"cluster {l} is empty")
    c_codes = stats.modes[l] if centers is None else centers.codes[l]
    c_means = stats.means[l] if centers is None else centers.means[l]
    total = 0.0
    for r in range(dataset.d_cat):
        dm = attr_value_distance(stats, cfg, l, r, int(dataset.codes[i, r]), int(c_codes[r]))
        if cfg.cai_mode == "additive":
            total += dm + attr_importance(stats, l, r)
        elif cfg.cai_mode == "multiplicative":
            total += dm * (1.0 + attr_importance(stats, l, r))
        else:
            total += dm
    if dataset.d_num:
        total += cfg.numeric_weight * float(np.sum((dataset.numerics[i] - c_means) ** 2))
    return total


def hamming_distance(dataset: Dataset, i: int, center_codes, center_numerics=None,
                     numeric_weight: float = 1.0) -> float:
    d = float(np.count_nonzero(dataset.codes[i] != np.asarray(center_codes)))
    if dataset.d_num and center_numerics is not None:
        d += numeric_weight * float(np.sum((dataset.numerics[i] - np.asarray(center_numerics)) ** 2))
    return d


def distance_tables(stats: ClusterStats, cfg: MetricConfig, center_codes=None) -> list:
    """Per attribute, a (k, v^r) table of the full per-attribute term
    (value distance combined with the importance term per ``cfg.cai_mode``)
    for every possible object code against each cluster center.

    Rows of empty clusters are +inf.
    """
    center_codes = stats.modes if center_codes is None else np.asarray(center_codes)
    k = stats.k
    rows = np.arange(k)
    live = stats.sizes > 0
    tables = []
    for r, C in enumerate(stats.counts):
        v = C.shape[1]
        p = np.where(live, center_codes[:, r], 0)
        at_center = np.arange(v)[None, :] == p[:, None]
        if cfg.use_cvd:
            gmax = stats.globals.counts[r].max()
            rival = gmax / np.maximum(C, 1)
            center = C[rows, p] / gmax
            step = rival + center[:, None]
        else:
            step = np.ones((k, v))
        step = np.where(at_center, 0.0, step)
        if cfg.use_order_info and stats.ordinal[r]:
            cs = np.cumsum(step, axis=1)
            cs0 = np.concatenate([np.zeros((k, 1)), cs], axis=1)
            t = np.arange(v)[None, :]
            lo = np.minimum(t, p[:, None])
            hi = np.maximum(t, p[:, None])
            table = np.take_along_axis(cs0, hi + 1, axis=1) - np.take_along_axis(cs0, lo, axis=1)
            table = np.where(at_center, 0.0, table)
        else:
            table = step
        if cfg.cai_mode != "off":
            imp = (C.max(axis=1) / stats.n) ** 2
            if cfg.cai_mode == "additive":
                table = table + imp[:, None]
            else:
                table = table * (1.0 + imp[:, None])
        table = np.where(live[:, None], table, np.inf)
        tables.append(table)
    return tables


def distance_matrix(dataset: Dataset, stats: ClusterStats, cfg: MetricConfig,
                    centers=None) -> np.ndarray:
    """(n, k) matrix of object-to-center distances; empty clusters are +inf."""
    codes = stats.modes if centers is None else centers.codes
    means = stats.means if centers is None else centers.means
    D = np.zeros((dataset.n, stats.k))
    for r, table in enumerate(distance_tables(stats, cfg, codes)):
        D += table[:, dataset.codes[:, r]].T
    if dataset.d_num:
        D += cfg.numeric_weight * _sq_dist(dataset.numerics, means)
    D[:, stats.sizes == 0] = np.inf
    return D


def hamming_matrix(dataset: Dataset, center_codes, center_means=None,
                   numeric_weight: float = 1.0) -> np.ndarray:
    center_codes = np.asarray(center_codes)
    D = (dataset.codes[:, None, :] != center_codes[None, :, :]).sum(axis=2).astype(np.float64)
    if dataset.d_num and center_means is not None:
        D += numeric_weight * _sq_dist(dataset.numerics, np.asarray(center_means))
    return D


def _sq_dist(X, M):
    return ((X[:, None, :] - M[None, :, :]) ** 2).sum(axis=2)

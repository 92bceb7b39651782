"""Seeded generator of categorical/mixed data with planted clusters."""
from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .data import (NOMINAL, NUMERIC, ORDINAL, AttributeSpec, Dataset, Schema)


@dataclass(frozen=True)
class SyntheticSpec:
    """``attributes`` is a sequence of ``(kind, cardinality)`` pairs; the
    cardinality of a numeric attribute is ignored.

    Within each planted group a categorical attribute puts mass ``skew`` on a
    group-specific peak value and spreads the rest uniformly, so skew 1.0
    gives constant columns per group and skew 0.0 makes groups
    indistinguishable.
    """

    n: int
    attributes: tuple
    k: int
    skew: float
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "attributes", tuple(tuple(a) for a in self.attributes))
        if self.n < 1 or self.k < 1 or self.k > self.n:
            raise ValueError("need 1 <= k <= n")
        if not 0.0 <= self.skew <= 1.0:
            raise ValueError("skew must lie in [0, 1]")
        if not any(kind in (NOMINAL, ORDINAL) for kind, _ in self.attributes):
            raise ValueError("need at least one categorical attribute")
        for kind, v in self.attributes:
            if kind not in (NOMINAL, ORDINAL, NUMERIC):
                raise ValueError(f"unknown attribute kind {kind!r}")
            if kind != NUMERIC and v < 2:
                raise ValueError("categorical cardinalities must be at least 2")

    @classmethod
    def from_json(cls, text: str) -> "SyntheticSpec":
        d = json.loads(text)
        attrs = [(a["kind"], a.get("cardinality", 0)) for a in d["attributes"]]
        return cls(d["n"], attrs, d["k"], d["skew"], d.get("seed", 0))


def _planted_peaks(rng, cards, k):
    """k distinct peak vectors over the categorical attributes, when possible."""
    if np.prod([float(v) for v in cards]) < k:
        raise ValueError("categorical attributes cannot distinguish k groups")
    for _ in range(1000):
        peaks = np.column_stack([rng.permutation(np.arange(k) % v) for v in cards])
        if len({p.tobytes() for p in peaks}) == k:
            return peaks
    raise ValueError("could not draw distinct peak vectors")


def generate_synthetic(spec: SyntheticSpec) -> Dataset:
    rng = np.random.default_rng(spec.seed)
    groups = rng.permutation(np.arange(spec.n) % spec.k)
    cat = [(j, v) for j, (kind, v) in enumerate(spec.attributes) if kind != NUMERIC]
    num = [j for j, (kind, _) in enumerate(spec.attributes) if kind == NUMERIC]
    peaks = _planted_peaks(rng, [v for _, v in cat], spec.k)
    codes = np.empty((spec.n, len(cat)), dtype=np.int64)
    for r, (_, v) in enumerate(cat):
        uniform = rng.integers(0, v, size=spec.n)
        take_peak = rng.random(spec.n) < spec.skew
        codes[:, r] = np.where(take_peak, peaks[groups, r], uniform)
    numerics = np.empty((spec.n, len(num)))
    for c in range(len(num)):
        centers = rng.random(spec.k)
        noise = rng.random(spec.n)
        x = spec.skew * centers[groups] + (1.0 - spec.skew) * noise
        lo, hi = x.min(), x.max()
        numerics[:, c] = (x - lo) / (hi - lo) if hi > lo else 0.0
    attrs = [AttributeSpec(f"a{j}", spec.attributes[j][0], tuple(str(t) for t in range(v)))
             for j, v in cat]
    attrs += [AttributeSpec(f"a{j}", NUMERIC) for j in num]
    return Dataset(codes, numerics, Schema(tuple(attrs)), groups,
                   tuple(f"g{g}" for g in range(spec.k)))

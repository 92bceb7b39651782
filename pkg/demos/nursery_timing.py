"""
Timing on Nursery
=================

Nursery (12960 applications, 8 attributes, seven of them ordinal) is
rebuilt locally, so no download is needed. One run per variant.

Watch the cluster sizes: the count-based variants tend to drain objects
into the largest cluster when a start puts few objects in the others.
"""
import time

import numpy as np

from cadm import datasets, preset, run

ds = datasets.nursery()
print(f"{ds.n} objects, {ds.d_cat} attributes, ordinal mask {ds.ordinal_mask.astype(int)}")

for name in ("hdm", "dm1", "dm2", "cadm"):
    t0 = time.perf_counter()
    res = run(ds, 4, seed=0, cfg=preset(name))
    dt = time.perf_counter() - t0
    sizes = sorted(np.bincount(res.labels, minlength=4).tolist())
    print(f"{name:5s} {dt:6.3f}s  {res.iterations:3d} iterations  cluster sizes {sizes}")

"""Helpers for the public benchmark tables.

Nothing is bundled with the library. :func:`fetch` rebuilds CSV + schema
pairs from the Orange3 3.4.5 source archive on PyPI (it ships UCI Zoo,
Lymphography and Congressional Voting as ``.tab`` files); :func:`nursery`
rebuilds the Nursery attribute table, which is the full Cartesian product
of its attribute values.

Known sources:

========  =======================================================  =====  ====  ===
name      UCI page                                                  n      d     k
========  =======================================================  =====  ====  ===
nursery   https://archive.ics.uci.edu/dataset/76/nursery          12960   8     4*
zoo       https://archive.ics.uci.edu/dataset/111/zoo              101   16     7
lymph     https://archive.ics.uci.edu/dataset/63/lymphography      148   18     4
voting    https://archive.ics.uci.edu/dataset/105/congressional...  435   16     2
========  =======================================================  =====  ====  ===

``*`` the UCI file has five classes, one of them with two rows.
"""
from __future__ import annotations

import csv
import hashlib
import io
import itertools
import os
import tarfile
import urllib.request

import numpy as np

from .data import (LABEL, NOMINAL, ORDINAL, AttributeSpec, Dataset, Schema,
                   encode_rows, load_dataset, read_schema)

ORANGE_URL = ("https://files.pythonhosted.org/packages/5c/cc/"
              "cbab44af5e29b8f0296ee97210fe8f83b83cc66745e126f9a9ddfd8a0238/Orange3-3.4.5.tar.gz")
ORANGE_SHA256 = "5916de9e280bc3626e39704c4b071b0e4ffa8bd075470471be22a85fa1fde286"

# name -> (n, d_cat, number of classes)
EXPECTED = {
    "nursery": (12960, 8, None),
    "zoo": (101, 16, 7),
    "lymphography": (148, 18, 4),
    "voting": (435, 16, 2),
}

_ORANGE_FILES = {
    "zoo": "zoo.tab",
    "lymphography": "lymphography.tab",
    "voting": "voting.tab",
}

# Lymphography codes three attributes as ordered integer levels.
_ORDINAL = {
    "lymphography": {
        "lym_dimin": ("1", "2", "3"),
        "lym_enlar": ("1", "2", "3", "4"),
        "no_nodes": tuple(str(v) for v in range(1, 9)),
    },
}

NURSERY_ATTRIBUTES = (
    ("parents", ORDINAL, ("usual", "pretentious", "great_pret")),
    ("has_nurs", ORDINAL, ("proper", "less_proper", "improper", "critical", "very_crit")),
    ("form", ORDINAL, ("complete", "completed", "incomplete", "foster")),
    ("children", ORDINAL, ("1", "2", "3", "more")),
    ("housing", ORDINAL, ("convenient", "less_conv", "critical")),
    ("finance", NOMINAL, ("convenient", "inconv")),
    ("social", ORDINAL, ("nonprob", "slightly_prob", "problematic")),
    ("health", ORDINAL, ("recommended", "priority", "not_recom")),
)


def nursery() -> Dataset:
    """Nursery attribute table (no class labels)."""
    schema = Schema(tuple(AttributeSpec(n, k, v) for n, k, v in NURSERY_ATTRIBUTES))
    rows = list(itertools.product(*(v for _, _, v in NURSERY_ATTRIBUTES)))
    return encode_rows(rows, schema)


def orange_tab_to_rows(text: str, name: str):
    """Convert an Orange ``.tab`` file into (rows, Schema).

    Meta columns (e.g. the animal name in Zoo) are dropped, the class column
    goes last, and empty cells become the explicit value ``?``.
    """
    lines = [ln.rstrip("\r\n") for ln in io.StringIO(text)]
    names, types, flags = (ln.split("\t") for ln in lines[:3])
    ordinal = _ORDINAL.get(name, {})
    keep, label_col = [], None
    for j, (col, flag) in enumerate(zip(names, flags + [""] * len(names))):
        flag = flag.strip()
        if flag == "class":
            label_col = j
        elif flag != "meta":
            keep.append(j)
    rows = []
    for ln in lines[3:]:
        if not ln.strip():
            continue
        cells = ln.split("\t")
        cells += [""] * (len(names) - len(cells))
        cells = [c.strip() or "?" for c in cells]
        rows.append([cells[j] for j in keep] + [cells[label_col]])
    attrs = []
    for j in keep:
        col = names[j].strip()
        if col in ordinal:
            attrs.append(AttributeSpec(col, ORDINAL, ordinal[col]))
        else:
            attrs.append(AttributeSpec(col, NOMINAL))
    attrs.append(AttributeSpec(names[label_col].strip() or "class", LABEL))
    return rows, Schema(tuple(attrs))


def _download(url, sha256):
    with urllib.request.urlopen(url) as resp:
        blob = resp.read()
    digest = hashlib.sha256(blob).hexdigest()
    if digest != sha256:
        raise IOError(f"checksum mismatch for {url}: {digest}")
    return blob


def fetch(name: str, dest: str, archive=None) -> tuple:
    """Write ``<dest>/<name>.csv`` and ``<dest>/<name>.schema``.

    ``archive`` may point at an already downloaded Orange3-3.4.5.tar.gz;
    otherwise it is downloaded and checksummed. Returns the two paths.
    """
    if name == "nursery":
        raise ValueError("nursery has no archived copy here; use nursery()")
    member = _ORANGE_FILES[name]
    if archive is None:
        blob = _download(ORANGE_URL, ORANGE_SHA256)
    else:
        with open(archive, "rb") as fh:
            blob = fh.read()
    with tarfile.open(fileobj=io.BytesIO(blob), mode="r:gz") as tar:
        text = tar.extractfile(f"Orange3-3.4.5/Orange/datasets/{member}").read().decode("utf-8")
    rows, schema = orange_tab_to_rows(text, name)
    os.makedirs(dest, exist_ok=True)
    csv_path = os.path.join(dest, f"{name}.csv")
    schema_path = os.path.join(dest, f"{name}.schema")
    with open(csv_path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    with open(schema_path, "w") as fh:
        fh.write(schema.to_text())
    verify(load_dataset(csv_path, schema), name)
    return csv_path, schema_path


def verify(dataset: Dataset, name: str) -> None:
    """Check n, d and the class count against the documented shape."""
    n, d, k = EXPECTED[name]
    got = (dataset.n, dataset.d_cat)
    if got != (n, d):
        raise ValueError(f"{name}: expected n={n}, d={d}; got n={got[0]}, d={got[1]}")
    if k is not None and dataset.labels_true is not None:
        classes = len(np.unique(dataset.labels_true))
        if classes != k:
            raise ValueError(f"{name}: expected {k} classes, got {classes}")


def load(name: str, directory: str) -> Dataset:
    """Load a previously fetched table and verify its shape."""
    ds = load_dataset(os.path.join(directory, f"{name}.csv"),
                      read_schema(os.path.join(directory, f"{name}.schema")))
    verify(ds, name)
    return ds

"""Schemas, CSV ingestion and integer encoding of categorical/mixed tables.

The schema sidecar is a plain-text file with one attribute per line, in
column order::

    finance: nominal
    social: ordinal[nonprob, slightly_prob, problematic]
    age: numeric
    class: label

``nominal`` may also carry an explicit value list (``nominal[a, b]``); without
one, the value set is inferred from the data in order of first appearance.
Blank lines and lines starting with ``#`` are ignored.
"""
from __future__ import annotations

import csv
import io
import os
import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

NOMINAL = "nominal"
ORDINAL = "ordinal"
NUMERIC = "numeric"
LABEL = "label"
KINDS = (NOMINAL, ORDINAL, NUMERIC, LABEL)


class SchemaError(ValueError):
    pass


class DataError(ValueError):
    pass


@dataclass(frozen=True)
class AttributeSpec:
    name: str
    kind: str
    values: Optional[tuple] = None

    @property
    def categorical(self) -> bool:
        return self.kind in (NOMINAL, ORDINAL)


@dataclass(frozen=True)
class Schema:
    attributes: tuple

    def __post_init__(self):
        names = [a.name for a in self.attributes]
        seen = set()
        for name in names:
            if name in seen:
                raise SchemaError(f"duplicate attribute name {name!r}")
            seen.add(name)
        for a in self.attributes:
            if a.kind not in KINDS:
                raise SchemaError(f"attribute {a.name!r}: unknown kind {a.kind!r}")
            if a.kind == ORDINAL:
                if not a.values:
                    raise SchemaError(f"attribute {a.name!r}: ordinal attribute needs a value list")
            if a.values is not None and len(set(a.values)) != len(a.values):
                raise SchemaError(f"attribute {a.name!r}: repeated value in value list")
            if a.kind in (NUMERIC, LABEL) and a.values is not None:
                raise SchemaError(f"attribute {a.name!r}: {a.kind} attributes take no value list")
        if sum(a.kind == LABEL for a in self.attributes) > 1:
            raise SchemaError("at most one label column is allowed")
        if not any(a.categorical for a in self.attributes):
            raise SchemaError("schema needs at least one nominal or ordinal attribute")

    @property
    def categorical(self) -> list:
        return [a for a in self.attributes if a.categorical]

    @property
    def numeric(self) -> list:
        return [a for a in self.attributes if a.kind == NUMERIC]

    def to_text(self) -> str:
        lines = []
        for a in self.attributes:
            if a.values is not None:
                lines.append(f"{a.name}: {a.kind}[{', '.join(a.values)}]")
            else:
                lines.append(f"{a.name}: {a.kind}")
        return "\n".join(lines) + "\n"


_LINE = re.compile(r"^\s*([^:]+?)\s*:\s*([A-Za-z]+)\s*(?:\[(.*)\])?\s*$")


def parse_schema(text: str) -> Schema:
    """Parse a schema sidecar document.

    Raises SchemaError on malformed lines, unknown kinds, duplicate names and
    ordinal attributes without a value list.
    """
    attrs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _LINE.match(line)
        if m is None:
            raise SchemaError(f"line {lineno}: cannot parse {raw!r}")
        name, kind, values = m.group(1), m.group(2).lower(), m.group(3)
        if kind not in KINDS:
            raise SchemaError(f"attribute {name!r}: unknown kind {m.group(2)!r}")
        if values is not None:
            values = tuple(v.strip() for v in values.split(",") if v.strip())
        attrs.append(AttributeSpec(name, kind, values))
    return Schema(tuple(attrs))


def read_schema(path) -> Schema:
    with open(path) as fh:
        return parse_schema(fh.read())


@dataclass(frozen=True, eq=False)
class Dataset:
    """Integer-coded categorical table plus min-max normalized numerics.

    ``schema`` is the resolved schema: every categorical attribute carries its
    complete value list, so ``schema.categorical[r].values[codes[i, r]]``
    decodes a cell.
    """

    codes: np.ndarray
    numerics: np.ndarray
    schema: Schema
    labels_true: Optional[np.ndarray] = None
    class_names: Optional[tuple] = None
    numeric_range: Optional[np.ndarray] = field(default=None, repr=False)

    def __post_init__(self):
        codes = np.ascontiguousarray(self.codes, dtype=np.int64)
        if codes.ndim != 2:
            raise DataError("codes must be a 2-d table")
        n = codes.shape[0]
        if n < 1:
            raise DataError("dataset needs at least one object")
        num = np.asarray(self.numerics, dtype=np.float64).reshape(n, -1)
        cats = self.schema.categorical
        if codes.shape[1] != len(cats) or num.shape[1] != len(self.schema.numeric):
            raise DataError("table shape does not match the schema")
        for r, a in enumerate(cats):
            col = codes[:, r]
            if col.min() < 0 or col.max() >= len(a.values):
                raise DataError(f"attribute {a.name!r}: code outside [0, {len(a.values)})")
        if num.size and (num.min() < 0.0 or num.max() > 1.0):
            raise DataError("normalized numerics must lie in [0, 1]")
        codes.setflags(write=False)
        num.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "numerics", num)
        if self.labels_true is not None:
            y = np.asarray(self.labels_true, dtype=np.int64)
            if y.shape != (n,):
                raise DataError("labels_true must have one entry per object")
            y.setflags(write=False)
            object.__setattr__(self, "labels_true", y)

    @property
    def n(self) -> int:
        return self.codes.shape[0]

    @property
    def d_cat(self) -> int:
        return self.codes.shape[1]

    @property
    def d_num(self) -> int:
        return self.numerics.shape[1]

    @property
    def cardinalities(self) -> list:
        return [len(a.values) for a in self.schema.categorical]

    @property
    def ordinal_mask(self) -> np.ndarray:
        return np.array([a.kind == ORDINAL for a in self.schema.categorical], dtype=bool)

    def decode(self, i: int, r: int) -> str:
        return self.schema.categorical[r].values[self.codes[i, r]]

    def row_keys(self) -> np.ndarray:
        """One row per object with categorical codes and numerics side by side."""
        return np.hstack([self.codes.astype(np.float64), self.numerics])


def _minmax(col: np.ndarray):
    lo, hi = col.min(), col.max()
    if hi > lo:
        return (col - lo) / (hi - lo), (lo, hi)
    return np.zeros_like(col), (lo, hi)


def load_dataset(source, schema: Schema, header: bool = False) -> Dataset:
    """Read a comma-separated table and encode it against ``schema``.

    ``source`` is a path, an open text file, or the CSV text itself when it
    contains a newline.
    """
    if hasattr(source, "read"):
        rows = list(csv.reader(source))
    elif isinstance(source, (str, os.PathLike)) and not (isinstance(source, str) and "\n" in source):
        with open(source, newline="") as fh:
            rows = list(csv.reader(fh))
    else:
        rows = list(csv.reader(io.StringIO(source)))
    if header and rows:
        rows = rows[1:]
    rows = [r for r in rows if any(cell.strip() for cell in r)]
    if not rows:
        raise DataError("no data rows")
    width = len(schema.attributes)
    for lineno, r in enumerate(rows, 1 + int(header)):
        if len(r) != width:
            raise DataError(f"row {lineno}: expected {width} cells, found {len(r)}")
    return encode_rows([[c.strip() for c in r] for r in rows], schema)


def encode_rows(rows: Sequence[Sequence[str]], schema: Schema) -> Dataset:
    """Encode already-split text rows. Value sets of nominal attributes
    declared without values are inferred in order of first appearance."""
    n = len(rows)
    cat_cols, num_cols, resolved = [], [], []
    ranges = []
    labels, class_names = None, None
    for j, a in enumerate(schema.attributes):
        col = [r[j] for r in rows]
        for i, cell in enumerate(col):
            if cell == "":
                raise DataError(f"row {i + 1}: missing value for attribute {a.name!r}")
        if a.kind == NUMERIC:
            try:
                x = np.array([float(c) for c in col])
            except ValueError as exc:
                raise DataError(f"attribute {a.name!r}: non-numeric cell ({exc})") from None
            if not np.all(np.isfinite(x)):
                raise DataError(f"attribute {a.name!r}: non-finite cell")
            x, rng = _minmax(x)
            num_cols.append(x)
            ranges.append(rng)
            resolved.append(a)
        elif a.kind == LABEL:
            class_names = tuple(dict.fromkeys(col))
            lookup = {v: c for c, v in enumerate(class_names)}
            labels = np.array([lookup[v] for v in col], dtype=np.int64)
            resolved.append(a)
        else:
            values = list(a.values) if a.values is not None else []
            lookup = {v: c for c, v in enumerate(values)}
            closed = a.values is not None
            codes = np.empty(n, dtype=np.int64)
            for i, cell in enumerate(col):
                code = lookup.get(cell)
                if code is None:
                    if closed:
                        raise DataError(f"row {i + 1}: value {cell!r} not declared for attribute {a.name!r}")
                    code = lookup[cell] = len(values)
                    values.append(cell)
                codes[i] = code
            cat_cols.append(codes)
            resolved.append(AttributeSpec(a.name, a.kind, tuple(values)))
    codes = np.column_stack(cat_cols) if cat_cols else np.empty((n, 0), np.int64)
    numerics = np.column_stack(num_cols) if num_cols else np.empty((n, 0))
    return Dataset(codes, numerics, Schema(tuple(resolved)), labels, class_names,
                   np.array(ranges).reshape(-1, 2))


def from_codes(codes, cardinalities=None, ordinal=(), numerics=None, labels_true=None,
               names=None) -> Dataset:
    """Build a Dataset directly from integer codes (used by generators and tests).

    ``ordinal`` lists the categorical column indices to mark ordinal; value
    names are the code strings ``"0", "1", ...``. ``numerics`` must already be
    scaled to [0, 1].
    """
    codes = np.asarray(codes, dtype=np.int64)
    if codes.ndim == 1:
        codes = codes[:, None]
    n, d = codes.shape
    if cardinalities is None:
        cardinalities = [int(codes[:, r].max()) + 1 for r in range(d)]
    numerics = np.empty((n, 0)) if numerics is None else np.asarray(numerics, float).reshape(n, -1)
    names = names or [f"a{r}" for r in range(d)]
    attrs = [AttributeSpec(names[r], ORDINAL if r in ordinal else NOMINAL,
                           tuple(str(v) for v in range(cardinalities[r])))
             for r in range(d)]
    attrs += [AttributeSpec(f"x{j}", NUMERIC) for j in range(numerics.shape[1])]
    return Dataset(codes, numerics, Schema(tuple(attrs)), labels_true)


@dataclass(frozen=True, eq=False)
class GlobalCounts:
    """Whole-dataset value counts, one array of length v^r per attribute."""

    counts: tuple
    n: int

    @property
    def max_counts(self) -> np.ndarray:
        return np.array([c.max() for c in self.counts], dtype=np.int64)


def global_counts(dataset: Dataset) -> GlobalCounts:
    counts = []
    for r, v in enumerate(dataset.cardinalities):
        c = np.bincount(dataset.codes[:, r], minlength=v)
        c.setflags(write=False)
        counts.append(c)
    return GlobalCounts(tuple(counts), dataset.n)


def write_dataset(dataset: Dataset, csv_path, schema_path) -> None:
    """Write a dataset as a header-less CSV plus schema sidecar.

    Numerics are written in their normalized form; a label column, if present,
    is appended last.
    """
    attrs = list(dataset.schema.categorical) + list(dataset.schema.numeric)
    if dataset.labels_true is not None:
        attrs.append(AttributeSpec("class", LABEL))
    with open(csv_path, "w", newline="") as fh:
        w = csv.writer(fh)
        for i in range(dataset.n):
            row = [dataset.decode(i, r) for r in range(dataset.d_cat)]
            row += [repr(float(x)) for x in dataset.numerics[i]]
            if dataset.labels_true is not None:
                y = dataset.labels_true[i]
                row.append(dataset.class_names[y] if dataset.class_names else str(y))
            w.writerow(row)
    with open(schema_path, "w") as fh:
        fh.write(Schema(tuple(attrs)).to_text())

import os

import numpy as np
import pytest

from cadm.data import from_codes

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


def random_instance(rng, max_n=50, max_d=4, max_v=5, max_k=3, numerics=True):
    """Random small dataset plus labels; returns (dataset, labels, k)."""
    n = int(rng.integers(1, max_n + 1))
    d = int(rng.integers(1, max_d + 1))
    cards = [int(rng.integers(2, max_v + 1)) for _ in range(d)]
    codes = np.column_stack([rng.integers(0, v, n) for v in cards])
    ordinal = [r for r in range(d) if rng.random() < 0.5]
    nums = None
    if numerics and rng.random() < 0.5:
        nums = rng.random((n, int(rng.integers(1, 3))))
    k = int(rng.integers(1, max_k + 1))
    labels = rng.integers(0, k, n)
    ds = from_codes(codes, cards, ordinal=ordinal, numerics=nums)
    return ds, labels, k


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def data_dir():
    return DATA_DIR


_acceptance_lines = []


def record_acceptance(line):
    _acceptance_lines.append(line)


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)

import numpy as np
import pytest

from metaspec.engine import Grid1D


@pytest.fixture
def grid() -> Grid1D:
    """Self-dual desk grid used throughout: 256 points on [-8, 8)."""
    return Grid1D(256, 16.0)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)

"""Shared fixtures for the lsmap test suite."""

import numpy as np
import pytest

from lsmap.arch.architecture import Architecture
from lsmap.circuit.benchmarks import steane_encoder
from lsmap.config import RANDOM_STATE
from lsmap.timing import ArchKind, TimingModel


@pytest.fixture
def steane():
    return steane_encoder()


@pytest.fixture
def rng():
    return np.random.default_rng(RANDOM_STATE)


@pytest.fixture
def tile_plane():
    return Architecture(ArchKind.TILE, 3, 3)


@pytest.fixture
def checker_plane():
    return Architecture(ArchKind.CHECKERBOARD, 3, 3)


@pytest.fixture
def t_timing():
    return TimingModel(3, ArchKind.TILE)


@pytest.fixture
def c_timing():
    return TimingModel(3, ArchKind.CHECKERBOARD)

import numpy as np
import pytest

from teleaudit.composite import teleport_layout


@pytest.fixture
def layout():
    return teleport_layout()


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)

"""Test configuration and fixtures."""

import pytest

from app.models.simulation import SimConfig
from app.models.state import FourierState
from app.services.galerkin.system import integrate
from app.services.spectrum import random_state


@pytest.fixture
def pair_state():
    """Real-valued datum with modes at k = +-1 and +-2."""
    return FourierState.hermitian({1: 0.2 + 0.1j, 2: -0.05 + 0.08j})


@pytest.fixture
def complex_state():
    """Non-Hermitian state used by the free operator tests."""
    return FourierState({-3: 0.3j, -1: 0.5, 2: 0.2 - 0.4j, 4: 0.1 + 0.1j})


@pytest.fixture
def small_random_state():
    """Reproducible random Hermitian state supported in |k| <= 6."""
    return random_state(seed=7, m=6, s=0.0, target_norm=0.3)


@pytest.fixture
def slow_config():
    """Short, well-resolved integration settings at m = 8."""
    return SimConfig(m=8, dt=1e-3, T=0.05, record_stride=1)


@pytest.fixture
def slow_trajectory(small_random_state, slow_config):
    """Trajectory of the truncated system from the random state."""
    return integrate(small_random_state, slow_config)


@pytest.fixture
def out_dir(tmp_path):
    """Fresh output directory for CLI runs."""
    path = tmp_path / "runs"
    path.mkdir()
    return path

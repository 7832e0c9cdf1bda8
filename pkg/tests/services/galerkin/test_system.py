"""Tests for the RK4 integration of the truncated system."""

import numpy as np
import pytest

from app.exceptions import (
    DivergenceError,
    NonHermitianStateError,
    SimulationError,
)
from app.models.simulation import SimConfig
from app.models.state import FourierState
from app.services.galerkin.system import (
    TruncatedSystem,
    galerkin_refinement,
    integrate,
    rhs_truncated,
    symmetrize,
)
from app.services.spectrum import mode_pair, random_state


class TestRightHandSide:
    """Test the truncated vector field."""

    def test_single_mode_example(self):
        """Test v_1 = 1 alone produces i at k = 2."""
        result = rhs_truncated(FourierState({1: 1.0}), 0.0, 2)

        assert dict(result.modes) == {2: 1j}

    def test_truncation(self):
        """Test output modes beyond m are dropped."""
        result = rhs_truncated(FourierState({1: 1.0}), 0.0, 1)

        assert len(result) == 0

    def test_high_modes_ignored(self):
        """Test input modes beyond m do not enter the field."""
        low = FourierState({1: 1.0})
        with_tail = low + FourierState({7: 3.0})

        assert rhs_truncated(with_tail, 0.3, 4) == rhs_truncated(low, 0.3, 4)

    def test_system_requires_positive_m(self):
        """Test m < 1 is refused."""
        with pytest.raises(SimulationError):
            TruncatedSystem(0)

    def test_fastest_phase(self):
        """Test the fastest pair phase 3 k1 k2 (k1 + k2) at k1 = k2 = m / 2."""
        assert TruncatedSystem(32).max_phase == 3 * 16 * 16 * 32
        assert TruncatedSystem(1).max_phase == 0

    def test_substeps_resolve_phase(self):
        """Test each RK4 step advances the fastest phase by <= 0.25."""
        system = TruncatedSystem(32)

        assert system.substeps(1e-4) == 10
        assert system.substeps(1e-6) == 1
        assert TruncatedSystem(1).substeps(0.5) == 1

    def test_step_matches_stage_phases(self):
        """Test step() agrees with a plain RK4 built on rhs()."""
        system = TruncatedSystem(5)
        w = random_state(seed=3, m=5, s=0.0, target_norm=1.0).to_dense(5)
        t, h = 0.37, 1e-3

        k1 = system.rhs(w, t)
        k2 = system.rhs(w + 0.5 * h * k1, t + 0.5 * h)
        k3 = system.rhs(w + 0.5 * h * k2, t + 0.5 * h)
        k4 = system.rhs(w + h * k3, t + h)
        expected = w + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

        np.testing.assert_allclose(
            system.step(w, t, h), expected, rtol=0, atol=1e-14
        )

    def test_symmetrize(self):
        """Test the dense Hermitian projection."""
        w = np.array([1.0, 0.0, 3.0 + 2j])

        np.testing.assert_allclose(symmetrize(w), [2 - 1j, 0, 2 + 1j])


class TestIntegrate:
    """Test the recorded trajectories."""

    def test_zero_datum(self):
        """Test the zero state is a fixed point."""
        cfg = SimConfig(m=4, dt=0.01, T=0.1)

        trajectory = integrate(FourierState.zero(), cfg)

        assert all(len(state) == 0 for state in trajectory.states)
        assert trajectory.times[-1] == pytest.approx(0.1)

    def test_first_step_growth(self):
        """Test v_2 grows like i v_1^2 t for small t."""
        cfg = SimConfig(m=4, dt=1e-4, T=1e-4)

        trajectory = integrate(mode_pair(1, 1.0), cfg)

        assert trajectory.final[2] == pytest.approx(1e-4j, rel=1e-3)

    def test_sampling(self):
        """Test the stride and the final sample at T."""
        cfg = SimConfig(m=4, dt=0.01, T=0.105, record_stride=4)

        trajectory = integrate(mode_pair(1, 0.1), cfg)

        # 11 steps of h = 0.105 / 11, recorded at steps 4, 8 and 11
        assert len(trajectory) == 4
        assert trajectory.times[0] == 0.0
        assert trajectory.times[-1] == pytest.approx(0.105)
        assert np.all(np.diff(trajectory.times) > 0)

    def test_frozen_tail(self):
        """Test modes beyond m keep their initial values."""
        v0 = mode_pair(1, 0.1) + mode_pair(9, 0.05j)
        cfg = SimConfig(m=4, dt=1e-3, T=0.02)

        trajectory = integrate(v0, cfg)

        for state in trajectory.states:
            assert state[9] == 0.05j
            assert state[-9] == -0.05j
        assert trajectory.bound == 9

    def test_states_stay_real(self, slow_trajectory):
        """Test every recorded state is Hermitian."""
        assert all(state.real_valued for state in slow_trajectory.states)

    def test_energy_conserved(self, slow_trajectory):
        """Test the L2 norm drifts only by the time-stepping error."""
        assert slow_trajectory.energy_drift() < 1e-7

    def test_non_hermitian_datum(self):
        """Test complex-valued data is refused."""
        cfg = SimConfig(m=4, dt=0.01, T=0.1)

        with pytest.raises(NonHermitianStateError):
            integrate(FourierState({1: 1.0}), cfg)

    def test_divergence(self):
        """Test huge data blows up into DivergenceError."""
        cfg = SimConfig(m=4, dt=0.1, T=1.0)

        with pytest.raises(DivergenceError) as exc_info:
            integrate(mode_pair(1, 1e7), cfg)

        assert exc_info.value.step >= 1


class TestGalerkinRefinement:
    """Test convergence in the truncation size."""

    def test_differences_small_for_smooth_data(self):
        """Test doubling m barely changes smooth small data."""
        cfg = SimConfig(m=4, dt=1e-3, T=0.05)

        differences = galerkin_refinement(mode_pair(1, 0.05), cfg, [4, 8])

        assert len(differences) == 2
        assert all(d < 1e-6 for d in differences)


@pytest.mark.slow
class TestEnergyConservation:
    """Test energy conservation at m = 32 over unit time."""

    @pytest.fixture
    def unit_datum(self):
        """Random real datum with unit L2 norm supported in |k| <= 32."""
        return random_state(seed=1, m=32, s=0.0, target_norm=1.0)

    def test_drift_below_tolerance(self, unit_datum):
        """Test the relative drift stays below 1e-8 at dt = 1e-4."""
        cfg = SimConfig(m=32, dt=1e-4, T=1.0, record_stride=10)

        trajectory = integrate(unit_datum, cfg)

        assert trajectory.energy_drift() < 1e-8

    def test_fourth_order_drift(self, unit_datum):
        """Test halving dt divides the drift by about 16."""
        coarse = SimConfig(m=32, dt=1e-4, T=1.0, substeps=2, record_stride=10)
        fine = coarse.model_copy(update={"dt": 5e-5, "record_stride": 20})

        coarse_drift = integrate(unit_datum, coarse).energy_drift()
        fine_drift = integrate(unit_datum, fine).energy_drift()

        assert 10.0 < coarse_drift / fine_drift < 25.0

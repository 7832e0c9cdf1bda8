"""Tests for the free multilinear operators against brute-force sums."""

import numpy as np
import pytest

from app.models.state import FourierState
from app.services.operators import kernels
from app.services.operators.multilinear import (
    b1,
    b2,
    b3,
    b4,
    b4_1,
    b4_2,
    product,
    product_mean,
    r3,
    r3_paired,
)
from app.services.spectrum import random_state
from tests import oracles

# exp(i theta t) is exact to rounding at this binary time
T = 0.25
TOL = 1e-10


@pytest.fixture
def u():
    return FourierState({-4: 0.3 - 0.1j, -1: 0.5, 2: 0.2 - 0.4j, 3: 0.7j})


@pytest.fixture
def v():
    return FourierState({-2: 0.4, 1: -0.3 + 0.2j, 4: 0.1j})


@pytest.fixture
def w():
    return FourierState({-3: 0.2 + 0.2j, 1: 0.6, 2: -0.5j})


@pytest.fixture
def phi():
    return FourierState({-1: 0.25j, 3: 0.4 - 0.3j})


@pytest.fixture
def real_state():
    return random_state(seed=11, m=5, s=0.0, target_norm=1.0)


def _assert_hermitian(state, sign):
    for k, z in state.items():
        assert state[-k] == pytest.approx(sign * z.conjugate(), abs=1e-12)


class TestBilinear:
    """Test the bilinear operators."""

    def test_b1_matches_oracle(self, u, v):
        """Test B1 against the naive double sum."""
        oracles.assert_matches(b1(u, v, T), oracles.b1(u, v, T), TOL)

    def test_b2_matches_oracle(self, u, v):
        """Test B2 against the naive double sum."""
        oracles.assert_matches(b2(u, v, T), oracles.b2(u, v, T), TOL)

    def test_b1_example(self):
        """Test B1 on a single pair of modes at t = 0."""
        one = FourierState({1: 1.0})

        result = b1(one, one, 0.0)

        # (i k / 2) v_1 v_1 at k = 2
        assert dict(result.modes) == {2: 1j}

    def test_output_support(self, u, v):
        """Test the output support is bounded by the sum of the inputs."""
        result = b2(u, v, T)

        assert result.support_bound <= u.support_bound + v.support_bound
        assert 0 not in result

    def test_zero_argument(self, u):
        """Test a zero argument gives the zero state."""
        assert len(b1(u, FourierState.zero(), T)) == 0


class TestTrilinear:
    """Test the trilinear operators."""

    def test_r3_matches_oracle(self, u, v, w):
        """Test R3 against the naive triple sum."""
        oracles.assert_matches(r3(u, v, w, T), oracles.r3(u, v, w, T), TOL)

    def test_b3_matches_oracle(self, u, v, w):
        """Test B3 against the naive nonresonant triple sum."""
        oracles.assert_matches(b3(u, v, w, T), oracles.b3(u, v, w, T), TOL)

    def test_r3_paired_drops_mean_pairs(self):
        """Test R3 paired omits triples with k2 + k3 = 0."""
        state = FourierState({1: 1.0, -1: 1.0, 2: 0.5})

        full = r3(state, state, state, 0.0)
        paired = r3_paired(state, state, state, 0.0)

        assert not full.allclose(paired)
        # Only the k2 + k3 = 0 terms differ
        pair_mean = sum(
            state[j] * state[-j] for j in state.support
        )
        for k, z in state.items():
            assert full[k] - paired[k] == pytest.approx(z / k * pair_mean)

    def test_blocked_summation(self, u, v, w, monkeypatch):
        """Test splitting the first index into blocks changes nothing."""
        expected = b3(u, v, w, T)
        monkeypatch.setattr(kernels, "BLOCK_SIZE", 1)

        assert b3(u, v, w, T).allclose(expected, tol=1e-14)


class TestQuadrilinear:
    """Test the quadrilinear operator B4."""

    def test_b4_matches_oracle(self, u, v, w, phi):
        """Test B4 against the naive quadruple sum."""
        oracles.assert_matches(
            b4(u, v, w, phi, T), oracles.b4(u, v, w, phi, T), TOL
        )

    def test_b4_symmetric_in_last_pair(self, u, v, w, phi):
        """Test swapping arguments 3 and 4 leaves B4 unchanged."""
        assert b4(u, v, w, phi, T).allclose(b4(u, v, phi, w, T), tol=1e-13)

    def test_b4_is_combination(self, u, v, w, phi):
        """Test B4 = 1/2 B4^1 + B4^2."""
        combined = 0.5 * b4_1(u, v, w, phi, T) + b4_2(u, v, w, phi, T)

        assert b4(u, v, w, phi, T).allclose(combined, tol=1e-13)


class TestSymmetry:
    """Test the parity of the operators on real-valued data."""

    def test_hermitian_outputs(self, real_state):
        """Test B1, B2 and B3 map real data to real data."""
        v = real_state
        _assert_hermitian(b1(v, v, T), 1)
        _assert_hermitian(b2(v, v, T), 1)
        _assert_hermitian(b3(v, v, v, T), 1)

    @pytest.mark.parametrize("t", [0.0, 0.3, 1.7])
    def test_b1_energy_neutral(self, real_state, t):
        """Test Re <B1(v, v), v> = 0 for real-valued v."""
        v = real_state

        pairing = sum(z * np.conj(v[k]) for k, z in b1(v, v, t).items())

        assert abs(pairing.real) < 1e-13

    def test_anti_hermitian_outputs(self, real_state):
        """Test R3 and B4 map real data to imaginary data."""
        v = real_state
        _assert_hermitian(r3(v, v, v, T), -1)
        _assert_hermitian(b4(v, v, v, v, T), -1)


class TestProducts:
    """Test pointwise products."""

    def test_product_is_convolution(self, u, v):
        """Test product() matches the convolution without the mean."""
        expected = {}
        for k1, a in u.items():
            for k2, b in v.items():
                if k1 + k2:
                    expected[k1 + k2] = expected.get(k1 + k2, 0) + a * b

        oracles.assert_matches(product(u, v), expected, 1e-14)

    def test_product_mean(self):
        """Test the mean of u v is sum_k u_k v_{-k}."""
        u = FourierState({1: 2.0, -2: 1j})
        v = FourierState({-1: 3.0, 2: 1.0, 5: 4.0})

        assert product_mean(u, v) == pytest.approx(6.0 + 1j)

    def test_product_mean_of_real_state(self, real_state):
        """Test the mean of v^2 is the squared L2 norm."""
        energy = float(np.sum(np.abs(real_state.to_dense()) ** 2))

        assert product_mean(real_state, real_state) == pytest.approx(energy)


def _random_complex(rng, m):
    """Non-Hermitian state with every mode 0 < |k| <= m populated."""
    ks = [k for k in range(-m, m + 1) if k]
    scale = 1.0 / np.sqrt(2 * len(ks))
    values = scale * (
        rng.standard_normal(len(ks)) + 1j * rng.standard_normal(len(ks))
    )
    return FourierState(dict(zip(ks, values.tolist())))


@pytest.mark.slow
class TestOraclesAtScale:
    """Test every operator against the naive sums on 50 inputs at m = 12."""

    CASES = 50
    M = 12
    TOL = 1e-12

    @pytest.fixture(scope="class")
    def inputs(self):
        """Fifty quadruples of dense random states."""
        rng = np.random.default_rng(12)
        return [
            tuple(_random_complex(rng, self.M) for _ in range(4))
            for _ in range(self.CASES)
        ]

    def test_bilinear(self, inputs):
        """Test B1 and B2 on every input."""
        for u, v, _, _ in inputs:
            oracles.assert_matches(b1(u, v, T), oracles.b1(u, v, T), self.TOL)
            oracles.assert_matches(b2(u, v, T), oracles.b2(u, v, T), self.TOL)

    def test_trilinear(self, inputs):
        """Test R3 and B3 on every input."""
        for u, v, w, _ in inputs:
            oracles.assert_matches(
                r3(u, v, w, T), oracles.r3(u, v, w, T), self.TOL
            )
            oracles.assert_matches(
                b3(u, v, w, T), oracles.b3(u, v, w, T), self.TOL
            )

    def test_quadrilinear(self, inputs):
        """Test B4 on every input."""
        for u, v, w, phi in inputs:
            oracles.assert_matches(
                b4(u, v, w, phi, T), oracles.b4(u, v, w, phi, T), self.TOL
            )

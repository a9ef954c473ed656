"""Power rule and the interference-confidence threshold solver."""

import math

import numpy as np
import pytest

from cogharq.analytics import InterferenceDistribution, relaxed_cdf_interference
from cogharq.channel import ChannelParams, CsiModel, sample_gains
from cogharq.power import (SILENT, PowerPolicy, make_policy,
                           solve_effective_threshold, transmit_power)


@pytest.fixture
def policy():
    return PowerPolicy(p_max=2.0, i_p=1.0, pi=0.0, i_p_effective=1.0)


class TestTransmitPower:
    def test_zero_estimate_gives_peak(self, policy):
        assert transmit_power(0.0, policy) == 2.0

    def test_boundary_estimate(self, policy):
        assert transmit_power(0.5, policy) == 2.0  # i_p_eff / p_max

    def test_interference_arm(self, policy):
        assert transmit_power(1.0, policy) == pytest.approx(1.0)
        assert transmit_power(4.0, policy) == pytest.approx(0.25)

    def test_vectorized(self, policy):
        out = transmit_power(np.array([0.0, 0.5, 2.0]), policy)
        assert np.allclose(out, [2.0, 2.0, 0.5])

    def test_negative_rejected(self, policy):
        with pytest.raises(ValueError):
            transmit_power(-1.0, policy)


class TestThresholdSolver:
    def test_perfect_csi_passthrough(self):
        for pi in (0.0, 0.5, 0.999):
            assert solve_effective_threshold(1.0, pi, 2.0, 1.0, 1.0) == 1.0

    def test_no_tightening_needed(self):
        dist = InterferenceDistribution(mu_sp=1.0, p_max=math.inf, i_p=1.0, beta=0.8)
        baseline = relaxed_cdf_interference(1.0, dist)
        i_hat = solve_effective_threshold(1.0, baseline - 0.05, math.inf, 0.8, 1.0)
        assert i_hat == 1.0

    def test_pi_one_silences(self):
        assert solve_effective_threshold(1.0, 1.0, math.inf, 0.8, 1.0) == SILENT

    @pytest.mark.parametrize("p_max", [math.inf, 2.0])
    def test_self_consistency(self, p_max):
        from cogharq.analytics import cdf_interference
        pi = 0.9
        i_hat = solve_effective_threshold(1.0, pi, p_max, 0.8, 1.0)
        assert 0.0 < i_hat < 1.0
        dist = InterferenceDistribution(mu_sp=1.0, p_max=p_max, i_p=i_hat, beta=0.8)
        f = (relaxed_cdf_interference if math.isinf(p_max) else cdf_interference)
        assert f(1.0, dist) == pytest.approx(pi, abs=1e-8)

    def test_monotone_in_pi(self):
        grid = np.linspace(0.05, 0.99, 20)
        caps = [solve_effective_threshold(1.0, pi, math.inf, 0.8, 1.0) for pi in grid]
        assert all(b <= a + 1e-12 for a, b in zip(caps, caps[1:]))

    def test_empirical_confidence(self):
        # solved cap must hold the interference under i_p with probability pi
        n = 1_000_000
        params = ChannelParams(mu_ss=1.0, mu_ps=1.0, mu_sp=1.0, n0=1.0, p_p=0.5)
        for pi in (0.7, 0.9):
            pol = make_policy(math.inf, 1.0, pi, 0.8, 1.0)
            g = sample_gains(params, CsiModel(0.8), np.random.default_rng(31), n)
            phi = transmit_power(g.g_tilde_sp, pol) * g.g_sp
            sigma = math.sqrt(pi * (1 - pi) / n)
            below = (phi < 1.0).mean()
            assert pi - 3 * sigma <= below <= 1.0

    def test_violation_rate_bound(self):
        n = 1_000_000
        params = ChannelParams(mu_ss=1.0, mu_ps=1.0, mu_sp=1.0, n0=1.0, p_p=0.5)
        pi = 0.9
        pol = make_policy(2.0, 1.0, pi, 0.8, 1.0)
        g = sample_gains(params, CsiModel(0.8), np.random.default_rng(32), n)
        phi = transmit_power(g.g_tilde_sp, pol) * g.g_sp
        viol = (phi >= 1.0).mean()
        assert viol <= (1 - pi) + 3 * math.sqrt(pi * (1 - pi) / n)

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            solve_effective_threshold(1.0, -0.1, 2.0, 0.8, 1.0)
        with pytest.raises(ValueError):
            solve_effective_threshold(1.0, 0.9, 2.0, 1.5, 1.0)


class TestPolicy:
    def test_make_policy_solves(self):
        pol = make_policy(math.inf, 1.0, 0.9, 0.8, 1.0)
        assert 0.0 < pol.i_p_effective < pol.i_p

    def test_effective_cap_bounds_enforced(self):
        with pytest.raises(ValueError):
            PowerPolicy(p_max=2.0, i_p=1.0, pi=0.0, i_p_effective=1.5)

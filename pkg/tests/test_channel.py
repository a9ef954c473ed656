"""Channel sampling vs its stated marginals and the correlated-pair density."""

import math

import numpy as np
import pytest
from scipy import stats
from scipy.integrate import dblquad, quad

from cogharq.channel import ChannelParams, CsiModel, joint_pdf_gsp, sample_gains


def rng_for(seed=0):
    return np.random.default_rng(seed)


class TestParams:
    @pytest.mark.parametrize("field", ["mu_ss", "mu_ps", "mu_sp", "n0", "p_p"])
    def test_positive_required(self, field):
        kwargs = dict(mu_ss=1.0, mu_ps=1.0, mu_sp=1.0, n0=1.0, p_p=0.5)
        kwargs[field] = 0.0
        with pytest.raises(ValueError):
            ChannelParams(**kwargs)

    @pytest.mark.parametrize("beta", [-0.1, 1.1, math.nan])
    def test_beta_range(self, beta):
        with pytest.raises(ValueError):
            CsiModel(beta=beta)


class TestSampling:
    def test_perfect_csi_estimate_is_exact(self, base_channel):
        g = sample_gains(base_channel, CsiModel(1.0), rng_for(1), 10_000)
        assert np.array_equal(g.g_sp, g.g_tilde_sp)

    def test_zero_beta_uncorrelated(self, base_channel):
        g = sample_gains(base_channel, CsiModel(0.0), rng_for(2), 1_000_000)
        corr = np.corrcoef(g.g_sp, g.g_tilde_sp)[0, 1]
        assert abs(corr) < 0.01

    def test_estimate_marginal_mean_preserved(self, base_channel):
        g = sample_gains(base_channel, CsiModel(0.8), rng_for(3), 1_000_000)
        assert g.g_tilde_sp.mean() == pytest.approx(1.0, abs=0.005)

    def test_estimate_marginal_is_exponential(self, base_channel):
        g = sample_gains(base_channel, CsiModel(0.8), rng_for(4), 200_000)
        d, _ = stats.kstest(g.g_tilde_sp, "expon", args=(0, base_channel.mu_sp))
        assert d <= 0.004

    def test_gss_ks_distance(self):
        params = ChannelParams(mu_ss=1.7, mu_ps=1.0, mu_sp=1.0, n0=1.0, p_p=0.5)
        g = sample_gains(params, CsiModel(1.0), rng_for(5), 1_000_000)
        d, _ = stats.kstest(g.g_ss, "expon", args=(0, 1.7))
        assert d <= 0.002

    def test_fixed_seed_reproducible(self, base_channel, partial_csi):
        a = sample_gains(base_channel, partial_csi, rng_for(6), 10_000)
        b = sample_gains(base_channel, partial_csi, rng_for(6), 10_000)
        for fa, fb in zip((a.g_ss, a.g_ps, a.g_sp, a.g_tilde_sp),
                          (b.g_ss, b.g_ps, b.g_sp, b.g_tilde_sp)):
            assert np.array_equal(fa, fb)

    def test_joint_histogram_matches_density(self, base_channel):
        # chi-square on a 20x20 grid over [0,4]^2; expected cell masses from
        # trapezoid integration of the closed-form joint density
        csi = CsiModel(0.8)
        g = sample_gains(base_channel, csi, rng_for(7), 1_000_000)
        edges = np.linspace(0.0, 4.0, 21)
        counts, _, _ = np.histogram2d(g.g_sp, g.g_tilde_sp, bins=[edges, edges])

        fine = np.linspace(0.0, 4.0, 401)
        yy, zz = np.meshgrid(fine, fine, indexing="ij")
        dens = joint_pdf_gsp(yy, zz, base_channel, csi)
        cell = np.zeros((20, 20))
        for i in range(20):
            for j in range(20):
                sub = dens[20 * i:20 * i + 21, 20 * j:20 * j + 21]
                cell[i, j] = np.trapezoid(np.trapezoid(sub, fine[20 * j:20 * j + 21], axis=1),
                                          fine[20 * i:20 * i + 21])
        n_in = counts.sum()
        expected = cell / cell.sum() * n_in
        chi2, p = stats.chisquare(counts.ravel(), expected.ravel())
        assert p > 0.01, f"chi2={chi2:.1f}, p={p:.4f}"


class TestJointPdf:
    def test_independence_limit_small_beta(self, base_channel):
        val = joint_pdf_gsp(0.7, 1.3, base_channel, CsiModel(1e-6))
        indep = math.exp(-(0.7 + 1.3)) / 1.0
        assert val == pytest.approx(indep, rel=1e-6)

    def test_degenerate_beta_rejected(self, base_channel):
        for beta in (0.0, 1.0):
            with pytest.raises(ValueError):
                joint_pdf_gsp(1.0, 1.0, base_channel, CsiModel(beta))

    def test_normalization(self, base_channel):
        csi = CsiModel(0.8)
        total, _ = dblquad(lambda z, y: joint_pdf_gsp(y, z, base_channel, csi),
                           0.0, 20.0, 0.0, 20.0, epsabs=1e-6)
        assert total == pytest.approx(1.0, abs=1e-4)

    @pytest.mark.parametrize("y", [0.5, 1.0, 2.0])
    def test_marginal_is_exponential(self, base_channel, y):
        csi = CsiModel(0.8)
        marg, _ = quad(lambda z: joint_pdf_gsp(y, z, base_channel, csi),
                       0.0, 60.0, limit=300, epsabs=1e-10)
        assert marg == pytest.approx(math.exp(-y), abs=1e-6)

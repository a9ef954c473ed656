"""Rayleigh block-fading channel model for the underlay spectrum-sharing link.

Holds the fading/noise parameterization and the sampler for all channel
gains, including the correlated pair (g_sp, g_tilde_sp) that models the
imperfect SU-PU channel estimate at the secondary transmitter:

    h_tilde = beta * h + sqrt(1 - beta^2) * eps,   eps ~ CN(0, mu_sp)

The estimate keeps the exponential marginal with mean mu_sp for any beta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .specfun import bessel_i0_scaled


@dataclass(frozen=True)
class ChannelParams:
    """Means of the exponential power gains plus noise and PU power (linear)."""

    mu_ss: float
    mu_ps: float
    mu_sp: float
    n0: float
    p_p: float

    def __post_init__(self):
        for name in ("mu_ss", "mu_ps", "mu_sp", "n0", "p_p"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise ValueError(f"ChannelParams.{name} must be a positive finite number, got {v!r}")


@dataclass(frozen=True)
class CsiModel:
    """Quality of the SU-PU channel estimate: beta=1 perfect, beta=0 useless."""

    beta: float

    def __post_init__(self):
        if not (0.0 <= self.beta <= 1.0):
            raise ValueError(f"CsiModel.beta must be in [0, 1], got {self.beta!r}")


@dataclass(frozen=True)
class GainSample:
    """Squared channel magnitudes; each field is an ndarray of equal shape."""

    g_ss: np.ndarray
    g_ps: np.ndarray
    g_sp: np.ndarray
    g_tilde_sp: np.ndarray


def sample_gains(params: ChannelParams, csi: CsiModel, rng: np.random.Generator,
                 n: int = 1) -> GainSample:
    """Draw n i.i.d. fading blocks.

    g_ss and g_ps are exponential with means mu_ss / mu_ps.  The (g_sp,
    g_tilde_sp) pair is built at the complex-amplitude level: h_sp and the
    estimation noise are circular Gaussians with per-component variance
    mu_sp / 2, mixed with weight (beta, sqrt(1 - beta^2)) and then squared.
    """
    g_ss = rng.exponential(params.mu_ss, n)
    g_ps = rng.exponential(params.mu_ps, n)

    sigma = math.sqrt(params.mu_sp / 2.0)
    hr = rng.normal(0.0, sigma, n)
    hi = rng.normal(0.0, sigma, n)
    beta = csi.beta
    if beta == 1.0:
        tr, ti = hr, hi
    else:
        s = math.sqrt(1.0 - beta * beta)
        er = rng.normal(0.0, sigma, n)
        ei = rng.normal(0.0, sigma, n)
        tr = beta * hr + s * er
        ti = beta * hi + s * ei
    g_sp = hr * hr + hi * hi
    g_tilde_sp = tr * tr + ti * ti
    return GainSample(g_ss=g_ss, g_ps=g_ps, g_sp=g_sp, g_tilde_sp=g_tilde_sp)


def joint_pdf_gsp(y, z, params: ChannelParams, csi: CsiModel):
    """Joint density of (g_sp, g_tilde_sp) for strictly partial CSI.

    f(y, z) = exp(-(y+z)/((1-beta^2) mu)) / ((1-beta^2) mu^2)
              * I0(2 beta sqrt(y z) / ((1-beta^2) mu))

    Only defined for 0 < beta < 1; at beta in {0, 1} the pair degenerates
    (independent / identical) and callers must branch instead.
    """
    beta = csi.beta
    if beta <= 0.0 or beta >= 1.0:
        raise ValueError(f"joint_pdf_gsp requires 0 < beta < 1, got {beta}")
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    if np.any(y < 0) or np.any(z < 0):
        raise ValueError("joint_pdf_gsp requires nonnegative gains")
    mu = params.mu_sp
    w = (1.0 - beta * beta) * mu
    arg = 2.0 * beta * np.sqrt(y * z) / w
    # scaled Bessel keeps the product finite when arg is large
    i0e = np.vectorize(bessel_i0_scaled, otypes=[float])(arg)
    val = np.exp(-(y + z) / w + arg) * i0e / (w * mu)
    return val if val.shape else float(val)

"""Closed-form CDFs for the secondary link under the min(P_max, I/g) power rule.

Three distributions are covered:

* ``cdf_z``      -- Z = P_s * g_ss, the effective received signal power.
* ``cdf_omega``  -- Omega = P_s * g_ss / (P_p * g_ps + N0), the SU SINR.
* ``cdf_interference`` / ``relaxed_cdf_interference`` -- phi = P_s * g_sp,
  the instantaneous interference power landing at the primary receiver when
  the power rule is driven by the imperfect estimate g_tilde_sp.

Every formula here has a Monte Carlo / quadrature twin in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .channel import ChannelParams
from .specfun import bessel_i0_scaled, exp_integral_gamma0_scaled, marcum_q1

_CDF_SLACK = 1e-9  # numerical tolerance before a value outside [0,1] is an error


def _clamp_unit(v: float, where: str) -> float:
    if v < -_CDF_SLACK or v > 1.0 + _CDF_SLACK:
        raise ArithmeticError(f"{where} produced {v}, outside [0, 1]")
    return min(max(v, 0.0), 1.0)


@dataclass(frozen=True)
class OmegaDistribution:
    """SINR distribution under peak power p_max and interference cap i_p_effective.

    ``i_p_effective`` is the threshold actually inside the transmit rule
    (the tightened one when a confidence level is enforced).  ``p_max`` may
    be ``inf`` for the relaxed-peak regime; ``i_p_effective`` may be ``inf``
    for the peak-power-only regime, but not both.
    """

    params: ChannelParams
    p_max: float
    i_p_effective: float

    def __post_init__(self):
        if not self.p_max > 0:
            raise ValueError(f"p_max must be positive, got {self.p_max!r}")
        if not self.i_p_effective >= 0:
            raise ValueError(f"i_p_effective must be >= 0, got {self.i_p_effective!r}")
        if math.isinf(self.p_max) and math.isinf(self.i_p_effective):
            raise ValueError("p_max and i_p_effective cannot both be infinite")


def cdf_z(z: float, dist: OmegaDistribution) -> float:
    """CDF of Z = P_s * g_ss at z >= 0."""
    if z < 0:
        raise ValueError(f"cdf_z requires z >= 0, got {z}")
    if z == 0.0:
        return 0.0
    p = dist.params
    ip, pmax = dist.i_p_effective, dist.p_max
    if ip == 0.0:
        return 1.0  # transmitter silenced
    if math.isinf(ip):
        return _clamp_unit(1.0 - math.exp(-z / (p.mu_ss * pmax)), "cdf_z")
    if math.isinf(pmax):
        # Z = i_p * g_ss / g_tilde, a ratio of independent exponentials
        return _clamp_unit(1.0 - 1.0 / (1.0 + p.mu_sp * z / (p.mu_ss * ip)), "cdf_z")
    e_cap = math.exp(-ip / (p.mu_sp * pmax))
    val = (1.0
           - math.exp(-z / (p.mu_ss * pmax)) * (1.0 - e_cap)
           - math.exp(-(ip / (p.mu_sp * pmax) + z / (p.mu_ss * pmax)))
           / (1.0 + p.mu_sp * z / (p.mu_ss * ip)))
    return _clamp_unit(val, "cdf_z")


def cdf_omega(x: float, dist: OmegaDistribution) -> float:
    """CDF of the SINR Omega = Z / (P_p * g_ps + N0) at x >= 0.

    The x = 0 case is an exact branch (the formula divides by x), and the
    term exp(large) * Gamma(0, large) is evaluated through the scaled
    exponential integral so nothing overflows for small x.
    """
    if x < 0:
        raise ValueError(f"cdf_omega requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    if math.isinf(x):
        return 1.0
    p = dist.params
    ip, pmax = dist.i_p_effective, dist.p_max
    if ip == 0.0:
        return 1.0
    if math.isinf(ip):
        val = 1.0 - (math.exp(-p.n0 * x / (p.mu_ss * pmax))
                     / (1.0 + p.p_p * p.mu_ps * x / (p.mu_ss * pmax)))
        return _clamp_unit(val, "cdf_omega")
    coef = p.mu_ss * ip / (p.mu_sp * p.mu_ps * p.p_p * x)
    a = p.n0 / (p.p_p * p.mu_ps) + coef
    if math.isinf(pmax):
        val = 1.0 - coef * exp_integral_gamma0_scaled(a)
        return _clamp_unit(val, "cdf_omega")
    e_cap = math.exp(-ip / (p.mu_sp * pmax))
    t2 = ((1.0 - e_cap) * math.exp(-p.n0 * x / (p.mu_ss * pmax))
          / (1.0 + p.p_p * p.mu_ps * x / (p.mu_ss * pmax)))
    b = ((1.0 / (p.p_p * p.mu_ps) + x / (p.mu_ss * pmax))
         * (p.n0 + p.mu_ss * ip / (p.mu_sp * x)))
    t3 = coef * math.exp(a - b) * exp_integral_gamma0_scaled(b)  # a <= b always
    return _clamp_unit(1.0 - t2 - t3, "cdf_omega")


def cdf_omega_by_quadrature(x: float, dist: OmegaDistribution) -> float:
    """Independent route: integrate F_Z(x (P_p z + N0)) over the g_ps density."""
    if x < 0:
        raise ValueError(f"cdf_omega_by_quadrature requires x >= 0, got {x}")
    if x == 0.0:
        return 0.0
    p = dist.params
    f = lambda z: math.exp(-z / p.mu_ps) / p.mu_ps * cdf_z(x * (p.p_p * z + p.n0), dist)
    val, _ = quad(f, 0.0, 60.0 * p.mu_ps, limit=400)
    return val


@dataclass(frozen=True)
class InterferenceDistribution:
    """Distribution of phi = P_s * g_sp when the power rule uses the estimate.

    ``i_p`` is the threshold inside the rule P_s = min(p_max, i_p / g_tilde);
    the CDF is evaluated at arbitrary interference levels x, which is what
    lets the confidence solver query F(threshold | candidate rule cap).
    """

    mu_sp: float
    p_max: float
    i_p: float
    beta: float

    def __post_init__(self):
        if not self.mu_sp > 0:
            raise ValueError(f"mu_sp must be positive, got {self.mu_sp!r}")
        if not self.p_max > 0:
            raise ValueError(f"p_max must be positive, got {self.p_max!r}")
        if not (self.i_p > 0 and math.isfinite(self.i_p)):
            raise ValueError(f"i_p must be positive and finite, got {self.i_p!r}")
        if not (0.0 <= self.beta <= 1.0):
            raise ValueError(f"beta must be in [0, 1], got {self.beta!r}")


def _utr(x: float, dist: InterferenceDistribution):
    mu, ip, beta = dist.mu_sp, dist.i_p, dist.beta
    w = mu * (1.0 - beta * beta)
    u = (2.0 / mu) * (1.0 + beta * beta * mu / w + ip * mu / (x * w))
    t = u - 4.0 * ip / (w * x)
    # algebraically r^2 = u^2 - 16 beta^2 ip / (x w^2) = t^2 + 16 ip / (mu w x),
    # and the latter form cannot cancel to a negative value
    r = math.sqrt(t * t + 16.0 * ip / (mu * w * x))
    return w, u, t, r


def cdf_interference(x: float, dist: InterferenceDistribution) -> float:
    """CDF of the PU received interference phi at level x > 0.

    Uses the five-term closed form for 0 < beta < 1; beta = 1 reduces to a
    truncated exponential with an atom at i_p, and beta = 0 falls back to
    1-D quadrature over the independent estimate.
    """
    if not x > 0:
        raise ValueError(f"cdf_interference requires x > 0, got {x}")
    mu, pmax, ip, beta = dist.mu_sp, dist.p_max, dist.i_p, dist.beta
    if beta == 1.0:
        if x >= ip:
            return 1.0
        if math.isinf(pmax):
            return 0.0  # phi = i_p exactly
        return 1.0 - math.exp(-x / (mu * pmax))
    if beta == 0.0:
        return _cdf_interference_beta0(x, dist)
    if math.isinf(pmax):
        return relaxed_cdf_interference(x, dist)
    w, u, t, r = _utr(x, dist)
    exp_peak = math.exp(-x / (mu * pmax))
    q1 = marcum_q1(math.sqrt(max(u - r, 0.0) * x / (2.0 * pmax)),
                   math.sqrt((u + r) * x / (2.0 * pmax)))
    q2 = marcum_q1(beta * math.sqrt(2.0 * x / (pmax * w)),
                   math.sqrt(2.0 * ip / (pmax * w)))
    arg = 2.0 * beta * math.sqrt(x * ip) / (pmax * w)
    # exponent arg - u x / (2 pmax) <= -x / (mu pmax) < 0 by AM-GM
    i0_term = bessel_i0_scaled(arg) * math.exp(arg - u * x / (2.0 * pmax))
    val = (1.0 - exp_peak + (t / r) * q1 + exp_peak * q2
           - 0.5 * (1.0 + t / r) * i0_term)
    return _clamp_unit(val, "cdf_interference")


def _cdf_interference_beta0(x: float, dist: InterferenceDistribution) -> float:
    # independent estimate: phi = min(p_max, i_p / g_tilde) * g_sp
    mu, pmax, ip = dist.mu_sp, dist.p_max, dist.i_p

    def integrand(gt):
        ps = min(pmax, ip / gt) if gt > 0 else pmax
        return math.exp(-gt / mu) / mu * (1.0 - math.exp(-x / (mu * ps)))

    val, _ = quad(integrand, 0.0, 60.0 * mu, limit=400,
                  points=[ip / pmax] if math.isfinite(pmax) else None)
    return _clamp_unit(val, "cdf_interference(beta=0)")


def relaxed_cdf_interference(x: float, dist: InterferenceDistribution) -> float:
    """Peak-power-free limit of the interference CDF: (1 + t/r) / 2."""
    if not x > 0:
        raise ValueError(f"relaxed_cdf_interference requires x > 0, got {x}")
    if not (0.0 < dist.beta < 1.0):
        raise ValueError(f"relaxed_cdf_interference requires 0 < beta < 1, got {dist.beta}")
    _, _, t, r = _utr(x, dist)
    return _clamp_unit(0.5 * (1.0 + t / r), "relaxed_cdf_interference")

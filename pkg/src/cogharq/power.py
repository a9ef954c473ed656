"""Secondary-user power policy and the interference-confidence solver.

The transmit rule is P_s = min(p_max, i_p_effective / g_tilde_sp).  With a
perfect estimate the interference never exceeds i_p; with partial CSI the
cap inside the rule is tightened to the largest i_p_effective <= i_p such
that Pr{phi < i_p} >= pi, found by root-solving the interference CDF.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .analytics import InterferenceDistribution, cdf_interference, relaxed_cdf_interference

SOLVER_TOL = 1e-8

#: Sentinel i_p_effective meaning "no positive cap satisfies the confidence
#: level"; the transmitter stays silent and the throughput is zero.
SILENT = 0.0


@dataclass(frozen=True)
class PowerPolicy:
    p_max: float
    i_p: float
    pi: float
    i_p_effective: float

    def __post_init__(self):
        if not self.p_max > 0:
            raise ValueError(f"p_max must be positive, got {self.p_max!r}")
        if not (self.i_p > 0):
            raise ValueError(f"i_p must be positive, got {self.i_p!r}")
        if not (0.0 <= self.pi <= 1.0):
            raise ValueError(f"pi must be in [0, 1], got {self.pi!r}")
        if not (0.0 <= self.i_p_effective <= self.i_p):
            raise ValueError(
                f"i_p_effective must lie in [0, i_p], got {self.i_p_effective!r}")


def transmit_power(g_tilde_sp, policy: PowerPolicy):
    """P_s = min(p_max, i_p_effective / g_tilde_sp); p_max when the estimate is 0.

    Accepts scalars or arrays.
    """
    g = np.asarray(g_tilde_sp, dtype=float)
    if np.any(g < 0):
        raise ValueError("transmit_power requires g_tilde_sp >= 0")
    with np.errstate(divide="ignore"):
        cap = np.where(g > 0, policy.i_p_effective / np.where(g > 0, g, 1.0), np.inf)
    ps = np.minimum(policy.p_max, cap)
    return float(ps) if ps.shape == () else ps


def solve_effective_threshold(i_p: float, pi: float, p_max: float,
                              beta: float, mu_sp: float) -> float:
    """Largest cap i_hat <= i_p with Pr{phi < i_p | cap = i_hat} >= pi.

    Returns i_p unchanged when the estimate is perfect or the confidence is
    already met, and the SILENT sentinel (0.0) when pi = 1 with beta < 1,
    where no positive cap works.  Otherwise solves F(i_p | i_hat) = pi by
    Brent's method, relying on F being decreasing in the cap.
    """
    if not (0.0 <= pi <= 1.0):
        raise ValueError(f"pi must be in [0, 1], got {pi!r}")
    if not (0.0 <= beta <= 1.0):
        raise ValueError(f"beta must be in [0, 1], got {beta!r}")
    if beta == 1.0:
        return i_p
    if pi >= 1.0:
        return SILENT

    relaxed = math.isinf(p_max)

    def confidence(i_hat: float) -> float:
        dist = InterferenceDistribution(mu_sp=mu_sp, p_max=p_max, i_p=i_hat, beta=beta)
        if relaxed:
            return relaxed_cdf_interference(i_p, dist)
        return cdf_interference(i_p, dist)

    if confidence(i_p) >= pi:
        return i_p
    lo = 1e-12 * i_p
    if confidence(lo) < pi:
        return SILENT
    i_hat = brentq(lambda c: confidence(c) - pi, lo, i_p, xtol=1e-15, rtol=1e-15)
    if abs(confidence(i_hat) - pi) > SOLVER_TOL:
        raise ArithmeticError(
            f"confidence solver did not converge: residual at {i_hat} exceeds {SOLVER_TOL}")
    return i_hat


def make_policy(p_max: float, i_p: float, pi: float, beta: float, mu_sp: float) -> PowerPolicy:
    """Build a PowerPolicy with the confidence-tightened cap already solved."""
    i_hat = solve_effective_threshold(i_p, pi, p_max, beta, mu_sp)
    return PowerPolicy(p_max=p_max, i_p=i_p, pi=pi, i_p_effective=i_hat)

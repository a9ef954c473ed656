"""Scalar special functions used by the closed-form CDFs.

Three functions are needed: the exponential integral E1 (equivalently the
upper incomplete gamma at order zero), the modified Bessel function I0, and
the first-order Marcum Q-function.  They are implemented from scratch so the
numerical branches (series / continued fraction / asymptotic) can be chosen
for the argument ranges the interference CDF actually produces, and so each
branch can be checked against an independent quadrature oracle in the tests.

All functions are pure scalar float -> float maps; NaN and infinite inputs
are rejected rather than propagated.
"""

from __future__ import annotations

import math

EULER_GAMMA = 0.5772156649015328606

_E1_SWITCH = 1.0       # series below, continued fraction above
_I0_SWITCH = 35.0      # power series below, asymptotic expansion above
_EPS = 2.220446049250313e-16


def _require_finite(name: str, x: float) -> float:
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        raise ValueError(f"{name} must be finite, got {x!r}")
    return x


def _e1_series(x: float) -> float:
    # E1(x) = -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k * k!),  x < 1
    total = -EULER_GAMMA - math.log(x)
    term = 1.0
    for k in range(1, 60):
        term *= -x / k
        delta = -term / k
        total += delta
        if abs(delta) < _EPS * abs(total):
            break
    return total

def _e1_cf(x: float) -> float:
    # Modified Lentz evaluation of the continued fraction for e^x * E1(x):
    #   e^x E1(x) = 1 / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...))))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for k in range(1, 200):
        a = -float(k * k)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    return h


def exp_integral_gamma0(x: float) -> float:
    """Upper incomplete gamma of order zero: integral of e^(-u)/u over [x, inf).

    Equals the exponential integral E1(x).  Diverges as x -> 0+, so the
    domain is strictly positive.
    """
    x = _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"exp_integral_gamma0 requires x > 0, got {x}")
    if x < _E1_SWITCH:
        return _e1_series(x)
    return math.exp(-x) * _e1_cf(x)


def exp_integral_gamma0_scaled(x: float) -> float:
    """e^x * E1(x), stable for large x where E1 itself underflows."""
    x = _require_finite("x", x)
    if x <= 0.0:
        raise ValueError(f"exp_integral_gamma0_scaled requires x > 0, got {x}")
    if x < _E1_SWITCH:
        return math.exp(x) * _e1_series(x)
    return _e1_cf(x)


def _i0_series(x: float) -> float:
    # sum_k (x/2)^(2k) / (k!)^2; converges for all x, used where e^x is tame
    q = 0.25 * x * x
    term = 1.0
    total = 1.0
    for k in range(1, 400):
        term *= q / (k * k)
        total += term
        if term < _EPS * total:
            break
    return total

def _i0e_asymptotic(x: float) -> float:
    # e^(-x) I0(x) ~ (2 pi x)^(-1/2) * sum_k prod_{j<=k}(2j-1)^2 / (k! (8x)^k)
    total = 1.0
    term = 1.0
    for k in range(1, 40):
        factor = (2 * k - 1) ** 2 / (8.0 * x * k)
        if factor >= 1.0:  # divergent tail reached
            break
        term *= factor
        total += term
        if term < _EPS * total:
            break
    return total / math.sqrt(2.0 * math.pi * x)


def bessel_i0_scaled(x: float) -> float:
    """e^(-x) * I0(x); never overflows, decays like 1/sqrt(x)."""
    x = _require_finite("x", x)
    if x < 0.0:
        raise ValueError(f"bessel_i0_scaled requires x >= 0, got {x}")
    if x <= _I0_SWITCH:
        return math.exp(-x) * _i0_series(x)
    return _i0e_asymptotic(x)


def bessel_i0(x: float) -> float:
    """Modified Bessel function of the first kind, order zero."""
    x = _require_finite("x", x)
    if x < 0.0:
        raise ValueError(f"bessel_i0 requires x >= 0, got {x}")
    if x <= _I0_SWITCH:
        return _i0_series(x)
    return math.exp(x) * _i0e_asymptotic(x)


def _marcum_q1_series(a: float, b: float) -> float:
    # Q1(a,b) = sum_k Poisson(a^2/2)_k * Q_Gamma(k+1, b^2/2), with
    # Q_Gamma(k+1, y) = e^(-y) sum_{j<=k} y^j/j!  (both built by recurrence).
    h = 0.5 * a * a
    y = 0.5 * b * b
    pois = math.exp(-h)          # Poisson pmf at k
    gterm = math.exp(-y)         # e^(-y) y^k / k!
    gcum = gterm                 # Q_Gamma(k+1, y)
    total = pois * gcum
    cum_pois = pois
    kmax = int(h + 12.0 * math.sqrt(h + 1.0) + 60.0)
    for k in range(1, kmax):
        pois *= h / k
        gterm *= y / k
        gcum += gterm
        total += pois * gcum
        cum_pois += pois
        if 1.0 - cum_pois < 1e-17:
            break
    return min(total, 1.0)


def marcum_q1(a: float, b: float) -> float:
    """First-order Marcum Q-function Q1(a, b), in [0, 1].

    Computed by the canonical Poisson-weighted incomplete-gamma series; for
    a >> b the complementary symmetry Q1(a,b) + Q1(b,a) = 1 + e^(-(a-b)^2/2)
    * [e^(-ab) I0(ab)] is used so the Poisson weights never underflow.
    """
    a = _require_finite("a", a)
    b = _require_finite("b", b)
    if a < 0.0 or b < 0.0:
        raise ValueError(f"marcum_q1 requires a, b >= 0, got ({a}, {b})")
    if b == 0.0:
        return 1.0
    if 0.5 * a * a > 650.0 and a > b:
        cross = bessel_i0_scaled(a * b) * math.exp(-0.5 * (a - b) ** 2)
        return min(max(1.0 + cross - _marcum_q1_series(b, a), 0.0), 1.0)
    return _marcum_q1_series(a, b)

"""Decode probabilities, outage and throughput for the two HARQ protocols.

``rtd`` retransmits the same codeword and the receiver combines copies, so
the SINR after m rounds is m * Omega.  ``inr`` sends fresh parity, so the
packet decodes once the accumulated mutual information passes the payload.
Both reduce to the same single-shot scheme at m_max = 0.

Throughput comes in two flavors matching the traffic model: ``continuous``
(back-to-back packets, throughput = expected per-packet rate) and
``bursting`` (one packet per fading block, renewal-reward ratio of
delivered nats to channel uses).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

PROTOCOLS = ("rtd", "inr")

_CLOSURE_TOL = 1e-9


@dataclass(frozen=True)
class RateSchedule:
    """Payload of d_nats encoded over per-round codeword lengths (channel uses).

    The equivalent rate after m rounds is d_nats / sum(lengths[:m]); it is
    strictly decreasing whenever lengths are positive, which is enforced.
    """

    d_nats: float
    lengths: tuple[float, ...]

    def __post_init__(self):
        if not (self.d_nats > 0 and math.isfinite(self.d_nats)):
            raise ValueError(f"d_nats must be positive and finite, got {self.d_nats!r}")
        if not self.lengths:
            raise ValueError("rate schedule needs at least one round")
        if any(not (l > 0 and math.isfinite(l)) for l in self.lengths):
            raise ValueError(f"all round lengths must be positive, got {self.lengths!r}")

    @classmethod
    def equal_length(cls, initial_rate: float, rounds: int) -> "RateSchedule":
        """Unit-length rounds with the given first-round rate (in npcu)."""
        return cls(d_nats=initial_rate, lengths=(1.0,) * rounds)

    @property
    def cumulative_lengths(self) -> tuple[float, ...]:
        out, acc = [], 0.0
        for l in self.lengths:
            acc += l
            out.append(acc)
        return tuple(out)

    @property
    def rates(self) -> tuple[float, ...]:
        return tuple(self.d_nats / c for c in self.cumulative_lengths)


@dataclass(frozen=True)
class HarqConfig:
    protocol: str
    m_max: int
    schedule: RateSchedule
    coherence_length: float | None = None  # informational; cancels in the analysis

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise ValueError(f"protocol must be one of {PROTOCOLS}, got {self.protocol!r}")
        if self.m_max < 0:
            raise ValueError(f"m_max must be >= 0, got {self.m_max!r}")
        if len(self.schedule.lengths) != self.m_max + 1:
            raise ValueError(
                f"schedule has {len(self.schedule.lengths)} rounds, expected m_max+1 = {self.m_max + 1}")
        if self.protocol == "rtd":
            l0 = self.schedule.lengths[0]
            if any(abs(l - l0) > 1e-12 * l0 for l in self.schedule.lengths):
                raise ValueError("rtd repeats one codeword: all round lengths must be equal")

    @classmethod
    def equal_length(cls, protocol: str, m_max: int, initial_rate: float) -> "HarqConfig":
        return cls(protocol=protocol, m_max=m_max,
                   schedule=RateSchedule.equal_length(initial_rate, m_max + 1))


@dataclass(frozen=True)
class DecodeDistribution:
    """Pr{first decode at round m}, m = 1..m_max+1, plus the outage mass."""

    p_decode: tuple[float, ...]
    p_outage: float

    def __post_init__(self):
        if any(p < -_CLOSURE_TOL or p > 1 + _CLOSURE_TOL for p in self.p_decode):
            raise ValueError(f"decode probabilities outside [0, 1]: {self.p_decode!r}")
        if not (-_CLOSURE_TOL <= self.p_outage <= 1 + _CLOSURE_TOL):
            raise ValueError(f"outage probability outside [0, 1]: {self.p_outage!r}")
        total = sum(self.p_decode) + self.p_outage
        if abs(total - 1.0) > _CLOSURE_TOL:
            raise ValueError(f"decode masses sum to {total}, not 1")


def sinr_thresholds(config: HarqConfig) -> tuple[float, ...]:
    """Omega levels below which the packet is still undecoded after m rounds."""
    if config.protocol == "rtd":
        r = config.schedule.rates[0]  # initial rate; combining gives m * Omega
        return tuple((math.exp(r) - 1.0) / m for m in range(1, config.m_max + 2))
    return tuple(math.exp(rm) - 1.0 for rm in config.schedule.rates)


def decode_distribution(config: HarqConfig,
                        omega_cdf: Callable[[float], float]) -> DecodeDistribution:
    """Evaluate the per-round decode probabilities through an SINR CDF.

    The CDF may be the closed form or an empirical one; the first-round
    term uses F(inf) = 1 exactly so the masses telescope to 1.
    """
    thresholds = sinr_thresholds(config)
    f = [omega_cdf(x) for x in thresholds]
    prev = 1.0  # F at the (absent) round-0 threshold, i.e. F(inf)
    p_decode = []
    for fx in f:
        p_decode.append(prev - fx)
        prev = fx
    return DecodeDistribution(p_decode=tuple(p_decode), p_outage=f[-1])


def throughput_continuous(config: HarqConfig, dist: DecodeDistribution) -> float:
    """Expected per-packet rate: sum of R_m * Pr{decode at m} (npcu)."""
    rates = config.schedule.rates
    return sum(r * p for r, p in zip(rates, dist.p_decode))


def throughput_bursting(config: HarqConfig, dist: DecodeDistribution) -> float:
    """Delivered nats over expected channel uses, one packet per block (npcu)."""
    cum = config.schedule.cumulative_lengths
    used = sum(c * p for c, p in zip(cum, dist.p_decode)) + cum[-1] * dist.p_outage
    if used <= 0:
        raise ValueError("degenerate schedule: zero expected channel uses")
    return config.schedule.d_nats * (1.0 - dist.p_outage) / used

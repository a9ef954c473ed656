"""Throughput/outage analysis of HARQ over an underlay spectrum-sharing link,
with closed-form CDFs cross-validated against a Monte Carlo channel simulator."""

from .analytics import (InterferenceDistribution, OmegaDistribution, cdf_interference,
                        cdf_omega, cdf_z, relaxed_cdf_interference)
from .channel import ChannelParams, CsiModel, GainSample, joint_pdf_gsp, sample_gains
from .harq import (DecodeDistribution, HarqConfig, RateSchedule, decode_distribution,
                   throughput_bursting, throughput_continuous)
from .montecarlo import SimulationReport, SimulationSpec, empirical_cdf, run_simulation
from .power import PowerPolicy, make_policy, solve_effective_threshold, transmit_power
from .specfun import bessel_i0, bessel_i0_scaled, exp_integral_gamma0, marcum_q1

__version__ = "0.1.0"

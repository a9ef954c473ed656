"""Parameter sweeps, preset configurations and the self-validation suite.

A sweep walks one axis variable (interference cap, confidence level, PU
power, or SU peak power) over a grid, evaluates the closed-form throughput
and outage for every (protocol, retransmission budget, traffic model)
combination, optionally runs the Monte Carlo twin at each point, and emits
one CSV row per combination.

Presets reconstructing the reference figure panels ship as INI files next
to this module; user config files can include a preset and override keys.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, replace
from importlib import resources

import numpy as np

from .analytics import (InterferenceDistribution, OmegaDistribution,
                        cdf_interference, cdf_omega, relaxed_cdf_interference)
from .channel import ChannelParams, CsiModel
from .harq import (PROTOCOLS, HarqConfig, decode_distribution,
                   throughput_bursting, throughput_continuous)
from .montecarlo import SimulationSpec, empirical_cdf, run_simulation
from .power import make_policy

AXES = ("i_p", "pi", "p_p", "p_max")
TRAFFIC_MODELS = ("continuous", "bursting")

CSV_COLUMNS = (
    "axis_value", "protocol", "traffic_model", "M",
    "throughput_analytic", "outage_analytic",
    "throughput_mc", "throughput_mc_se", "outage_mc", "outage_mc_se",
    "interference_violation_mc",
    # grouping / bookkeeping extras (readers may ignore)
    "p_max", "i_p", "pi", "p_p", "beta", "status",
)


class ConfigError(Exception):
    """Invalid or unparsable sweep configuration."""


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: tuple[float, ...]
    mu_ss: float = 1.0
    mu_ps: float = 1.0
    mu_sp: float = 1.0
    n0: float = 1.0
    p_p: float = 0.5
    p_max_values: tuple[float, ...] = (2.0,)
    i_p_values: tuple[float, ...] = (1.0,)
    beta: float = 1.0
    pi: float = 0.0
    initial_rate: float = 0.5
    m_values: tuple[int, ...] = (0, 1, 2)
    protocols: tuple[str, ...] = PROTOCOLS
    traffic_models: tuple[str, ...] = TRAFFIC_MODELS
    panel: str = ""

    def __post_init__(self):
        if self.axis not in AXES:
            raise ConfigError(f"axis must be one of {AXES}, got {self.axis!r}")
        if len(self.grid) < 1 or any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ConfigError("grid must be nonempty and strictly increasing")
        for proto in self.protocols:
            if proto not in PROTOCOLS:
                raise ConfigError(f"unknown protocol {proto!r}")
        for tm in self.traffic_models:
            if tm not in TRAFFIC_MODELS:
                raise ConfigError(f"unknown traffic model {tm!r}")
        if not (0.0 <= self.beta <= 1.0):
            raise ConfigError(f"beta must be in [0, 1], got {self.beta}")
        if not (0.0 <= self.pi <= 1.0):
            raise ConfigError(f"pi must be in [0, 1], got {self.pi}")

    def channel(self, p_p: float | None = None) -> ChannelParams:
        return ChannelParams(mu_ss=self.mu_ss, mu_ps=self.mu_ps, mu_sp=self.mu_sp,
                             n0=self.n0, p_p=self.p_p if p_p is None else p_p)


@dataclass(frozen=True)
class PointParams:
    """Fully resolved scalar parameters for one sweep grid point."""

    channel: ChannelParams
    beta: float
    p_max: float
    i_p: float
    pi: float
    initial_rate: float


def resolve_point(spec: SweepSpec, axis_value: float,
                  p_max: float, i_p: float) -> PointParams:
    p_p, pi = spec.p_p, spec.pi
    if spec.axis == "i_p":
        i_p = axis_value
    elif spec.axis == "pi":
        pi = axis_value
    elif spec.axis == "p_p":
        p_p = axis_value
    elif spec.axis == "p_max":
        p_max = axis_value
    return PointParams(channel=spec.channel(p_p), beta=spec.beta,
                       p_max=p_max, i_p=i_p, pi=pi,
                       initial_rate=spec.initial_rate)


def analytic_point(pt: PointParams, protocol: str, m_max: int):
    """Decode distribution and both throughputs for one parameter point."""
    policy = make_policy(pt.p_max, pt.i_p, pt.pi, pt.beta, pt.channel.mu_sp)
    omega = OmegaDistribution(params=pt.channel, p_max=pt.p_max,
                              i_p_effective=policy.i_p_effective)
    config = HarqConfig.equal_length(protocol, m_max, pt.initial_rate)
    dist = decode_distribution(config, lambda x: cdf_omega(x, omega))
    return policy, config, dist, {
        "continuous": throughput_continuous(config, dist),
        "bursting": throughput_bursting(config, dist),
    }


def _mc_seed(base_seed: int, *key: int) -> int:
    return int(np.random.SeedSequence(base_seed, spawn_key=tuple(key)).generate_state(1)[0])


def run_sweep(spec: SweepSpec, with_mc: bool = False,
              mc_packets: int = 1_000_000, seed: int = 0) -> list[dict]:
    """Evaluate the sweep; returns one row dict per CSV row.

    A numerical failure at a grid point flags the affected rows via the
    ``status`` column and the sweep continues.
    """
    rows = []
    for gi, axis_value in enumerate(spec.grid):
        for pmi, p_max in enumerate(spec.p_max_values):
            for ipi, i_p in enumerate(spec.i_p_values):
                pt = resolve_point(spec, axis_value, p_max, i_p)
                for ki, protocol in enumerate(spec.protocols):
                    for m_max in spec.m_values:
                        base = {
                            "axis_value": axis_value, "protocol": protocol, "M": m_max,
                            "p_max": pt.p_max, "i_p": pt.i_p, "pi": pt.pi,
                            "p_p": pt.channel.p_p, "beta": pt.beta,
                        }
                        try:
                            policy, config, dist, eta = analytic_point(pt, protocol, m_max)
                        except Exception as exc:  # flag the row, keep sweeping
                            for tm in spec.traffic_models:
                                rows.append({**base, "traffic_model": tm,
                                             "status": f"error:{exc}"})
                            continue
                        report = None
                        if with_mc:
                            sim = SimulationSpec(
                                channel=pt.channel, csi=CsiModel(pt.beta),
                                policy=policy, harq=config,
                                n_packets=mc_packets,
                                seed=_mc_seed(seed, gi, pmi, ipi, ki, m_max))
                            report = run_simulation(sim)
                        for tm in spec.traffic_models:
                            row = {**base, "traffic_model": tm, "status": "ok",
                                   "throughput_analytic": eta[tm],
                                   "outage_analytic": dist.p_outage}
                            if report is not None:
                                row.update(
                                    throughput_mc=report.throughput(tm),
                                    throughput_mc_se=report.throughput_se(tm),
                                    outage_mc=report.outage_rate,
                                    outage_mc_se=report.outage_rate_se,
                                    interference_violation_mc=report.interference_violation_rate,
                                )
                            rows.append(row)
    return rows


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.10g}"
    return str(v)


def write_csv(rows: list[dict], stream: io.TextIOBase, spec: SweepSpec, seed: int) -> None:
    stream.write(f"# cogharq sweep: panel={spec.panel or 'custom'} axis={spec.axis} seed={seed}\n")
    stream.write("# units: throughput in npcu (nats per channel use); outage, pi and\n")
    stream.write("# interference_violation are probabilities; powers are linear (N0=1 scale)\n")
    stream.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        stream.write(",".join(_fmt(row.get(c)) for c in CSV_COLUMNS) + "\n")


# ---------------------------------------------------------------------------
# configuration files

_FLOAT_KEYS = ("mu_ss", "mu_ps", "mu_sp", "n0", "p_p", "beta", "pi", "initial_rate")
_LIST_KEYS = ("p_max_values", "i_p_values")


def _parse_grid(text: str) -> tuple[float, ...]:
    parts = text.split()
    if len(parts) == 4 and parts[0] in ("linspace", "logspace"):
        kind, a, b, n = parts[0], float(parts[1]), float(parts[2]), int(parts[3])
        fn = np.linspace if kind == "linspace" else np.geomspace
        return tuple(float(v) for v in fn(a, b, n))
    return tuple(float(v) for v in text.replace(",", " ").split())


def _preset_text(name: str) -> str:
    path = resources.files("cogharq").joinpath("presets", f"{name}.ini")
    try:
        return path.read_text()
    except FileNotFoundError:
        available = sorted(p.name[:-4] for p in resources.files("cogharq")
                           .joinpath("presets").iterdir() if p.name.endswith(".ini"))
        raise ConfigError(f"unknown preset {name!r}; available: {available}")


def _spec_from_parser(cp: configparser.ConfigParser, origin: str) -> SweepSpec:
    if "sweep" not in cp:
        raise ConfigError(f"{origin}: missing [sweep] section")
    sec = dict(cp["sweep"])
    kwargs = {}
    try:
        if "axis" in sec:
            kwargs["axis"] = sec.pop("axis")
        if "grid" in sec:
            kwargs["grid"] = _parse_grid(sec.pop("grid"))
        for key in _FLOAT_KEYS:
            if key in sec:
                kwargs[key] = float(sec.pop(key))
        for key in _LIST_KEYS:
            if key in sec:
                kwargs[key] = tuple(float(v) for v in sec.pop(key).split(","))
        if "m_values" in sec:
            kwargs["m_values"] = tuple(int(v) for v in sec.pop("m_values").split(","))
        if "protocols" in sec:
            kwargs["protocols"] = tuple(v.strip() for v in sec.pop("protocols").split(","))
        if "traffic_models" in sec:
            kwargs["traffic_models"] = tuple(v.strip() for v in sec.pop("traffic_models").split(","))
        if "panel" in sec:
            kwargs["panel"] = sec.pop("panel")
    except ValueError as exc:
        raise ConfigError(f"{origin}: {exc}")
    if sec:
        raise ConfigError(f"{origin}: unknown keys in [sweep]: {sorted(sec)}")
    if "axis" not in kwargs or "grid" not in kwargs:
        raise ConfigError(f"{origin}: [sweep] must define 'axis' and 'grid'")
    return SweepSpec(**kwargs)


def load_preset(name: str) -> SweepSpec:
    cp = configparser.ConfigParser()
    cp.read_string(_preset_text(name))
    return _spec_from_parser(cp, f"preset {name}")


def load_config(path: str) -> SweepSpec:
    """Load an INI sweep config; a [preset] section with ``include = <name>``
    pulls in a shipped preset, with [sweep] keys acting as overrides."""
    cp = configparser.ConfigParser()
    try:
        with open(path) as fh:
            cp.read_string(fh.read(), source=path)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}")
    except configparser.Error as exc:
        raise ConfigError(f"parse error in {path}: {exc}")
    if "preset" in cp:
        name = cp["preset"].get("include")
        if not name:
            raise ConfigError(f"{path}: [preset] section needs an 'include' key")
        merged = configparser.ConfigParser()
        merged.read_string(_preset_text(name))
        if "sweep" in cp:
            for key, val in cp["sweep"].items():
                merged["sweep"][key] = val
        return _spec_from_parser(merged, path)
    return _spec_from_parser(cp, path)


# ---------------------------------------------------------------------------
# validation suite

@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _supnorm_grid(values: np.ndarray, n: int = 50) -> np.ndarray:
    finite = values[np.isfinite(values)]
    hi = np.quantile(finite, 0.999)
    return np.linspace(max(hi * 1e-3, 1e-6), hi, n)


def run_validation(spec: SweepSpec, n_packets: int = 1_000_000,
                   seed: int = 1) -> list[CheckResult]:
    """Cross-check the closed forms against Monte Carlo at the sweep midpoint."""
    checks: list[CheckResult] = []
    axis_value = spec.grid[len(spec.grid) // 2]
    pt = resolve_point(spec, axis_value, spec.p_max_values[0], spec.i_p_values[0])

    results = {}
    for protocol in spec.protocols:
        for m_max in spec.m_values:
            policy, config, dist, eta = analytic_point(pt, protocol, m_max)
            closure = sum(dist.p_decode) + dist.p_outage
            checks.append(CheckResult(
                f"closure[{protocol},M={m_max}]",
                abs(closure - 1.0) <= 1e-12,
                f"sum of decode masses = {closure!r}"))
            jensen = eta["continuous"] >= (1.0 - dist.p_outage) * eta["bursting"] - 1e-12
            checks.append(CheckResult(
                f"jensen[{protocol},M={m_max}]", jensen,
                f"continuous={eta['continuous']:.6f} "
                f"(1-outage)*bursting={(1 - dist.p_outage) * eta['bursting']:.6f}"))

            sim = SimulationSpec(channel=pt.channel, csi=CsiModel(pt.beta),
                                 policy=policy, harq=config, n_packets=n_packets,
                                 seed=_mc_seed(seed, m_max, 0 if protocol == "rtd" else 1),
                                 keep_omega=(protocol == "rtd" and m_max == spec.m_values[0]))
            report = run_simulation(sim)
            results[(protocol, m_max)] = (policy, dist, eta, report)

            for tm in spec.traffic_models:
                diff = abs(eta[tm] - report.throughput(tm))
                tol = max(0.003, 4.0 * report.throughput_se(tm))
                checks.append(CheckResult(
                    f"throughput_mc[{protocol},M={m_max},{tm}]", diff <= tol,
                    f"|analytic-mc| = {diff:.5f} (tol {tol:.5f})"))
            diff = abs(dist.p_outage - report.outage_rate)
            tol = max(0.003, 4.0 * report.outage_rate_se)
            checks.append(CheckResult(
                f"outage_mc[{protocol},M={m_max}]", diff <= tol,
                f"|analytic-mc| = {diff:.5f} (tol {tol:.5f})"))

            if report.omega_samples is not None:
                policy_dist = OmegaDistribution(params=pt.channel, p_max=pt.p_max,
                                                i_p_effective=policy.i_p_effective)
                grid = _supnorm_grid(report.omega_samples)
                emp = empirical_cdf(report.omega_samples, grid)
                ana = np.array([cdf_omega(x, policy_dist) for x in grid])
                sup = float(np.max(np.abs(emp - ana)))
                tol = 0.005 * math.sqrt(max(1_000_000 / n_packets, 1.0))
                checks.append(CheckResult(
                    "cdf_omega_supnorm", sup <= tol, f"sup-norm {sup:.5f} (tol {tol:.5f})"))

            if pt.beta < 1.0 and pt.pi > 0.0:
                sigma = report.interference_violation_rate_se
                bound = (1.0 - pt.pi) + 3.0 * max(sigma, math.sqrt(pt.pi * (1 - pt.pi) / n_packets))
                checks.append(CheckResult(
                    f"confidence[{protocol},M={m_max}]",
                    report.interference_violation_rate <= bound,
                    f"violation rate {report.interference_violation_rate:.5f} "
                    f"(bound {bound:.5f})"))

    if set(("rtd", "inr")) <= set(spec.protocols):
        for m_max in spec.m_values:
            _, dist_r, eta_r, _ = results[("rtd", m_max)]
            _, dist_i, eta_i, _ = results[("inr", m_max)]
            ok = (eta_i["continuous"] >= eta_r["continuous"] - 1e-12
                  and dist_i.p_outage <= dist_r.p_outage + 1e-12)
            checks.append(CheckResult(
                f"inr_dominance[M={m_max}]", ok,
                f"inr eta={eta_i['continuous']:.5f} rtd eta={eta_r['continuous']:.5f}; "
                f"inr outage={dist_i.p_outage:.5f} rtd outage={dist_r.p_outage:.5f}"))

    return checks

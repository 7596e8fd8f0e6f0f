"""Power accounting and closed-form timing/power estimators."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .ackgen import ClockConfig
from .adcmodel import AdcConfig
from .engine import OFF, SimTrace


@dataclass(frozen=True)
class PowerReport:
    mean_power: float
    off_fraction: float
    reduction: float
    n_crossings: int
    duration: float


def mix_power(off_fraction: float, cfg: AdcConfig) -> float:
    """Time-weighted mix of the tracking and off power levels."""
    return cfg.p_on * (1.0 - off_fraction) + cfg.p_off * off_fraction


def reduction_limit(cfg: AdcConfig) -> float:
    """Reduction with the comparators off all the time, ``1 - p_off/p_on``."""
    return 1.0 - cfg.p_off / cfg.p_on


def _report(off_fraction: float, n: int, duration: float, cfg: AdcConfig) -> PowerReport:
    mean = mix_power(off_fraction, cfg)
    return PowerReport(mean, off_fraction, 1.0 - mean / cfg.p_on, n, duration)


def measured_power(trace: SimTrace, cfg: AdcConfig) -> PowerReport:
    """Mean power of a simulated trace from its OFF segments."""
    if not trace.duration > 0:
        raise ValueError("trace has no duration")
    off = math.fsum(b - a for a, b, s in trace.power_segments if s == OFF)
    return _report(min(off / trace.duration, 1.0), len(trace.events), trace.duration, cfg)


def analytic_mean_power(n_crossings: int, clk: ClockConfig | float, t: float,
                        cfg: AdcConfig) -> PowerReport:
    """Mean power when each of ``n_crossings`` costs 1.5 clock periods off over ``t`` seconds."""
    t_clk = clk.t_clk if isinstance(clk, ClockConfig) else float(clk)
    if n_crossings < 0:
        raise ValueError("n_crossings must be >= 0")
    if not t > 0:
        raise ValueError("t must be > 0")
    off = n_crossings * 1.5 * t_clk / t
    if off > 1.0:
        raise ValueError(f"off fraction {off:.4g} > 1: too many crossings for the interval")
    return _report(off, n_crossings, t, cfg)


def max_clock_period(f_in: float, amplitude: float, cfg: AdcConfig) -> float:
    """Longest ACK clock period that still returns before the next crossing of a sine."""
    if not f_in > 0 or not amplitude > 0:
        raise ValueError("f_in and amplitude must be > 0")
    return cfg.delta / (4.0 * math.pi * f_in * amplitude)


def delay_aware_clock_period(f_in: float, amplitude: float, cfg: AdcConfig) -> float:
    """Clock bound that also leaves room for the comparator and digital delays.

    The handshake must finish within one crossing interval at peak slope:
    ``t_comp + t_dig + 2*t_clk <= delta / (2*pi*f_in*amplitude)``.
    """
    if not f_in > 0 or not amplitude > 0:
        raise ValueError("f_in and amplitude must be > 0")
    room = cfg.delta / (2.0 * math.pi * f_in * amplitude) - cfg.t_comp - cfg.t_dig
    if room <= 0:
        raise ValueError(f"{f_in} Hz is beyond what the comparator delay can track")
    return room / 2.0


def max_tracking_frequency(cfg: AdcConfig, amplitude: float | None = None) -> float:
    """Highest sine frequency the comparators can follow at the given amplitude."""
    if amplitude is None:
        amplitude = cfg.v_fs / 2.0
    if not amplitude > 0:
        raise ValueError("amplitude must be > 0")
    return cfg.delta / (amplitude * 2.0 * math.pi * cfg.t_comp)


def sine_crossings_per_period(cfg: AdcConfig) -> int:
    """A full-scale sine crosses each interior boundary twice per period."""
    return 2 * (cfg.n_levels - 1)


@dataclass(frozen=True)
class SweepPoint:
    f_in: float
    t_clk: float
    feasible: bool
    off_fraction: float = math.nan
    mean_power: float = math.nan


def sweep_off_fraction(f_grid, clk_grid, cfg: AdcConfig, *, relative: bool = False,
                       amplitude: float | None = None) -> list[SweepPoint]:
    """Analytic off fraction of a full-scale sine over input frequency x clock period.

    With ``relative=True`` the entries of ``clk_grid`` are multiples of each
    frequency's clock bound rather than periods in seconds. Points above the
    bound come back with ``feasible=False`` and NaN values.
    """
    f_grid = list(f_grid)
    clk_grid = list(clk_grid)
    if not f_grid or not clk_grid:
        raise ValueError("empty sweep grid")
    if amplitude is None:
        amplitude = cfg.v_fs / 2.0
    per_period = sine_crossings_per_period(cfg)
    out = []
    for f in f_grid:
        bound = max_clock_period(f, amplitude, cfg)
        for p in clk_grid:
            t_clk = p * bound if relative else float(p)
            if not t_clk > 0:
                raise ValueError("clock periods must be > 0")
            if t_clk > bound * (1.0 + 1e-12):
                out.append(SweepPoint(f, t_clk, False))
                continue
            off = per_period * f * 1.5 * t_clk
            out.append(SweepPoint(f, t_clk, True, off, mix_power(off, cfg)))
    return out

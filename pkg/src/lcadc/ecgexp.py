"""ECG experiment: clock period from the ECG band, full-record run, windowed reduction."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ackgen import ClockConfig
from .adcmodel import AdcConfig
from .engine import OFF, SimTrace, simulate
from .power import PowerReport, max_clock_period, measured_power, reduction_limit
from .signal import SignalSource

DEFAULT_BANDWIDTH = 150.0
DEFAULT_WINDOW = 0.05


@dataclass
class EcgReport:
    avg_reduction: float
    peak_reduction: float
    peak_time: float
    t_clk: float
    n_crossings: int
    overloads: int
    power: PowerReport
    window_centers: np.ndarray = field(repr=False)
    window_reductions: np.ndarray = field(repr=False)
    trace: SimTrace = field(repr=False)

    def to_json(self) -> dict:
        return {
            "avg_reduction": self.avg_reduction,
            "peak_reduction": self.peak_reduction,
            "peak_time_s": self.peak_time,
            "t_clk_s": self.t_clk,
            "n_crossings": self.n_crossings,
            "overloads": self.overloads,
        }


def windowed_reductions(trace: SimTrace, cfg: AdcConfig, window: float, stride: float | None = None):
    """Power reduction over sliding windows of ``window`` seconds.

    Returns ``(centers, reductions)``; only windows lying fully inside the
    trace are reported.
    """
    if not window > 0:
        raise ValueError("window must be > 0")
    if window > trace.duration:
        raise ValueError("trace is shorter than one window")
    stride = window / 2.0 if stride is None else stride
    if not stride > 0:
        raise ValueError("stride must be > 0")
    n = int(np.floor((trace.duration - window) / stride + 1e-9)) + 1
    starts = np.arange(n) * stride
    seg = np.array([(s, e) for s, e, st in trace.power_segments if st == OFF], dtype=np.float64).reshape(-1, 2)
    limit = reduction_limit(cfg)
    red = np.empty(n)
    for k, a in enumerate(starts):
        b = a + window
        if seg.size:
            ov = np.clip(np.minimum(seg[:, 1], b) - np.maximum(seg[:, 0], a), 0.0, None)
            off = float(ov.sum())
        else:
            off = 0.0
        red[k] = limit * min(off / window, 1.0)
    return starts + window / 2.0, red


def run_ecg(record: SignalSource, cfg: AdcConfig, ecg_bandwidth: float = DEFAULT_BANDWIDTH,
            window: float = DEFAULT_WINDOW, clock_phase: float = 0.0,
            seed: int | None = None) -> EcgReport:
    """Simulate a full-scale ECG record with the clock period bounded by ``ecg_bandwidth``.

    With ``seed`` given, the clock phase is drawn at random instead of using
    ``clock_phase``.
    """
    if not ecg_bandwidth > 0:
        raise ValueError("ecg_bandwidth must be > 0")
    if record.kind != "sampled" or not record.end > 0:
        raise ValueError("run_ecg needs a sampled record ending after t = 0")
    duration = record.end
    if window > duration:
        raise ValueError("record is shorter than one window")
    t_clk = max_clock_period(ecg_bandwidth, cfg.v_fs / 2.0, cfg)
    clk = ClockConfig.random_phase(t_clk, seed) if seed is not None else ClockConfig(t_clk, clock_phase)
    trace = simulate(record, cfg, clk, duration)
    rep = measured_power(trace, cfg)
    centers, red = windowed_reductions(trace, cfg, window)
    k = int(np.argmax(red))
    return EcgReport(
        avg_reduction=rep.reduction,
        peak_reduction=float(red[k]),
        peak_time=float(centers[k]),
        t_clk=t_clk,
        n_crossings=len(trace.events),
        overloads=len(trace.overload_errors),
        power=rep,
        window_centers=centers,
        window_reductions=red,
        trace=trace,
    )

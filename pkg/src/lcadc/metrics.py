"""Staircase reconstruction from the event stream and tracking error."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .adcmodel import AdcConfig
from .engine import SimTrace
from .signal import SignalSource


@dataclass(frozen=True, eq=False)
class Reconstruction:
    """Piecewise-constant estimate. ``values[k]`` holds on ``[edges[k-1], edges[k])``,
    with ``edges[-1] = -inf`` implied for the first segment."""

    edges: np.ndarray
    values: np.ndarray

    def __call__(self, t):
        idx = np.searchsorted(self.edges, t, side="right")
        out = self.values[idx]
        return float(out) if np.ndim(t) == 0 else out

    @property
    def n_segments(self) -> int:
        return int(self.values.size)


def reconstruct(trace: SimTrace, cfg: AdcConfig) -> Reconstruction:
    """Midpoint staircase: ``(level + 0.5) * delta``, stepping at each register load."""
    levels = np.asarray(trace.levels(), dtype=np.float64)
    edges = np.array([e.t_ack_rise for e in trace.events], dtype=np.float64)
    return Reconstruction(edges, (levels + 0.5) * cfg.delta)


def tracking_error(src: SignalSource, rec: Reconstruction, t_grid) -> tuple[float, float]:
    """``(rmse, max_abs)`` of ``src - rec`` over ``t_grid``."""
    t = np.asarray(t_grid, dtype=np.float64)
    if t.size == 0:
        raise ValueError("empty time grid")
    err = src(t) - rec(t)
    return math.sqrt(float(np.mean(err * err))), float(np.max(np.abs(err)))


def dense_grid(trace: SimTrace, points_per_interval: int = 64, min_points: int = 1024) -> np.ndarray:
    """Uniform grid with at least ``points_per_interval`` points per mean inter-event gap."""
    n_int = max(len(trace.events), 1)
    n = max(min_points, points_per_interval * (n_int + 1))
    return np.linspace(0.0, trace.duration, n)

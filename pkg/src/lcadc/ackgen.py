"""Clock-gated ACK generator.

Only the terminal behaviour is modelled: ACK rises on the first rising clock
edge strictly after REQ rises and falls on the edge after that.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ClockConfig:
    t_clk: float
    phase: float = 0.0
    seed: int | None = None

    def __post_init__(self):
        if not self.t_clk > 0:
            raise ValueError("clock period must be > 0")
        if not 0.0 <= self.phase < self.t_clk:
            raise ValueError("clock phase must be in [0, t_clk)")

    @classmethod
    def random_phase(cls, t_clk: float, seed: int) -> ClockConfig:
        """Clock with its first rising edge drawn uniformly from ``[0, t_clk)``."""
        rng = np.random.default_rng(seed)
        phase = float(rng.uniform(0.0, t_clk))
        if phase >= t_clk:
            phase = 0.0
        return cls(t_clk=t_clk, phase=phase, seed=seed)

    def edge(self, k: int | float) -> float:
        return self.phase + k * self.t_clk


def next_edge(t: float, clk: ClockConfig) -> float:
    """First rising edge strictly after ``t``."""
    k = math.floor((t - clk.phase) / clk.t_clk) + 1
    e = clk.edge(k)
    while e <= t:
        k += 1
        e = clk.edge(k)
    while k > 0 and clk.edge(k - 1) > t:
        k -= 1
        e = clk.edge(k)
    return e


def ack_times(t_req: float, clk: ClockConfig) -> tuple[float, float]:
    """``(t_ack_rise, t_ack_fall)`` for a REQ rising at ``t_req``."""
    if t_req < 0:
        raise ValueError("t_req must be >= 0")
    rise = next_edge(t_req, clk)
    return rise, rise + clk.t_clk


def expected_off_time(clk: ClockConfig) -> float:
    """Mean REQ-to-ACK-fall latency for REQ uniform within a period: 1.5 periods."""
    return 1.5 * clk.t_clk

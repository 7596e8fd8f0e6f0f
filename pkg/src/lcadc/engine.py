"""Event-driven simulation of the floating-window converter.

One crossing is handled at a time. While the comparators are on, the input
is searched for the next exit from the current window. The comparator then
decides ``t_comp`` later and the FSM raises REQ and drops ON. The register
loads on ACK rise, and the comparators come back on ACK fall. The input is
not watched while they are off. If it has already left the new window when
they come back, a catch-up decision starts at once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import kernels
from .ackgen import ClockConfig, ack_times
from .adcmodel import DEC, INC, AdcConfig, quantize, quantize_clamped, update_level, window
from .afsm import TRACKING, afsm_eval
from .signal import SignalSource

DEFAULT_TOL = 1e-12
MAX_BISECT_ITER = 200

ON = "ON"
OFF = "OFF"


class CrossingSearchError(RuntimeError):
    """Root finding could not reach the requested time tolerance."""


class SimulationError(RuntimeError):
    pass


@dataclass(frozen=True)
class CrossingEvent:
    t_cross: float
    t_req: float
    t_ack_rise: float
    t_ack_fall: float
    direction: int
    level_before: int
    level_after: int
    catch_up: bool = False
    saturated: bool = False

    @property
    def off_time(self) -> float:
        return self.t_ack_fall - self.t_req


@dataclass
class SimTrace:
    events: list[CrossingEvent]
    power_segments: list[tuple[float, float, str]]
    overload_errors: list[tuple[float, int]]
    duration: float
    initial_level: int
    clock: ClockConfig | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n_catch_up(self) -> int:
        return sum(e.catch_up for e in self.events)

    def off_time(self) -> float:
        return math.fsum(b - a for a, b, s in self.power_segments if s == OFF)

    def levels(self) -> list[int]:
        return [self.initial_level] + [e.level_after for e in self.events]


def default_step(src: SignalSource, width: float, t_clk: float | None = None) -> float:
    """Scan step ``min(width / max_slope, t_clk) / 4``."""
    slope = src.max_slope
    h = width / slope if slope > 0 else math.inf
    if t_clk is not None:
        h = min(h, t_clk)
    if not math.isfinite(h):
        # flat source: only the monotone-piece breakpoints matter
        h = 1.0 if src.kind != "sampled" else float(src.times[-1] - src.times[0])
    return h / 4.0


def find_next_crossing(src: SignalSource, v_minus: float, v_plus: float, t_from: float,
                       t_to: float, tol: float = DEFAULT_TOL, step: float | None = None):
    """Earliest time in ``(t_from, t_to]`` where the source leaves ``[v_minus, v_plus]``.

    The interval is scanned in steps no longer than ``step`` (also broken at
    every extremum or sample knot, so each scanned piece is monotone) and the
    first exit is bisected to ``tol``. Returns ``(t_cross, direction)`` or
    ``None``; ``direction`` is :data:`INC` or :data:`DEC`.
    """
    if not t_from < t_to:
        raise ValueError("need t_from < t_to")
    if not tol > 0:
        raise ValueError("tol must be > 0")
    if not v_minus <= v_plus:
        raise ValueError("need v_minus <= v_plus")
    if step is None:
        step = default_step(src, v_plus - v_minus)
    if not step > 0:
        raise ValueError("step must be > 0")
    status, t, direction = kernels.backend.scan_crossing(
        *src.kernel_args(), float(v_minus), float(v_plus), float(t_from), float(t_to),
        float(step), float(tol), MAX_BISECT_ITER)
    if status == kernels.TOL_FAILED:
        raise CrossingSearchError(
            f"crossing near t={t!r} not resolved to {tol} s within {MAX_BISECT_ITER} bisections")
    if status == kernels.NOT_FOUND:
        return None
    return t, (INC if direction > 0 else DEC)


def simulate(src: SignalSource, cfg: AdcConfig, clk: ClockConfig, duration: float,
             tol: float = DEFAULT_TOL) -> SimTrace:
    """Run the converter on ``src`` over ``[0, duration]``.

    Events are recorded when their REQ rises before ``duration``; a handshake
    still running at the end is completed in the event record but its OFF
    segment is clipped to ``duration``.
    """
    if not duration > 0:
        raise ValueError("duration must be > 0")
    v0 = src.eval(0.0)
    if not 0.0 <= v0 <= cfg.v_fs:
        raise ValueError(f"input at t=0 ({v0} V) is outside [0, {cfg.v_fs}] V")

    level = quantize(v0, cfg)
    initial_level = level
    step = default_step(src, cfg.delta, clk.t_clk)
    latency = cfg.t_comp + cfg.t_dig

    events: list[CrossingEvent] = []
    segments: list[tuple[float, float, str]] = []
    overloads: list[tuple[float, int]] = []
    sig = TRACKING
    t_on = 0.0
    first = True

    while t_on < duration:
        v_minus, v_plus = window(level, cfg)
        catch_up = False
        direction = 0
        if not first:
            v = src.eval(t_on)
            if v > v_plus:
                direction = INC
            elif v < v_minus:
                direction = DEC
            if direction:
                catch_up = True
                t_cross = t_on
                behind = abs(quantize_clamped(v, cfg) - level)
                if behind >= 2:
                    overloads.append((t_on, behind))
        first = False
        if not direction:
            hit = find_next_crossing(src, v_minus, v_plus, t_on, duration, tol=tol, step=step)
            if hit is None:
                break
            t_cross, direction = hit

        t_req = t_cross + latency
        if t_req >= duration:
            break

        # decision: comparator output rises; FSM drops ON and raises REQ
        sig = afsm_eval(sig, int(direction == INC), int(direction == DEC), 0)
        if sig.on or not sig.req:
            raise SimulationError(f"FSM did not start a handshake at t={t_req!r}")
        # ON low discharges the comparators: INC/DEC return to 0, REQ holds
        sig = afsm_eval(sig, 0, 0, 0)
        sel_at_load = sig.sel
        t_rise, t_fall = ack_times(t_req, clk)
        sig = afsm_eval(sig, 0, 0, 1)
        if not sig.l:
            raise SimulationError(f"register load missing at t={t_rise!r}")
        # register samples the datapath as L rises; operand chosen by SEL before ACK+
        level_before = level
        level, saturated = update_level(level, DEC if sel_at_load else INC, cfg)
        sig = afsm_eval(sig, 0, 0, 0)
        if not sig.on:
            raise SimulationError(f"comparators not re-enabled at t={t_fall!r}")

        events.append(CrossingEvent(t_cross, t_req, t_rise, t_fall, direction,
                                    level_before, level, catch_up, saturated))
        if t_req > t_on:
            segments.append((t_on, t_req, ON))
        segments.append((t_req, min(t_fall, duration), OFF))
        t_on = t_fall

    if t_on < duration:
        segments.append((t_on, duration, ON))
    return SimTrace(events, _merge(segments), overloads, duration, initial_level, clk)


def _merge(segments):
    out: list[tuple[float, float, str]] = []
    for a, b, s in segments:
        if out and out[-1][2] == s and out[-1][1] == a:
            out[-1] = (out[-1][0], b, s)
        else:
            out.append((a, b, s))
    return out

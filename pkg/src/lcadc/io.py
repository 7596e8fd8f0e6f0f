"""CSV/JSON emission and loading of simulation outputs.

Floats are written with ``repr`` so files round-trip exactly and repeated
runs produce byte-identical output.
"""
from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .adcmodel import DEC, INC
from .engine import CrossingEvent, SimTrace

TRACE_HEADER = ["t_cross_s", "t_req_s", "t_ack_rise_s", "t_ack_fall_s", "direction",
                "level_after", "catch_up", "saturated"]
SEGMENT_HEADER = ["t_start_s", "t_end_s", "state"]
SWEEP_HEADER = ["f_in_hz", "t_clk_s", "off_fraction", "mean_power_w", "feasible"]
SWEEP_EMPIRICAL_HEADER = ["measured_off_fraction", "measured_mean_power_w", "n_events", "overloads"]
RECONSTRUCTION_HEADER = ["t_s", "v_hat_v"]
WINDOWS_HEADER = ["t_center_s", "reduction"]

_DIR_NAME = {INC: "inc", DEC: "dec"}
_DIR_CODE = {"inc": INC, "dec": DEC}


def fmt(x) -> str:
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        return "" if math.isnan(x) else repr(x)
    return str(x)


def _write(path, header, rows):
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([fmt(x) for x in r])


def _read(path, header):
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:len(header)] != header:
        raise ValueError(f"{path}: expected header {','.join(header)}")
    return rows[0], rows[1:]


def write_trace_csv(path, trace: SimTrace) -> None:
    _write(path, TRACE_HEADER, (
        (e.t_cross, e.t_req, e.t_ack_rise, e.t_ack_fall, _DIR_NAME[e.direction],
         e.level_after, e.catch_up, e.saturated) for e in trace.events))


def read_trace_csv(path, initial_level: int) -> list[CrossingEvent]:
    """Events back from a trace CSV; ``level_before`` is rebuilt by replay."""
    _, rows = _read(path, TRACE_HEADER)
    events = []
    level = initial_level
    for r in rows:
        ev = CrossingEvent(float(r[0]), float(r[1]), float(r[2]), float(r[3]), _DIR_CODE[r[4]],
                           level, int(r[5]), r[6] == "1", r[7] == "1")
        level = ev.level_after
        events.append(ev)
    return events


def write_segments_csv(path, trace: SimTrace) -> None:
    _write(path, SEGMENT_HEADER, trace.power_segments)


def read_segments_csv(path) -> list[tuple[float, float, str]]:
    _, rows = _read(path, SEGMENT_HEADER)
    return [(float(a), float(b), s) for a, b, s in rows]


def write_sweep_csv(path, points, empirical=None) -> None:
    header = SWEEP_HEADER + (SWEEP_EMPIRICAL_HEADER if empirical is not None else [])
    rows = []
    for i, p in enumerate(points):
        row = [p.f_in, p.t_clk, p.off_fraction, p.mean_power, p.feasible]
        if empirical is not None:
            m = empirical[i]
            row += list(m) if m is not None else ["", "", "", ""]
        rows.append(row)
    _write(path, header, rows)


def read_sweep_csv(path) -> list[dict]:
    header, rows = _read(path, SWEEP_HEADER)
    out = []
    for r in rows:
        d = {}
        for k, v in zip(header, r):
            if k == "feasible":
                d[k] = v == "1"
            elif k in ("n_events", "overloads"):
                d[k] = int(v) if v else None
            else:
                d[k] = float(v) if v else math.nan
        out.append(d)
    return out


def write_reconstruction_csv(path, rec, duration: float) -> None:
    """Staircase corners: one row at t=0 and one per register load inside the trace."""
    rows = [(0.0, float(rec.values[0]))]
    for t, v in zip(rec.edges.tolist(), rec.values[1:].tolist()):
        if t > duration:
            break
        rows.append((t, v))
    _write(path, RECONSTRUCTION_HEADER, rows)


def write_windows_csv(path, centers, reductions) -> None:
    _write(path, WINDOWS_HEADER, zip(map(float, centers), map(float, reductions)))


def read_windows_csv(path):
    _, rows = _read(path, WINDOWS_HEADER)
    return [(float(a), float(b)) for a, b in rows]


def write_json(path, obj) -> None:
    with Path(path).open("w") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")

"""Continuous-time input sources.

A :class:`SignalSource` is an immutable description of an input voltage that
can be evaluated at any time: an analytic sine or triangle, or a sampled
record (e.g. an ECG lead) reconstructed by linear interpolation.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from pathlib import Path

import numpy as np

from . import kernels

KINDS = ("sine", "triangle", "sampled")
_KIND_CODES = {"sine": kernels.SINE, "triangle": kernels.TRIANGLE, "sampled": kernels.SAMPLED}

_EMPTY = np.zeros(1, dtype=np.float64)
_EMPTY.flags.writeable = False


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class SignalSource:
    """Evaluable input voltage.

    ``clip`` bounds every evaluation; it is set by :func:`scale_to_full_scale`
    so that rounding in the affine map never leaves the converter range.
    """

    kind: str
    amplitude: float = 0.0
    frequency: float = 0.0
    offset: float = 0.0
    times: np.ndarray = field(default=_EMPTY, repr=False)
    values: np.ndarray = field(default=_EMPTY, repr=False)
    clip: tuple[float, float] = (-math.inf, math.inf)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown signal kind {self.kind!r}")
        if self.kind == "sampled":
            t = _frozen(self.times)
            v = _frozen(self.values)
            if t.ndim != 1 or t.shape != v.shape:
                raise ValueError("times and values must be 1-D arrays of equal length")
            if t.size < 2:
                raise ValueError("a sampled record needs at least 2 samples")
            if not np.all(np.isfinite(t)) or not np.all(np.isfinite(v)):
                raise ValueError("record contains non-finite samples")
            if np.any(np.diff(t) <= 0):
                raise ValueError("sample times must be strictly increasing")
            object.__setattr__(self, "times", t)
            object.__setattr__(self, "values", v)
        else:
            if self.amplitude < 0:
                raise ValueError("amplitude must be >= 0")
            if not self.frequency > 0:
                raise ValueError("frequency must be > 0")
        lo, hi = self.clip
        if not lo <= hi:
            raise ValueError("clip bounds out of order")

    @property
    def kind_code(self) -> int:
        return _KIND_CODES[self.kind]

    @cached_property
    def _lists(self):
        return self.times.tolist(), self.values.tolist()

    def kernel_args(self, backend=None):
        """Positional source arguments for the kernel entry points."""
        backend = backend or kernels.backend
        if backend is kernels._core_py:
            times, values = self._lists
        else:
            times, values = self.times, self.values
        return (self.kind_code, float(self.amplitude), float(self.frequency), float(self.offset),
                times, values, float(self.clip[0]), float(self.clip[1]))

    def eval(self, t: float) -> float:
        return kernels.backend.eval_point(*self.kernel_args(), float(t))

    def __call__(self, t):
        """Evaluate at a scalar or an array of times (vectorised with numpy)."""
        if np.ndim(t) == 0:
            return self.eval(t)
        t = np.asarray(t, dtype=np.float64)
        if self.kind == "sampled":
            v = np.interp(t, self.times, self.values)
        else:
            ph = t * self.frequency
            ph = ph - np.floor(ph)
            if self.kind == "sine":
                v = self.offset + self.amplitude * np.sin(2.0 * np.pi * ph)
            else:
                tri = np.where(ph < 0.25, 4.0 * ph, np.where(ph < 0.75, 2.0 - 4.0 * ph, 4.0 * ph - 4.0))
                v = self.offset + self.amplitude * tri
        return np.clip(v, self.clip[0], self.clip[1])

    @property
    def start(self) -> float:
        return float(self.times[0]) if self.kind == "sampled" else 0.0

    @property
    def end(self) -> float:
        """Last sample time, or infinity for analytic sources."""
        return float(self.times[-1]) if self.kind == "sampled" else math.inf

    @cached_property
    def max_slope(self) -> float:
        """Upper bound of |dv/dt| in volts per second."""
        if self.kind == "sine":
            return 2.0 * math.pi * self.frequency * self.amplitude
        if self.kind == "triangle":
            return 4.0 * self.frequency * self.amplitude
        return float(np.max(np.abs(np.diff(self.values) / np.diff(self.times))))

    def value_range(self) -> tuple[float, float]:
        if self.kind == "sampled":
            lo, hi = float(self.values.min()), float(self.values.max())
        else:
            lo, hi = self.offset - self.amplitude, self.offset + self.amplitude
        return max(lo, self.clip[0]), min(hi, self.clip[1])


def make_sine(amplitude: float, frequency: float, offset: float = 0.0) -> SignalSource:
    """``offset + amplitude * sin(2*pi*frequency*t)``."""
    return SignalSource("sine", amplitude=amplitude, frequency=frequency, offset=offset)


def make_triangle(amplitude: float, frequency: float, offset: float = 0.0) -> SignalSource:
    """Symmetric triangle of peak-to-peak ``2*amplitude`` about ``offset``, rising from t=0."""
    return SignalSource("triangle", amplitude=amplitude, frequency=frequency, offset=offset)


def from_samples(times, values) -> SignalSource:
    return SignalSource("sampled", times=times, values=values)


def _is_number(s: str) -> bool:
    try:
        float(s)
    except ValueError:
        return False
    return True


def load_record(path, sample_rate: float | None = None) -> SignalSource:
    """Load a CSV record as a linearly interpolated source.

    Two accepted layouts: ``time_s,value`` (header row required), or a
    single ``value`` column, in which case ``sample_rate`` gives sample k the
    time ``k / sample_rate``. A header on the single-column layout is optional.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise ValueError(f"{path}: empty file")
    ncol = len(rows[0])
    if ncol not in (1, 2):
        raise ValueError(f"{path}: expected 1 or 2 columns, got {ncol}")
    if not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]
    elif ncol == 2:
        raise ValueError(f"{path}: two-column records need a header row")
    try:
        data = np.array([[float(c) for c in r] for r in rows], dtype=np.float64)
    except ValueError as exc:
        raise ValueError(f"{path}: unparseable value ({exc})") from None
    if data.ndim != 2 or data.shape[1] != ncol:
        raise ValueError(f"{path}: ragged rows")
    if data.shape[0] < 2:
        raise ValueError(f"{path}: need at least 2 samples")
    if ncol == 2:
        t, v = data[:, 0], data[:, 1]
        if np.any(np.diff(t) <= 0):
            raise ValueError(f"{path}: time column is not strictly increasing")
    else:
        if sample_rate is None:
            raise ValueError(f"{path}: single-column records need a sample rate")
        if not sample_rate > 0:
            raise ValueError("sample rate must be > 0")
        v = data[:, 0]
        t = np.arange(v.size, dtype=np.float64) / sample_rate
    return from_samples(t, v)


def write_record(path, src: SignalSource) -> None:
    """Write a sampled source back out as ``time_s,value``."""
    if src.kind != "sampled":
        raise ValueError("only sampled sources can be written")
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["time_s", "value"])
        for t, v in zip(src.times.tolist(), src.values.tolist()):
            w.writerow([repr(t), repr(v)])


def scale_to_full_scale(src: SignalSource, v_fs: float, margin: float = 0.0) -> SignalSource:
    """Affinely map the source range onto ``[margin*v_fs, (1-margin)*v_fs]``."""
    if not 0.0 <= margin < 0.5:
        raise ValueError("margin must be in [0, 0.5)")
    if not v_fs > 0:
        raise ValueError("v_fs must be > 0")
    if src.kind == "sampled":
        lo, hi = float(src.values.min()), float(src.values.max())
    else:
        lo, hi = src.offset - src.amplitude, src.offset + src.amplitude
    if not hi > lo:
        raise ValueError("cannot scale a constant signal (zero span)")
    new_lo = margin * v_fs
    new_hi = (1.0 - margin) * v_fs
    gain = (new_hi - new_lo) / (hi - lo)
    if src.kind == "sampled":
        vals = new_lo + (src.values - lo) * gain
        vals = np.clip(vals, new_lo, new_hi)
        return SignalSource("sampled", times=src.times, values=vals, clip=(new_lo, new_hi))
    return replace(src, amplitude=src.amplitude * gain,
                   offset=new_lo + (src.offset - lo) * gain, clip=(new_lo, new_hi))

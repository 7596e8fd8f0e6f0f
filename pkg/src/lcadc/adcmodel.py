"""Static converter model: configuration, DAC map, window and register update."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path

INC = 1
DEC = -1

# JSON key -> field name
_CONFIG_KEYS = {
    "bits": "bits",
    "v_fs": "v_fs",
    "t_comp_s": "t_comp",
    "p_on_w": "p_on",
    "p_off_w": "p_off",
    "t_dig_s": "t_dig",
}


@dataclass(frozen=True)
class AdcConfig:
    """Converter parameters. Times in seconds, voltages in volts, powers in watts."""

    bits: int = 5
    v_fs: float = 1.0
    t_comp: float = 659.5e-9
    p_on: float = 12.2e-6
    p_off: float = 6.7e-6
    t_dig: float = 0.0

    def __post_init__(self):
        if int(self.bits) != self.bits or self.bits < 1:
            raise ValueError("bits must be an integer >= 1")
        if not self.v_fs > 0:
            raise ValueError("v_fs must be > 0")
        if not self.t_comp > 0:
            raise ValueError("t_comp must be > 0")
        if not self.t_dig >= 0:
            raise ValueError("t_dig must be >= 0")
        if not 0 <= self.p_off <= self.p_on:
            raise ValueError("need 0 <= p_off <= p_on")

    @property
    def delta(self) -> float:
        """One LSB, ``v_fs / 2**bits``."""
        return self.v_fs / (1 << self.bits)

    @property
    def n_levels(self) -> int:
        return 1 << self.bits

    @property
    def top_level(self) -> int:
        return (1 << self.bits) - 1

    @classmethod
    def from_dict(cls, d: dict) -> AdcConfig:
        unknown = set(d) - set(_CONFIG_KEYS)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**{_CONFIG_KEYS[k]: v for k, v in d.items()})

    @classmethod
    def from_json(cls, path) -> AdcConfig:
        with Path(path).open() as fh:
            d = json.load(fh)
        if not isinstance(d, dict):
            raise ValueError(f"{path}: config must be a JSON object")
        return cls.from_dict(d)

    def to_dict(self) -> dict:
        inv = {v: k for k, v in _CONFIG_KEYS.items()}
        return {inv[k]: v for k, v in asdict(self).items()}


def check_level(code: int, cfg: AdcConfig) -> int:
    if int(code) != code or not 0 <= code <= cfg.top_level:
        raise ValueError(f"level {code} outside [0, {cfg.top_level}]")
    return int(code)


def dac_voltage(code: int, cfg: AdcConfig) -> float:
    """Ideal DAC output ``code * delta`` for ``0 <= code <= 2**bits``."""
    if int(code) != code or not 0 <= code <= cfg.n_levels:
        raise ValueError(f"DAC code {code} outside [0, {cfg.n_levels}]")
    return code * cfg.delta


def window(level: int, cfg: AdcConfig) -> tuple[float, float]:
    """Reference pair ``(v_minus, v_plus)`` straddling ``level``."""
    check_level(level, cfg)
    return dac_voltage(level, cfg), dac_voltage(level + 1, cfg)


def quantize(v: float, cfg: AdcConfig) -> int:
    """Largest level whose lower reference is <= v; v = v_fs maps to the top level."""
    if not 0.0 <= v <= cfg.v_fs:
        raise ValueError(f"voltage {v} outside [0, {cfg.v_fs}]")
    return min(int(math.floor(v / cfg.delta)), cfg.top_level)


def quantize_clamped(v: float, cfg: AdcConfig) -> int:
    """:func:`quantize` with out-of-range inputs pinned to the rails."""
    return quantize(min(max(v, 0.0), cfg.v_fs), cfg)


def update_level(level: int, direction: int, cfg: AdcConfig) -> tuple[int, bool]:
    """Step ``level`` by ``direction`` (+1/-1). Returns ``(new_level, saturated)``."""
    check_level(level, cfg)
    if direction not in (INC, DEC):
        raise ValueError("direction must be INC (+1) or DEC (-1)")
    new = level + direction
    if new < 0 or new > cfg.top_level:
        return level, True
    return new, False

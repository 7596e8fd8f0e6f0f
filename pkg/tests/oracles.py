"""Independent reference computations used by the tests.

Nothing here calls the engine or the crossing kernels.
"""
import math

import numpy as np


def dense_level_crossings(f, t0, t1, n, delta, top_level):
    """Brute-force boundary crossings of ``f`` sampled at ``n`` points on ``[t0, t1)``.

    Returns ``(count, times)``; a jump of k levels between samples counts k.
    """
    t = t0 + (t1 - t0) * np.arange(n + 1) / n
    v = np.asarray(f(t), dtype=np.float64)
    lvl = np.clip(np.floor(v / delta), 0, top_level)
    d = np.diff(lvl)
    idx = np.nonzero(d)[0]
    return int(np.abs(d).sum()), t[idx + 1]


def sine_np(a, f, offset):
    return lambda t: offset + a * np.sin(2 * np.pi * f * t)


def triangle_np(a, f, offset):
    # |sawtooth| form, independent of the phase-branch form used by the package
    def g(t):
        x = (np.asarray(t) * f + 0.25) % 1.0
        return offset + a * (1.0 - 4.0 * np.abs(x - 0.5))
    return g


def sine_first_crossing_up(a, f, offset, level_v):
    """Closed form: first t > 0 with offset + a*sin(2*pi*f*t) = level_v (rising)."""
    return math.asin((level_v - offset) / a) / (2 * math.pi * f)


def next_edge_reference(t_req, t_clk, phase):
    """Edge arithmetic with exact rationals."""
    from fractions import Fraction
    q = (Fraction(t_req) - Fraction(phase)) / Fraction(t_clk)
    k = math.floor(q) + 1
    return float(Fraction(phase) + k * Fraction(t_clk))

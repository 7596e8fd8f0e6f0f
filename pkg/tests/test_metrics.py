import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lcadc import (AdcConfig, ClockConfig, make_sine, make_triangle, max_clock_period,
                   reconstruct, simulate, tracking_error)
from lcadc.metrics import dense_grid


def test_constant_input_zero_error(cfg):
    src = make_sine(0.0, 10, 16.5 * cfg.delta)
    tr = simulate(src, cfg, ClockConfig(1e-6), 0.1)
    rec = reconstruct(tr, cfg)
    assert rec.n_segments == 1
    assert tracking_error(src, rec, np.linspace(0, 0.1, 101)) == (0.0, 0.0)
    with pytest.raises(ValueError):
        tracking_error(src, rec, [])


def test_single_step(cfg):
    src = make_sine(0.5, 1000, 0.5)
    clk = ClockConfig(4.9736e-6)
    tr = simulate(src, cfg, clk, 20e-6)
    assert len(tr.events) == 1
    rec = reconstruct(tr, cfg)
    e = tr.events[0]
    assert rec(0.0) == 0.515625
    assert rec(e.t_ack_rise - 1e-9) == 0.515625
    assert rec(e.t_ack_rise) == 0.546875
    assert rec.n_segments == 2


def test_period_replay_returns_to_start(cfg):
    src = make_sine(0.5, 100, 0.5)
    tr = simulate(src, cfg, ClockConfig.random_phase(max_clock_period(100, 0.5, cfg), 2), 0.025)
    rec = reconstruct(tr, cfg)
    assert rec.n_segments == len(tr.events) + 1
    assert list(np.round(rec.values / cfg.delta - 0.5).astype(int)) == tr.levels()
    # any 62 consecutive events span one period and net to zero
    assert np.array_equal(rec.values[62:], rec.values[:-62])
    assert rec.values.min() >= cfg.delta / 2 and rec.values.max() <= cfg.v_fs - cfg.delta / 2


def _latency_bound(cfg, slope, t_clk):
    return cfg.delta / 2 + slope * (cfg.t_comp + 2 * t_clk)


@pytest.mark.parametrize("f", [1.0, 10.0])
def test_slow_triangle_error_bound(cfg, f):
    src = make_triangle(0.5, f, 0.5)
    t_clk = max_clock_period(f, 0.5, cfg) / 10
    tr = simulate(src, cfg, ClockConfig.random_phase(t_clk, 4), 2 / f)
    rec = reconstruct(tr, cfg)
    grid = dense_grid(tr)
    _, worst = tracking_error(src, rec, grid)
    assert worst <= _latency_bound(cfg, src.max_slope, t_clk)
    assert worst > cfg.delta / 2


def test_sine_at_bound_error(cfg):
    src = make_sine(0.5, 1000, 0.5)
    t_clk = max_clock_period(1000, 0.5, cfg)
    tr = simulate(src, cfg, ClockConfig.random_phase(t_clk, 8), 5e-3)
    bound = _latency_bound(cfg, src.max_slope, t_clk)
    assert bound - cfg.delta / 2 == pytest.approx(33.3e-3, abs=1e-4)
    _, worst = tracking_error(src, reconstruct(tr, cfg), dense_grid(tr))
    assert worst <= bound


@settings(max_examples=30, deadline=None)
@given(kind=st.sampled_from([make_sine, make_triangle]), f=st.floats(5, 1000),
       amp=st.floats(0.05, 0.49), clk_frac=st.floats(0.05, 1.0), seed=st.integers(0, 1000))
def test_settled_reconstruction_is_within_half_lsb(kind, f, amp, clk_frac, seed):
    cfg = AdcConfig()
    src = kind(amp, f, 0.5)
    clk = ClockConfig.random_phase(clk_frac * max_clock_period(f, 0.5, cfg), seed)
    tr = simulate(src, cfg, clk, 2 / f)
    rec = reconstruct(tr, cfg)
    t = dense_grid(tr)
    falls = np.array([0.0] + [e.t_ack_fall for e in tr.events])
    crosses = np.array([e.t_cross for e in tr.events] + [math.inf])
    # index of the most recent completed handshake at each grid time
    k = np.searchsorted(falls, t, side="right") - 1
    settled = (t >= falls[k] + np.where(k > 0, cfg.t_comp, 0.0)) & (t < crosses[k])
    err = np.abs(src(t[settled]) - rec(t[settled]))
    assert settled.any()
    assert err.max() <= cfg.delta / 2 + 1e-12

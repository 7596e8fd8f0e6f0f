import numpy as np
import pytest

from lcadc import AdcConfig, load_record, run_ecg, scale_to_full_scale
from lcadc.ecgexp import windowed_reductions
from lcadc.engine import OFF
from lcadc.power import max_clock_period, reduction_limit
from lcadc.signal import from_samples


def _spike_record():
    # flat, then one full-scale excursion up and back inside a single 50 ms window
    return from_samples([0.0, 0.2, 0.22, 0.24, 0.5], [0.0, 0.0, 1.0, 0.0, 0.0])


def test_spike_off_time(cfg):
    rep = run_ecg(_spike_record(), cfg, 150.0, 0.05)
    t_clk = max_clock_period(150.0, 0.5, cfg)
    assert rep.t_clk == t_clk
    assert rep.n_crossings == 62 and rep.overloads == 0
    segs = [(a, b) for a, b, s in rep.trace.power_segments if s == OFF]
    assert all(0.2 <= a and b <= 0.25 for a, b in segs)
    off = sum(b - a for a, b in segs)
    # each handshake costs t_clk..2*t_clk, mean 1.5*t_clk; 62 draws stay within ~3% of the mean
    assert off == pytest.approx(62 * 1.5 * t_clk, rel=0.08)
    assert rep.peak_time == pytest.approx(0.225)
    assert rep.peak_reduction == pytest.approx(reduction_limit(cfg) * off / 0.05, rel=1e-12)


def test_flat_windows_are_zero(cfg):
    rep = run_ecg(_spike_record(), cfg)
    quiet = (rep.window_centers < 0.176) | (rep.window_centers > 0.274)
    assert np.all(rep.window_reductions[quiet] == 0.0)
    assert np.all(rep.window_reductions[~quiet] > 0.0)


def test_average_matches_contiguous_windows(cfg):
    rep = run_ecg(_spike_record(), cfg)
    _, red = windowed_reductions(rep.trace, cfg, 0.05, stride=0.05)
    assert red.size == 10
    assert red.mean() == pytest.approx(rep.avg_reduction, rel=1e-12)


def test_too_short(cfg):
    with pytest.raises(ValueError):
        run_ecg(from_samples([0.0, 0.01], [0.1, 0.2]), cfg, window=0.05)
    with pytest.raises(ValueError):
        run_ecg(_spike_record(), cfg, ecg_bandwidth=0.0)


@pytest.fixture(scope="module")
def ecg_report(ecg_csv):
    path, peaks = ecg_csv
    rec = scale_to_full_scale(load_record(path, 360.0), 1.0)
    return run_ecg(rec, AdcConfig(), 150.0, 0.05), peaks


def test_ecg_record_properties(ecg_report):
    rep, peaks = ecg_report
    limit = reduction_limit(AdcConfig())
    assert rep.overloads == 0
    assert 0 < rep.avg_reduction < rep.peak_reduction <= limit
    assert np.all((rep.window_reductions >= 0) & (rep.window_reductions <= limit))
    # the busiest window sits on a QRS complex
    assert np.min(np.abs(peaks - rep.peak_time)) < 0.05
    assert set(rep.to_json()) == {"avg_reduction", "peak_reduction", "peak_time_s", "t_clk_s",
                                  "n_crossings", "overloads"}

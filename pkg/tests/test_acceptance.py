"""Acceptance criteria. Each test appends one PASS/FAIL line that is printed in
the terminal summary, then asserts."""
import math
import time

import numpy as np
from conftest import ACCEPTANCE_LINES
from oracles import dense_level_crossings, sine_np, triangle_np

from lcadc import (AdcConfig, ClockConfig, ack_times, analytic_mean_power, check_equivalence,
                   load_record, make_sine, make_triangle, max_clock_period, max_tracking_frequency,
                   measured_power, reconstruct, run_ecg, scale_to_full_scale, simulate,
                   tracking_error)
from lcadc.afsm import single_literal_mutations
from lcadc.cli import main
from lcadc.metrics import dense_grid
from lcadc.power import mix_power, reduction_limit

CFG = AdcConfig()
CEILING = 93 / (64 * math.pi)


def report(n, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] #{n:<2} {detail}")
    assert ok, detail


def test_01_off_time_ceiling():
    parts, ok = [], True
    for k, f in enumerate((10, 100, 1000)):
        t_clk = max_clock_period(f, 0.5, CFG)
        analytic = analytic_mean_power(62, t_clk, 1 / f, CFG).off_fraction
        tr = simulate(make_sine(0.5, f, 0.5), CFG, ClockConfig.random_phase(t_clk, 100 + k), 20 / f)
        emp = measured_power(tr, CFG).off_fraction
        ok &= abs(analytic - CEILING) < 1e-12 and abs(emp - analytic) <= 0.005
        parts.append(f"{f} Hz: {emp:.4f}")
    report(1, ok, f"off fraction at clock bound, analytic {CEILING:.4f}, empirical "
                  + ", ".join(parts) + " (tol 0.5 pp)")


def test_02_expected_off_time():
    clk = ClockConfig(4.9736e-6, 1.234e-6)
    rng = np.random.default_rng(12345)
    reqs = rng.uniform(0.0, 1e-3, 100_000)
    lat = np.array([ack_times(t, clk)[1] - t for t in reqs])
    rel = lat.mean() / (1.5 * clk.t_clk) - 1
    report(2, abs(rel) <= 0.005, f"mean REQ->ACK fall latency / (1.5 t_clk) - 1 = {rel:+.5f} (tol 0.5%)")


def test_03_clock_bound_sharpness():
    ok, parts = True, []
    for k, f in enumerate((10, 100, 1000)):
        src = make_sine(0.5, f, 0.5)
        bound = max_clock_period(f, 0.5, CFG)
        at = simulate(src, CFG, ClockConfig.random_phase(bound, 200 + k), 5 / f)
        over = simulate(src, CFG, ClockConfig.random_phase(2 * bound, 300 + k), 5 / f)
        n_over = over.n_catch_up + len(over.overload_errors)
        # a run of catch-ups starts only where the input covers one LSB within the
        # handshake, i.e. where |slope| >= delta / (t_comp + 2 t_clk) somewhere in between
        need = CFG.delta / (CFG.t_comp + 2 * 2 * bound)
        starts = [(p, e) for p, e in zip(over.events, over.events[1:]) if e.catch_up and not p.catch_up]
        steep = all(np.max(np.abs(np.cos(2 * np.pi * f * np.linspace(p.t_cross, e.t_cross, 64))))
                    * 2 * np.pi * f * 0.5 >= need for p, e in starts)
        ok &= len(at.overload_errors) == 0 and n_over >= 1 and bool(starts) and steep
        parts.append(f"{f} Hz: {len(at.overload_errors)} at bound / {n_over} at 2x")
    report(3, ok, "overloads " + ", ".join(parts))


def test_04_tracking_bandwidth():
    f = max_tracking_frequency(CFG, 0.5)
    rel = f / 15.08e3 - 1
    report(4, abs(rel) <= 1e-3, f"f_max = {f / 1e3:.3f} kHz vs 15.08 kHz (tol 0.1%); "
                                f"quoted 11 kHz differs by {f / 11e3 - 1:+.1%}, reported only")


def test_05_power_endpoints():
    idle = measured_power(simulate(make_sine(0.0, 10, 0.3), CFG, ClockConfig(1e-6), 0.05), CFG)
    limit = reduction_limit(CFG)
    full = 1 - mix_power(1.0, CFG) / CFG.p_on
    ok = idle.mean_power == 12.2e-6 and abs(full - 0.4508) <= 1e-4 and abs(limit - 0.455) <= 0.005
    report(5, ok, f"idle {idle.mean_power * 1e6:.4f} uW, limit {full:.4%} "
                  f"(45.08% +/- 0.01%; 45.5% headline within 0.5 pp)")


def test_06_crossing_count():
    counts = []
    cases = [(make_sine(0.5, 100, 0.5), sine_np(0.5, 100, 0.5), None),
             (make_triangle(0.5, 10, 0.5), triangle_np(0.5, 10, 0.5), 1e-6)]
    for src, fn, t_clk in cases:
        T = 1 / src.frequency
        t_clk = t_clk or max_clock_period(src.frequency, 0.5, CFG)
        tr = simulate(src, CFG, ClockConfig(t_clk, 0.3 * t_clk), 2.5 * T)
        t0 = 1.2 * T
        sim = sum(t0 <= e.t_cross < t0 + T for e in tr.events)
        ref, _ = dense_level_crossings(fn, t0, t0 + T, 10**6, CFG.delta, CFG.top_level)
        counts.append((src.kind, sim, ref))
    ok = all(sim == ref == 62 for _, sim, ref in counts)
    report(6, ok, "events per period " + ", ".join(f"{k}: {s} (dense oracle {r})" for k, s, r in counts))


def test_07_fsm_equivalence():
    t0 = time.perf_counter()
    rep = check_equivalence(6)
    dt = time.perf_counter() - t0
    mutants = list(single_literal_mutations())
    caught = sum(not check_equivalence(6, eqs).ok for _, eqs in mutants)
    ok = rep.ok and caught == len(mutants) and dt < 1.0
    report(7, ok, f"equations match state graph in {dt * 1e3:.1f} ms; {caught}/{len(mutants)} mutants caught")


def test_08_ecg_properties(ecg_csv):
    path, peaks = ecg_csv
    rec = scale_to_full_scale(load_record(path, 360.0), CFG.v_fs)
    assert rec.end >= 30.0
    rep = run_ecg(rec, CFG, 150.0, 0.05)
    limit = reduction_limit(CFG)
    ok = rep.overloads == 0 and rep.avg_reduction > 0 and rep.avg_reduction < rep.peak_reduction <= limit
    near_r = np.min(np.abs(peaks - rep.peak_time))
    report(8, ok, f"ECG {rec.end:.0f} s: overloads {rep.overloads}, avg {rep.avg_reduction:.2%}, "
                  f"peak {rep.peak_reduction:.2%} at {rep.peak_time:.3f} s "
                  f"({near_r * 1e3:.0f} ms from an R peak), limit {limit:.2%}")


def test_09_tracking_error_bound():
    f = 10.0
    t_clk = max_clock_period(f, 0.5, CFG) / 10
    src = make_triangle(0.5, f, 0.5)
    tr = simulate(src, CFG, ClockConfig.random_phase(t_clk, 9), 2 / f)
    _, worst = tracking_error(src, reconstruct(tr, CFG), dense_grid(tr))
    bound = CFG.delta / 2 + src.max_slope * (CFG.t_comp + 2 * t_clk)
    report(9, worst <= bound, f"triangle max |error| {worst * 1e3:.4f} mV <= {bound * 1e3:.4f} mV")


def test_10_determinism(tmp_path, capsys):
    argv = ["simulate", "--signal", "sine", "--freq", "1000", "--duration", "0.005",
            "--clock-period", "4.9736e-6", "--random-phase", "--seed", "1"]
    for d in ("a", "b"):
        assert main(argv + ["--out-dir", str(tmp_path / d)]) == 0
    capsys.readouterr()
    a = (tmp_path / "a" / "trace.csv").read_bytes()
    b = (tmp_path / "b" / "trace.csv").read_bytes()
    report(10, a == b and len(a) > 0, f"repeat run trace.csv byte-identical ({len(a)} bytes)")


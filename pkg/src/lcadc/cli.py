"""Command-line front end.

    lcadc simulate --signal sine --freq 1000 --duration 0.01 --clock-period 4.9736e-6 --out-dir run1
    lcadc sweep --empirical
    lcadc ecg --record r.csv --fs 360
    lcadc bounds --fin 1000
    lcadc check-afsm --depth 6

Exit status: 0 success, 1 usage or input error, 2 runtime failure or
overload budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import afsm, io
from .ackgen import ClockConfig
from .adcmodel import AdcConfig
from .ecgexp import DEFAULT_BANDWIDTH, DEFAULT_WINDOW, run_ecg
from .engine import CrossingSearchError, SimulationError, simulate
from .metrics import dense_grid, reconstruct, tracking_error
from .power import (max_clock_period, max_tracking_frequency, measured_power,
                    sweep_off_fraction)
from .signal import load_record, make_sine, make_triangle, scale_to_full_scale

log = logging.getLogger("lcadc")

EXIT_USAGE = 1
EXIT_RUNTIME = 2

# bandwidth quoted alongside the default 659.5 ns comparator
REFERENCE_F_MAX_HZ = 11e3


class UsageError(Exception):
    pass


class RuntimeFailure(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("global")
    g.add_argument("--config", type=Path, help="JSON converter config (flags override it)")
    g.add_argument("--out-dir", type=Path, default=Path("."), help="output directory")
    g.add_argument("--seed", type=int, default=None, help="seed for randomised clock phase")
    g.add_argument("-v", "--verbose", action="store_true")
    a = p.add_argument_group("converter")
    a.add_argument("--bits", type=int)
    a.add_argument("--v-fs", type=float)
    a.add_argument("--t-comp", type=float, help="comparator decision time [s]")
    a.add_argument("--p-on", type=float, help="tracking power [W]")
    a.add_argument("--p-off", type=float, help="comparators-off power [W]")
    a.add_argument("--t-dig", type=float, help="digital update delay [s]")
    return p


def _clock_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("ACK clock")
    g.add_argument("--clock-phase", "--clock-phase-s", dest="clock_phase", type=float, default=0.0,
                   help="time of the first rising edge [s]")
    g.add_argument("--random-phase", action="store_true",
                   help="draw the clock phase uniformly from one period (uses --seed)")
    return p


def _signal_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input signal")
    g.add_argument("--signal", choices=("sine", "triangle", "record"), default="sine")
    g.add_argument("--freq", type=float, help="input frequency [Hz]")
    g.add_argument("--amp", type=float, help="amplitude [V] (default v_fs/2)")
    g.add_argument("--offset", type=float, help="DC offset [V] (default v_fs/2)")
    g.add_argument("--record", type=Path, help="CSV record for --signal record")
    g.add_argument("--fs", type=float, help="sample rate of a single-column record [Hz]")
    g.add_argument("--margin", type=float, default=0.0, help="full-scale margin fraction for records")
    g.add_argument("--no-scale", action="store_true", help="use record values as volts unchanged")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parent()
    clock = _clock_parent()
    parser = _Parser(prog="lcadc", description="Level-crossing ADC behavioural simulator.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", parents=[common, clock], help="simulate one input")
    _signal_args(p)
    p.add_argument("--duration", type=float, help="simulated time [s] (default: record length)")
    p.add_argument("--clock-period", "--clock-period-s", dest="clock_period", type=float,
                   required=True, help="ACK generator clock period [s]")
    p.add_argument("--tol", type=float, default=1e-12, help="crossing time tolerance [s]")
    p.add_argument("--max-overloads", type=int, default=None,
                   help="exit 2 if more overload errors than this occur")

    p = sub.add_parser("sweep", parents=[common], help="off fraction over input and clock frequency")
    p.add_argument("--freqs", type=float, nargs="+", help="explicit input frequencies [Hz]")
    p.add_argument("--f-min", type=float, default=10.0)
    p.add_argument("--f-max", type=float, default=1000.0)
    p.add_argument("--points", type=int, default=9, help="log-spaced frequencies between f-min and f-max")
    p.add_argument("--bound-fractions", type=float, nargs="+", default=[1.0, 0.5, 0.25],
                   help="clock periods as multiples of each frequency's bound")
    p.add_argument("--clock-periods", type=float, nargs="+",
                   help="absolute clock periods [s] (overrides --bound-fractions)")
    p.add_argument("--amp", type=float, help="sine amplitude [V] (default v_fs/2)")
    p.add_argument("--empirical", action="store_true", help="also simulate every feasible point")
    p.add_argument("--periods", type=int, default=20, help="sine periods per empirical run")
    p.add_argument("--jobs", type=int, default=1, help="parallel empirical runs")

    p = sub.add_parser("ecg", parents=[common, clock], help="ECG power-reduction experiment")
    p.add_argument("--record", type=Path, required=True)
    p.add_argument("--fs", type=float, help="sample rate of a single-column record [Hz]")
    p.add_argument("--bandwidth", type=float, default=DEFAULT_BANDWIDTH, help="ECG band limit [Hz]")
    p.add_argument("--window", type=float, default=DEFAULT_WINDOW, help="peak window [s]")
    p.add_argument("--margin", type=float, default=0.0)
    p.add_argument("--max-overloads", type=int, default=None)

    p = sub.add_parser("bounds", parents=[common], help="tracking bandwidth and clock-period bound")
    p.add_argument("--fin", type=float, help="input frequency for the clock bound [Hz]")
    p.add_argument("--amp", type=float, help="amplitude [V] (default v_fs/2)")

    p = sub.add_parser("check-afsm", parents=[common], help="equations vs state graph")
    p.add_argument("--depth", type=int, default=6)
    p.add_argument("--mutations", action="store_true", help="also check every single-literal mutant")
    return parser


def load_config(args) -> AdcConfig:
    base = AdcConfig.from_json(args.config).to_dict() if args.config else {}
    for flag, key in (("bits", "bits"), ("v_fs", "v_fs"), ("t_comp", "t_comp_s"),
                      ("p_on", "p_on_w"), ("p_off", "p_off_w"), ("t_dig", "t_dig_s")):
        val = getattr(args, flag)
        if val is not None:
            base[key] = val
    return AdcConfig.from_dict(base)


def make_clock(args, t_clk: float) -> ClockConfig:
    if args.random_phase:
        return ClockConfig.random_phase(t_clk, 0 if args.seed is None else args.seed)
    return ClockConfig(t_clk, args.clock_phase, args.seed)


def make_signal(args, cfg: AdcConfig):
    if args.signal == "record":
        if args.record is None:
            raise UsageError("--signal record needs --record FILE")
        src = load_record(args.record, args.fs)
        return src if args.no_scale else scale_to_full_scale(src, cfg.v_fs, args.margin)
    if args.freq is None:
        raise UsageError(f"--signal {args.signal} needs --freq")
    amp = cfg.v_fs / 2.0 if args.amp is None else args.amp
    offset = cfg.v_fs / 2.0 if args.offset is None else args.offset
    maker = make_sine if args.signal == "sine" else make_triangle
    return maker(amp, args.freq, offset)


def _out_dir(args) -> Path:
    args.out_dir.mkdir(parents=True, exist_ok=True)
    return args.out_dir


def _check_overloads(n: int, budget) -> None:
    if budget is not None and n > budget:
        raise RuntimeFailure(f"{n} overload errors exceed the budget of {budget}")


def cmd_simulate(args) -> int:
    cfg = load_config(args)
    src = make_signal(args, cfg)
    duration = args.duration
    if duration is None:
        if src.kind != "sampled":
            raise UsageError("--duration is required for analytic signals")
        duration = src.end
    clk = make_clock(args, args.clock_period)
    trace = simulate(src, cfg, clk, duration, tol=args.tol)
    rep = measured_power(trace, cfg)
    rec = reconstruct(trace, cfg)
    rmse, max_abs = tracking_error(src, rec, dense_grid(trace))

    out = _out_dir(args)
    io.write_trace_csv(out / "trace.csv", trace)
    io.write_segments_csv(out / "power_segments.csv", trace)
    io.write_reconstruction_csv(out / "reconstruction.csv", rec, duration)
    summary = {
        "events": len(trace.events),
        "catch_up_events": trace.n_catch_up,
        "off_fraction": rep.off_fraction,
        "mean_power_w": rep.mean_power,
        "reduction": rep.reduction,
        "overloads": len(trace.overload_errors),
        "duration_s": duration,
        "initial_level": trace.initial_level,
        "clock_period_s": clk.t_clk,
        "clock_phase_s": clk.phase,
    }
    io.write_json(out / "summary.json", summary)
    io.write_json(out / "metrics.json", {"rmse_v": rmse, "max_abs_v": max_abs})
    print(json.dumps(summary, sort_keys=True))
    _check_overloads(len(trace.overload_errors), args.max_overloads)
    return 0


def _empirical_point(job):
    f, t_clk, amp, periods, seed, cfg = job
    src = make_sine(amp, f, cfg.v_fs / 2.0)
    trace = simulate(src, cfg, ClockConfig.random_phase(t_clk, seed), periods / f)
    rep = measured_power(trace, cfg)
    return rep.off_fraction, rep.mean_power, len(trace.events), len(trace.overload_errors)


def cmd_sweep(args) -> int:
    cfg = load_config(args)
    if args.freqs:
        freqs = args.freqs
    else:
        if args.points < 1:
            raise UsageError("--points must be >= 1")
        freqs = np.geomspace(args.f_min, args.f_max, args.points).tolist()
    amp = cfg.v_fs / 2.0 if args.amp is None else args.amp
    if args.clock_periods:
        points = sweep_off_fraction(freqs, args.clock_periods, cfg, amplitude=amp)
    else:
        points = sweep_off_fraction(freqs, args.bound_fractions, cfg, relative=True, amplitude=amp)

    empirical = None
    if args.empirical:
        seed = 0 if args.seed is None else args.seed
        jobs = [(p.f_in, p.t_clk, amp, args.periods, seed + i, cfg)
                for i, p in enumerate(points) if p.feasible]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                results = list(ex.map(_empirical_point, jobs))
        else:
            results = [_empirical_point(j) for j in jobs]
        it = iter(results)
        empirical = [next(it) if p.feasible else None for p in points]

    out = _out_dir(args)
    io.write_sweep_csv(out / "sweep.csv", points, empirical)
    n_feasible = sum(p.feasible for p in points)
    print(json.dumps({"points": len(points), "feasible": n_feasible,
                      "csv": str(out / "sweep.csv")}, sort_keys=True))
    return 0


def cmd_ecg(args) -> int:
    cfg = load_config(args)
    rec = scale_to_full_scale(load_record(args.record, args.fs), cfg.v_fs, args.margin)
    seed = (0 if args.seed is None else args.seed) if args.random_phase else None
    report = run_ecg(rec, cfg, args.bandwidth, args.window, clock_phase=args.clock_phase, seed=seed)
    out = _out_dir(args)
    io.write_json(out / "ecg_report.json", report.to_json())
    io.write_windows_csv(out / "ecg_windows.csv", report.window_centers, report.window_reductions)
    io.write_trace_csv(out / "trace.csv", report.trace)
    io.write_segments_csv(out / "power_segments.csv", report.trace)
    print(json.dumps(report.to_json(), sort_keys=True))
    _check_overloads(report.overloads, args.max_overloads)
    return 0


def cmd_bounds(args) -> int:
    cfg = load_config(args)
    amp = cfg.v_fs / 2.0 if args.amp is None else args.amp
    out = {"f_max_hz": max_tracking_frequency(cfg, amp), "delta_v": cfg.delta, "amplitude_v": amp}
    if args.fin is not None:
        out["f_in_hz"] = args.fin
        out["t_clk_max_s"] = max_clock_period(args.fin, amp, cfg)
    if cfg == AdcConfig() and amp == cfg.v_fs / 2.0:
        out["reference_f_max_hz"] = REFERENCE_F_MAX_HZ
        out["note"] = ("formula value differs from the 11 kHz bandwidth usually quoted for the "
                       "659.5 ns comparator; f_max_hz follows the formula")
    print(json.dumps(out, sort_keys=True))
    return 0


def cmd_check_afsm(args) -> int:
    report = afsm.check_equivalence(args.depth)
    print(report)
    ok = report.ok
    if args.mutations:
        survivors = [d for d, eqs in afsm.single_literal_mutations()
                     if afsm.check_equivalence(args.depth, eqs).ok]
        n = sum(1 for _ in afsm.single_literal_mutations())
        print(f"mutants: {n}, caught: {n - len(survivors)}")
        for d in survivors:
            print(f"  survived: {d}")
        ok = ok and not survivors
    return 0 if ok else EXIT_RUNTIME


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "ecg": cmd_ecg,
    "bounds": cmd_bounds,
    "check-afsm": cmd_check_afsm,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"lcadc {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RuntimeFailure, CrossingSearchError, SimulationError, afsm.AfsmError) as exc:
        print(f"lcadc {args.command}: failed: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())

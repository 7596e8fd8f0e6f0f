"""Compare the compiled and pure-Python crossing kernels.

    python benchmarks/bench_kernels.py [--repeat 3]

Runs the same workloads under each backend, checks that both give identical
event streams and prints best-of-N wall times.
"""
import argparse
import sys
import time
from pathlib import Path

from lcadc import AdcConfig, ClockConfig, kernels, make_sine, simulate
from lcadc.power import max_clock_period
from lcadc.signal import from_samples, scale_to_full_scale

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from ecg_synth import synth_ecg  # noqa: E402


def workloads(cfg):
    t, v, _ = synth_ecg(duration=10.0, fs=360.0, seed=1)
    ecg = scale_to_full_scale(from_samples(t, v), cfg.v_fs)
    yield "ecg 10 s @ 360 Hz", ecg, ClockConfig(max_clock_period(150.0, 0.5, cfg)), ecg.end
    sine = make_sine(0.5, 1000.0, 0.5)
    yield "sine 1 kHz x 20 periods", sine, ClockConfig(max_clock_period(1000.0, 0.5, cfg), 1e-6), 0.02


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.compiled_available():
        print("compiled kernels are not built; nothing to compare", file=sys.stderr)
        return 1
    cfg = AdcConfig()
    print(f"{'workload':<26}{'events':>8}{'python [s]':>13}{'cython [s]':>13}{'speedup':>9}")
    for name, src, clk, duration in workloads(cfg):
        res = {}
        for backend in ("python", "cython"):
            kernels.backend = kernels.get_backend(backend)
            res[backend] = best_of(lambda: simulate(src, cfg, clk, duration), args.repeat)
        (tp, a), (tc, b) = res["python"], res["cython"]
        if a.events != b.events:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:<26}{len(a.events):>8}{tp:>13.3f}{tc:>13.3f}{tp / tc:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

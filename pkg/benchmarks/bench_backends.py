"""Time the compiled kernel against the pure-Python runner.

    python3 benchmarks/bench_backends.py [--reps 50] [--steps 1500] [--repeat 3]

Both backends run the same repetitions and must return identical totals;
the script exits nonzero if they do not.
"""
import argparse
import sys
import time

import numpy as np

from photonbandit import _backend
from photonbandit.environment import MachinesSpec
from photonbandit.experiment import RunConfig, episode_totals
from photonbandit.strategy import StrategyParams


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--reps", type=int, default=50)
    ap.add_argument("--steps", type=int, default=1500)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    cases = {
        "mixed (0.6,0.4) T=50": RunConfig(MachinesSpec(0.6, 0.4), 50, StrategyParams(14, 2), steps=args.steps, reps=args.reps),
        "entangled-only": RunConfig(strategy_kind="entangled-only", steps=args.steps, reps=args.reps),
    }
    if "cython" not in _backend.BACKENDS:
        print("compiled kernel not built; only the python backend is available", file=sys.stderr)

    print(f"{'case':<24}{'backend':<9}{'seconds':>10}{'steps/s':>14}{'speedup':>9}")
    status = 0
    for name, cfg in cases.items():
        results = {}
        for backend in _backend.BACKENDS:
            secs, totals = best_of(lambda: episode_totals(cfg, backend=backend), args.repeat)
            results[backend] = (secs, totals)
        py = results["python"][0]
        for backend, (secs, totals) in results.items():
            rate = cfg.steps * cfg.reps / secs
            print(f"{name:<24}{backend:<9}{secs:>10.4f}{rate:>14,.0f}{py / secs:>8.1f}x")
        if "cython" in results and not np.array_equal(results["python"][1], results["cython"][1]):
            print(f"MISMATCH between backends for {name}", file=sys.stderr)
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())

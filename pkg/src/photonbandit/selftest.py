"""Quick sanity run used by ``photonbandit selftest``.

Checks the analytic joint distributions against sampled frequencies, their
normalization over random settings, and the entangled-only baseline.
"""
from __future__ import annotations

import math
import sys
from typing import TextIO

import numpy as np

from .environment import MachinesSpec
from .experiment import RunConfig, monte_carlo_mean
from .optics import JOINT_ORDER, Correlated, EntangledSinglet, WaveplateSetting, joint_distribution, sample_joint_choice
from .rng import RngStream


def check_sampling(settings: int = 20, draws: int = 20_000, seed: int = 0, z: float = 4.0) -> list[str]:
    rng = RngStream(seed)
    angles = np.random.default_rng(seed)
    failures = []
    for i in range(settings):
        t1, h1, h2 = angles.uniform(-math.pi, math.pi, 3)
        mode = EntangledSinglet() if i % 2 else Correlated(float(t1))
        dist = joint_distribution(mode, WaveplateSetting(float(h1), float(h2)))
        counts = dict.fromkeys(JOINT_ORDER, 0)
        for _ in range(draws):
            counts[sample_joint_choice(dist, rng)] += 1
        for choice, p in zip(JOINT_ORDER, dist.as_tuple()):
            tol = z * math.sqrt(max(p * (1 - p), 1e-12) / draws) + 1e-12
            if abs(counts[choice] / draws - p) > tol:
                failures.append(f"setting {i}: {choice} freq {counts[choice] / draws:.4f} vs {p:.4f}")
    return failures


def check_normalization(settings: int = 10_000, seed: int = 1) -> list[str]:
    g = np.random.default_rng(seed)
    failures = []
    for t1, h1, h2, ent in zip(*g.uniform(-10, 10, (3, settings)), g.integers(0, 2, settings)):
        mode = EntangledSinglet() if ent else Correlated(float(t1))
        ps = joint_distribution(mode, WaveplateSetting(float(h1), float(h2))).as_tuple()
        if abs(sum(ps) - 1) > 1e-12 or min(ps) < -1e-12:
            failures.append(f"bad distribution {ps} at {(t1, h1, h2, ent)}")
    return failures


def check_baseline(reps: int = 1000, z: float = 3.0) -> list[str]:
    cfg = RunConfig(MachinesSpec(0.6, 0.4), happy_period=50, strategy_kind="entangled-only", reps=reps)
    mean, se = monte_carlo_mean(cfg)
    if abs(mean - 1500.0) > z * se:
        return [f"entangled-only mean {mean:.2f} outside 1500 +/- {z}*{se:.3f}"]
    return []


def run_selftest(out: TextIO = sys.stderr) -> int:
    status = 0
    for name, fn in [("sampling", check_sampling), ("normalization", check_normalization), ("baseline", check_baseline)]:
        failures = fn()
        print(f"{'PASS' if not failures else 'FAIL'} {name}", file=out)
        for f in failures[:10]:
            print(f"  {f}", file=out)
        status |= bool(failures)
    return int(status)

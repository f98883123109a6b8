"""Seeded Monte Carlo runs and the parameter sweeps behind the figures.

Repetition ``i`` of a configuration always uses the stream seeded from
``(master_seed, i)``, so every sweep point shares the same random inputs
(common random numbers) and results do not depend on thread count.
"""
from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _backend
from ._fallback import play_episode
from .environment import MachinesSpec
from .rng import RngStream, child_states
from .strategy import StrategyParams

STRATEGY_KINDS = ("mixed", "entangled-only")
DEFAULT_T_VALUES = tuple(range(10, 101, 10))
DEFAULT_SI_RANGE = range(1, 51)


@dataclass(frozen=True)
class RunConfig:
    machines: MachinesSpec = field(default_factory=lambda: MachinesSpec(0.6, 0.4))
    happy_period: Optional[int] = 50
    params: StrategyParams = field(default_factory=StrategyParams)
    strategy_kind: str = "mixed"
    steps: int = 1500
    reps: int = 1000
    master_seed: int = 0

    def __post_init__(self):
        if self.strategy_kind not in STRATEGY_KINDS:
            raise ValueError(f"strategy_kind must be one of {STRATEGY_KINDS}, got {self.strategy_kind!r}")
        if self.steps < 1 or self.reps < 1:
            raise ValueError("steps and reps must be >= 1")
        if self.happy_period is not None and self.happy_period < 1:
            raise ValueError(f"happy_period must be positive or None, got {self.happy_period}")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")

    def with_params(self, **changes) -> "RunConfig":
        return replace(self, params=replace(self.params, **changes))

    def describe(self) -> dict:
        return {
            "p_a": self.machines.p_a,
            "p_b": self.machines.p_b,
            "happy_period": "none" if self.happy_period is None else self.happy_period,
            "si": self.params.si,
            "cp": self.params.cp,
            "early_exit": self.params.early_exit,
            "strategy": self.strategy_kind,
            "steps": self.steps,
            "reps": self.reps,
            "master_seed": self.master_seed,
        }


@dataclass
class EpisodeResult:
    total_reward: float
    per_player: tuple[float, float]
    trace: Optional[list] = None


@dataclass(frozen=True)
class SweepRow:
    param: float
    mean: float
    stderr: float
    reps: int


@dataclass
class SweepResult:
    param_name: str
    rows: list[SweepRow]
    config: Optional[RunConfig] = None
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = sorted(self.rows, key=lambda r: r.param)

    @property
    def params(self) -> np.ndarray:
        return np.array([r.param for r in self.rows])

    @property
    def means(self) -> np.ndarray:
        return np.array([r.mean for r in self.rows])

    @property
    def stderrs(self) -> np.ndarray:
        return np.array([r.stderr for r in self.rows])

    def row(self, param) -> SweepRow:
        for r in self.rows:
            if r.param == param:
                return r
        raise KeyError(param)

    def argmax(self):
        """Parameter of the largest mean (smallest parameter on ties)."""
        return self.rows[int(np.argmax(self.means))].param


def run_episode(config: RunConfig, rep_index: int, trace: bool = False) -> EpisodeResult:
    """Replay repetition ``rep_index``.  Tracing goes through the Python runner."""
    state = child_states(config.master_seed, rep_index + 1)[rep_index]
    if trace:
        r1, r2, rows = play_episode(config, RngStream.from_state(state), trace=True)
        return EpisodeResult(r1 + r2, (r1, r2), rows)
    r1, r2 = _backend.get().run_episodes(config, state[None, :])[0]
    return EpisodeResult(float(r1 + r2), (float(r1), float(r2)))


def episode_totals(config: RunConfig, threads: int = 1, backend: Optional[str] = None) -> np.ndarray:
    """Per-repetition ``(reward_1, reward_2)`` in repetition order."""
    seeds = child_states(config.master_seed, config.reps)
    impl = _backend.get(backend)
    if threads <= 1 or config.reps < 2:
        return impl.run_episodes(config, seeds)
    chunks = np.array_split(np.arange(config.reps), min(threads, config.reps))
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(lambda idx: impl.run_episodes(config, seeds[idx]), chunks))
    return np.concatenate(parts)


def _mean_stderr(totals: np.ndarray) -> tuple[float, float]:
    n = len(totals)
    # totals are multiples of 0.5, so fsum is exact and order-free
    mean = math.fsum(totals) / n
    if n < 2:
        return mean, 0.0
    var = math.fsum((totals - mean) ** 2) / (n - 1)
    return mean, math.sqrt(var / n)


def monte_carlo_mean(config: RunConfig, threads: int = 1) -> tuple[float, float]:
    """(mean total reward, standard error) over ``config.reps`` repetitions."""
    totals = episode_totals(config, threads).sum(axis=1)
    return _mean_stderr(totals)


def _check_range(values: Sequence[int], lo: int, hi: int, name: str) -> list[int]:
    values = list(values)
    if not values:
        raise ValueError(f"{name} is empty")
    if min(values) < lo or max(values) > hi:
        raise ValueError(f"{name} must lie within [{lo}, {hi}]")
    return values


def sweep_search_interval(base: RunConfig, si_range: Iterable[int], threads: int = 1) -> SweepResult:
    rows = []
    for si in _check_range(si_range, 1, 200, "si_range"):
        mean, se = monte_carlo_mean(base.with_params(si=si), threads)
        rows.append(SweepRow(si, mean, se, base.reps))
    return SweepResult("si", rows, base)


def sweep_check_span(
    base: RunConfig,
    cp_range: Iterable[int],
    t_values: Sequence[Optional[int]] = DEFAULT_T_VALUES,
    threads: int = 1,
) -> SweepResult:
    """Mean total reward per check span, averaged over the happy-hour periods."""
    t_values = list(t_values)
    rows = []
    for cp in _check_range(cp_range, 1, 50, "cp_range"):
        stats = [monte_carlo_mean(replace(base.with_params(cp=cp), happy_period=t), threads) for t in t_values]
        mean = sum(m for m, _ in stats) / len(stats)
        se = math.sqrt(sum(s * s for _, s in stats)) / len(stats)
        rows.append(SweepRow(cp, mean, se, base.reps * len(t_values)))
    return SweepResult("cp", rows, base, {"t_values": t_values})


@dataclass
class NormalizedRows:
    params: np.ndarray
    values: np.ndarray
    flat: bool = False


def normalize_rewards(sweep: SweepResult) -> NormalizedRows:
    """Map means to ``(R - R_min) / (R_max - R_min)`` within the sweep."""
    if len(sweep.rows) < 2:
        raise ValueError("normalization needs at least two sweep points")
    means = sweep.means
    lo, hi = means.min(), means.max()
    if hi == lo:
        warnings.warn("flat sweep: all means equal, normalized values set to 0", RuntimeWarning, stacklevel=2)
        return NormalizedRows(sweep.params, np.zeros_like(means), flat=True)
    return NormalizedRows(sweep.params, (means - lo) / (hi - lo))


def difficulty(p_a: float, p_b: float) -> float:
    return 1.0 - (p_a - p_b)


@dataclass
class OptimalSIRow:
    p_a: float
    p_b: float
    difficulty: float
    optimal_si: int
    si_values: np.ndarray
    mean_normalized: np.ndarray
    sweeps: dict


def optimal_si_curve(
    prob_pairs: Sequence[tuple[float, float]],
    t_values: Sequence[int] = DEFAULT_T_VALUES,
    si_range: Iterable[int] = DEFAULT_SI_RANGE,
    base: Optional[RunConfig] = None,
    threads: int = 1,
) -> list[OptimalSIRow]:
    """Search interval maximizing the period-averaged normalized reward, per pair."""
    base = base or RunConfig()
    si_range = list(si_range)
    out = []
    for p_a, p_b in prob_pairs:
        if p_a < p_b:
            raise ValueError(f"expected p_a >= p_b, got ({p_a}, {p_b})")
        machines = MachinesSpec(p_a, p_b)
        sweeps = {}
        curves = []
        for t in t_values:
            sw = sweep_search_interval(replace(base, machines=machines, happy_period=t), si_range, threads)
            sweeps[t] = sw
            curves.append(normalize_rewards(sw).values)
        avg = np.mean(curves, axis=0)
        best = si_range[int(np.argmax(avg))]
        out.append(OptimalSIRow(p_a, p_b, difficulty(p_a, p_b), best, np.array(si_range), avg, sweeps))
    return sorted(out, key=lambda r: r.difficulty)

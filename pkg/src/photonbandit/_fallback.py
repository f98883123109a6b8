"""Pure-Python episode runner.

Built directly from the public optics/environment/strategy operations.  It is
the reference the compiled kernel must match draw for draw, and the backend
used when the extension is not built.
"""
from __future__ import annotations

import numpy as np

from .environment import HappyHourSchedule, dispense
from .optics import joint_distribution, sample_joint_choice
from .rng import RngStream
from .strategy import (
    Observation,
    entangled_only_config,
    init_strategy,
    next_photon_config,
    observe_and_advance,
)


def draw_schedule(config, rng: RngStream) -> HappyHourSchedule:
    if config.happy_period is None:
        return HappyHourSchedule.disabled()
    offset = rng.integer(1, 2 * config.happy_period)
    return HappyHourSchedule.for_machines(config.machines, config.happy_period, offset)


def play_episode(config, rng: RngStream, trace: bool = False):
    """Returns ``(reward_1, reward_2, rows)``; ``rows`` is empty unless ``trace``."""
    schedule = draw_schedule(config, rng)
    mixed = config.strategy_kind == "mixed"
    params = config.params
    state = init_strategy(params)
    dist_cache = {}
    r1_total = r2_total = 0.0
    rows = []

    for t in range(1, config.steps + 1):
        photon = next_photon_config(state) if mixed else entangled_only_config()
        dist = dist_cache.get(photon)
        if dist is None:
            dist = dist_cache[photon] = joint_distribution(*photon)
        choices = sample_joint_choice(dist, rng)
        out = dispense(config.machines, schedule, t, choices, rng)
        r1_total += out.reward_1
        r2_total += out.reward_2
        if trace:
            rows.append((t, state, choices, out))
        if mixed:
            state = observe_and_advance(state, params, Observation(choices, out.rewards), rng)

    return r1_total, r2_total, rows


def run_episodes(config, seeds: np.ndarray) -> np.ndarray:
    out = np.empty((len(seeds), 2), dtype=np.float64)
    for i, state in enumerate(seeds):
        r1, r2, _ = play_episode(config, RngStream.from_state(state))
        out[i, 0] = r1
        out[i, 1] = r2
    return out

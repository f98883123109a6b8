"""Entangled/correlated mixed strategy as a three-phase state machine.

Explore
    Singlet photons with parallel plates.  Each step both machines are played
    exactly once; wins are counted per machine.  After ``si`` steps the
    machine with more wins becomes the candidate ``m``.
Check
    Correlated photons force both players onto ``m`` for up to ``cp`` steps.
    A full coin under conflict proves a happy hour and moves to Exploit.
Exploit
    Stay on ``m`` until a conflicted win pays half, then explore afresh.

One state machine drives both players (their observations are pooled).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .optics import (
    JointChoice,
    Machine,
    SourceMode,
    WaveplateSetting,
    waveplates_for_exploit,
    waveplates_for_explore,
)
from .rng import RngStream

FULL = 1.0
HALF = 0.5


@dataclass(frozen=True)
class StrategyParams:
    """``si`` exploration steps per round and at most ``cp`` check steps.

    With ``early_exit`` a half-coin win during Check ends the check at once;
    otherwise the check always runs until ``cp`` steps unless a full coin
    shows up first.
    """

    si: int = 14
    cp: int = 2
    early_exit: bool = False

    def __post_init__(self):
        if self.si < 1 or self.cp < 1:
            raise ValueError(f"si and cp must be >= 1, got si={self.si}, cp={self.cp}")


@dataclass(frozen=True)
class Explore:
    steps_done: int = 0
    l_a: int = 0
    l_b: int = 0


@dataclass(frozen=True)
class Check:
    m: Machine
    steps_done: int = 0


@dataclass(frozen=True)
class Exploit:
    m: Machine


StrategyState = Union[Explore, Check, Exploit]


@dataclass(frozen=True)
class Observation:
    choices: JointChoice
    rewards: tuple[float, float]


class ObservationError(ValueError):
    """Observation could not have come from the configuration the state asked for."""


def init_strategy(params: StrategyParams) -> StrategyState:
    return Explore()


def next_photon_config(state: StrategyState) -> tuple[SourceMode, WaveplateSetting]:
    if isinstance(state, Explore):
        return waveplates_for_explore()
    return waveplates_for_exploit(state.m)


def estimate_best_machine(l_a: int, l_b: int, rng: RngStream) -> Machine:
    """Arg-max of the win counts.  Ties are broken by one uniform draw."""
    if l_a > l_b:
        return Machine.A
    if l_b > l_a:
        return Machine.B
    return Machine.A if rng.random() < 0.5 else Machine.B


def observe_and_advance(
    state: StrategyState,
    params: StrategyParams,
    obs: Observation,
    rng: RngStream,
) -> StrategyState:
    c1, c2 = obs.choices
    r1, r2 = obs.rewards

    if isinstance(state, Explore):
        if c1 == c2:
            raise ObservationError(f"conflicting choices {obs.choices} during exploration")
        win_1 = r1 == FULL
        win_2 = r2 == FULL
        # player 1 sits on A when c1 is A, otherwise player 2 does
        a_won, b_won = (win_1, win_2) if c1 == Machine.A else (win_2, win_1)
        steps = state.steps_done + 1
        l_a = state.l_a + a_won
        l_b = state.l_b + b_won
        if steps >= params.si:
            return Check(estimate_best_machine(l_a, l_b, rng))
        return Explore(steps, l_a, l_b)

    if c1 != state.m or c2 != state.m:
        raise ObservationError(f"expected both players on {state.m.name}, got {obs.choices}")

    if isinstance(state, Check):
        if FULL in (r1, r2):
            return Exploit(state.m)
        if params.early_exit and HALF in (r1, r2):
            return Explore()
        steps = state.steps_done + 1
        if steps >= params.cp:
            return Explore()
        return Check(state.m, steps)

    if isinstance(state, Exploit):
        if HALF in (r1, r2):
            return Explore()
        return state

    raise TypeError(f"unknown strategy state {state!r}")


def entangled_only_config() -> tuple[SourceMode, WaveplateSetting]:
    return waveplates_for_explore()

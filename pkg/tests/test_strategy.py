import math

import pytest

from conftest import HIT, MISS, ScriptedRng
from photonbandit.environment import MachinesSpec
from photonbandit.experiment import RunConfig
from photonbandit._fallback import play_episode
from photonbandit.optics import Correlated, EntangledSinglet, Machine, WaveplateSetting, joint_distribution
from photonbandit.rng import RngStream
from photonbandit.strategy import (
    Check,
    Exploit,
    Explore,
    Observation,
    ObservationError,
    StrategyParams,
    entangled_only_config,
    estimate_best_machine,
    init_strategy,
    next_photon_config,
    observe_and_advance,
)

A, B = Machine.A, Machine.B
P = StrategyParams(si=14, cp=2)


def step(state, choices, rewards, params=P, rng=None):
    return observe_and_advance(state, params, Observation(choices, rewards), rng or RngStream(0))


class TestInit:
    @pytest.mark.parametrize("si, cp", [(14, 2), (1, 1)])
    def test_initial_state(self, si, cp):
        assert init_strategy(StrategyParams(si, cp)) == Explore(0, 0, 0)

    def test_starts_entangled(self):
        mode, wp = next_photon_config(init_strategy(P))
        assert mode == EntangledSinglet() and wp == WaveplateSetting(0, 0)

    @pytest.mark.parametrize("si, cp", [(0, 2), (3, 0)])
    def test_param_validation(self, si, cp):
        with pytest.raises(ValueError):
            StrategyParams(si, cp)


class TestPhotonConfig:
    def test_explore(self):
        assert next_photon_config(Explore(3, 2, 1)) == (EntangledSinglet(), WaveplateSetting(0, 0))

    def test_check_a(self):
        mode, wp = next_photon_config(Check(A, 0))
        assert mode == Correlated(0.0)
        assert joint_distribution(mode, wp).p_aa == 1.0

    def test_exploit_b(self):
        mode, wp = next_photon_config(Exploit(B))
        assert mode == Correlated(0.0)
        assert joint_distribution(mode, wp).p_bb == 1.0

    def test_baseline_constant(self):
        cfgs = {entangled_only_config() for _ in range(10)}
        assert cfgs == {(EntangledSinglet(), WaveplateSetting(0, 0))}


class TestEstimate:
    def test_majority(self):
        assert estimate_best_machine(9, 4, RngStream(0)) == A
        assert estimate_best_machine(0, 7, RngStream(0)) == B

    def test_no_draw_without_tie(self):
        rng = ScriptedRng([])
        estimate_best_machine(3, 2, rng)
        assert rng.used == 0

    def test_tie_is_fair(self):
        n = 100_000
        rng = RngStream(17)
        a = sum(estimate_best_machine(5, 5, rng) == A for _ in range(n))
        assert abs(a / n - 0.5) <= 4 * math.sqrt(0.25 / n)


class TestTransitions:
    def test_explore_counts(self):
        s = step(Explore(0, 0, 0), (A, B), (1.0, 0.0))
        assert s == Explore(1, 1, 0)
        s = step(s, (B, A), (1.0, 1.0))
        assert s == Explore(2, 2, 1)

    def test_explore_to_check(self):
        assert step(Explore(13, 8, 3), (A, B), (1.0, 0.0)) == Check(A, 0)

    def test_check_to_exploit(self):
        assert step(Check(A, 0), (A, A), (1.0, 1.0)) == Exploit(A)

    def test_exploit_ends_on_half(self):
        assert step(Exploit(A), (A, A), (0.5, 0.5)) == Explore(0, 0, 0)

    @pytest.mark.parametrize("r", [0.0, 1.0])
    def test_exploit_stays(self, r):
        assert step(Exploit(A), (A, A), (r, r)) == Exploit(A)

    def test_check_losses_run_out(self):
        assert step(Check(A, P.cp - 1), (A, A), (0.0, 0.0)) == Explore(0, 0, 0)
        assert step(Check(A, 0), (A, A), (0.0, 0.0)) == Check(A, 1)

    def test_check_half_keeps_checking_by_default(self):
        assert step(Check(A, 0), (A, A), (0.5, 0.5)) == Check(A, 1)

    def test_check_half_exits_with_early_exit(self):
        params = StrategyParams(14, 2, early_exit=True)
        assert step(Check(A, 0), (A, A), (0.5, 0.5), params) == Explore(0, 0, 0)

    def test_conflict_during_explore_rejected(self):
        with pytest.raises(ObservationError):
            step(Explore(1, 0, 0), (A, A), (0.5, 0.5))

    def test_wrong_machine_during_check_rejected(self):
        with pytest.raises(ObservationError):
            step(Check(A, 0), (A, B), (1.0, 0.0))
        with pytest.raises(ObservationError):
            step(Exploit(B), (A, A), (0.5, 0.5))


def test_counters_stay_bounded():
    rng = RngStream(3)
    params = StrategyParams(5, 3)
    state = init_strategy(params)
    for _ in range(5000):
        if isinstance(state, Explore):
            choices = (A, B) if rng.random() < 0.5 else (B, A)
            rewards = tuple(float(rng.random() < 0.5) for _ in range(2))
        else:
            choices = (state.m, state.m)
            r = [0.0, 0.5, 1.0][int(rng.random() * 3)]
            rewards = (r, r)
        prev = state
        state = observe_and_advance(state, params, Observation(choices, rewards), rng)
        if isinstance(state, Explore):
            assert state.l_a <= state.steps_done and state.l_b <= state.steps_done <= params.si
        if isinstance(state, Exploit):
            assert isinstance(prev, (Check, Exploit))
        if isinstance(state, Check) and not isinstance(prev, Check):
            assert isinstance(prev, Explore) and prev.steps_done == params.si - 1


# Hand-traced 20-step episode.  si=3, cp=2, T=5; offset draw 0.55 -> offset 6,
# so steps 6-10 and 16-20 are happy.  Explore draw 0.25 -> (A,B), 0.75 -> (B,A).
AB, BA, MM = 0.25, 0.75, 0.5
SCRIPT = [
    # (joint draw, A, B, state before, choices, rewards)
    (AB, HIT, MISS, Explore(0, 0, 0), (A, B), (1.0, 0.0)),
    (BA, HIT, HIT, Explore(1, 1, 0), (B, A), (1.0, 1.0)),
    (AB, MISS, MISS, Explore(2, 2, 1), (A, B), (0.0, 0.0)),
    (MM, MISS, HIT, Check(A, 0), (A, A), (0.0, 0.0)),
    (MM, MISS, HIT, Check(A, 1), (A, A), (0.0, 0.0)),
    (AB, HIT, MISS, Explore(0, 0, 0), (A, B), (1.0, 0.0)),
    (AB, HIT, MISS, Explore(1, 1, 0), (A, B), (1.0, 0.0)),
    (BA, MISS, HIT, Explore(2, 2, 0), (B, A), (1.0, 0.0)),
    (MM, HIT, MISS, Check(A, 0), (A, A), (1.0, 1.0)),
    (MM, MISS, MISS, Exploit(A), (A, A), (0.0, 0.0)),
    (MM, HIT, MISS, Exploit(A), (A, A), (0.5, 0.5)),
    (AB, MISS, HIT, Explore(0, 0, 0), (A, B), (0.0, 1.0)),
    (BA, MISS, HIT, Explore(1, 0, 1), (B, A), (1.0, 0.0)),
    (AB, HIT, MISS, Explore(2, 0, 2), (A, B), (1.0, 0.0)),
    (MM, MISS, HIT, Check(B, 0), (B, B), (0.5, 0.5)),
    (MM, MISS, MISS, Check(B, 1), (B, B), (0.0, 0.0)),
    (AB, HIT, HIT, Explore(0, 0, 0), (A, B), (1.0, 1.0)),
    (BA, HIT, MISS, Explore(1, 1, 1), (B, A), (0.0, 1.0)),
    (AB, MISS, HIT, Explore(2, 2, 1), (A, B), (0.0, 1.0)),
    (MM, HIT, MISS, Check(A, 0), (A, A), (1.0, 1.0)),
]
TIE_BREAK_AFTER_STEP = 19  # 2-2 tie; draw 0.1 picks A
FINAL_STATE = Exploit(A)


def scripted_values():
    values = [0.55]
    for t, (u, ha, hb, *_rest) in enumerate(SCRIPT, start=1):
        values += [u, ha, hb]
        if t == TIE_BREAK_AFTER_STEP:
            values.append(0.1)
    return values


def test_hand_traced_episode():
    config = RunConfig(MachinesSpec(0.6, 0.4), happy_period=5, params=StrategyParams(3, 2), steps=20, reps=1)
    rng = ScriptedRng(scripted_values())
    r1, r2, rows = play_episode(config, rng, trace=True)
    assert rng.exhausted
    assert [row[1] for row in rows] == [s[3] for s in SCRIPT]
    assert [row[2] for row in rows] == [s[4] for s in SCRIPT]
    assert [row[3].rewards for row in rows] == [s[5] for s in SCRIPT]
    assert [row[3].happy_active for row in rows] == [6 <= t <= 10 or t >= 16 for t in range(1, 21)]
    assert (r1, r2) == (11.0, 8.0)
    t, last_state, choices, out = rows[-1]
    final = observe_and_advance(last_state, config.params, Observation(choices, out.rewards), ScriptedRng([]))
    assert final == FINAL_STATE

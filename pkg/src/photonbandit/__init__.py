"""Entangled/correlated photon mixed strategy for the two-player competitive bandit."""
from ._backend import BACKEND
from .environment import HappyHourSchedule, MachinesSpec, StepOutcome, dispense, is_happy_hour
from .experiment import (
    EpisodeResult,
    RunConfig,
    SweepResult,
    monte_carlo_mean,
    normalize_rewards,
    optimal_si_curve,
    run_episode,
    sweep_check_span,
    sweep_search_interval,
)
from .optics import (
    Correlated,
    EntangledSinglet,
    JointChoiceDistribution,
    Machine,
    WaveplateSetting,
    joint_distribution,
    sample_joint_choice,
)
from .rng import RngStream
from .strategy import StrategyParams

__version__ = "0.1.0"

"""Two slot machines with a periodic happy hour on the better one.

A conflicted win normally pays each player half a coin.  While the happy hour
is on, the happy machine pays a full coin to everyone who picked it.
Steps are 1-indexed.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .optics import JointChoice, Machine
from .rng import RngStream


@dataclass(frozen=True)
class MachinesSpec:
    p_a: float
    p_b: float

    def __post_init__(self):
        for name, p in (("p_a", self.p_a), ("p_b", self.p_b)):
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {p}")

    @property
    def better(self) -> Machine:
        """Machine with the larger hit probability; A on a tie."""
        return Machine.B if self.p_b > self.p_a else Machine.A

    def prob(self, m: Machine) -> float:
        return self.p_a if m == Machine.A else self.p_b


@dataclass(frozen=True)
class HappyHourSchedule:
    """Happy for ``period_t`` steps, then unhappy for ``period_t`` steps, repeating.

    The first happy window starts at ``offset``; the pattern extends periodically
    to earlier steps as well.  ``period_t=None`` disables happy hours.
    """

    period_t: Optional[int] = None
    offset: int = 1
    happy_machine: Machine = Machine.A

    def __post_init__(self):
        if self.period_t is not None:
            if self.period_t < 1:
                raise ValueError(f"period_t must be positive, got {self.period_t}")
            if not 1 <= self.offset <= 2 * self.period_t:
                raise ValueError(f"offset must lie in [1, {2 * self.period_t}], got {self.offset}")

    @classmethod
    def for_machines(cls, machines: MachinesSpec, period_t: Optional[int], offset: int = 1):
        return cls(period_t, offset, machines.better)

    @classmethod
    def disabled(cls) -> "HappyHourSchedule":
        return cls(None)


@dataclass(frozen=True)
class StepOutcome:
    reward_1: float
    reward_2: float
    hit_a: bool
    hit_b: bool
    happy_active: bool

    @property
    def rewards(self) -> tuple[float, float]:
        return (self.reward_1, self.reward_2)


def is_happy_hour(schedule: HappyHourSchedule, t: int) -> bool:
    if schedule.period_t is None:
        return False
    period = schedule.period_t
    # Python's % is already non-negative for a positive modulus
    return (t - schedule.offset) % (2 * period) < period


def dispense(
    machines: MachinesSpec,
    schedule: HappyHourSchedule,
    t: int,
    choices: JointChoice,
    rng: RngStream,
) -> StepOutcome:
    """Pay out one step.  Always consumes two uniforms: machine A, then machine B."""
    hit_a = rng.random() < machines.p_a
    hit_b = rng.random() < machines.p_b
    happy = is_happy_hour(schedule, t)
    c1, c2 = choices
    hits = (hit_a, hit_b)

    if c1 != c2:
        r1 = 1.0 if hits[c1] else 0.0
        r2 = 1.0 if hits[c2] else 0.0
    elif not hits[c1]:
        r1 = r2 = 0.0
    elif happy and c1 == schedule.happy_machine:
        r1 = r2 = 1.0
    else:
        r1 = r2 = 0.5
    return StepOutcome(r1, r2, hit_a, hit_b, happy)

"""Joint decision statistics of photon pairs behind half-wave plates and PBSs.

Each player owns one arm of a photon pair.  A half-wave plate at angle
``theta_hw`` maps linear polarization ``theta`` to ``2*theta_hw - theta``; the
following polarizing beam splitter sends the photon to the horizontal detector
(machine A) with probability ``cos^2`` and to the vertical one (machine B)
with probability ``sin^2``.

Two sources are modelled: a polarization-orthogonal product pair
(:class:`Correlated`) and the singlet (:class:`EntangledSinglet`).  The singlet
is represented only through its outcome statistics.

All angles are radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Union

from .rng import RngStream


class Machine(IntEnum):
    A = 0
    B = 1

    def other(self) -> "Machine":
        return Machine(1 - self)


def _check_finite(*values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise ValueError(f"angle must be finite, got {v!r}")


@dataclass(frozen=True)
class WaveplateSetting:
    theta_hw1: float
    theta_hw2: float

    def __post_init__(self):
        _check_finite(self.theta_hw1, self.theta_hw2)


@dataclass(frozen=True)
class Correlated:
    """Orthogonal product pair; the idler sits at ``theta1 + pi/2``."""

    theta1: float = 0.0

    def __post_init__(self):
        _check_finite(self.theta1)

    @property
    def theta2(self) -> float:
        return self.theta1 + math.pi / 2


@dataclass(frozen=True)
class EntangledSinglet:
    pass


SourceMode = Union[Correlated, EntangledSinglet]

JointChoice = tuple[Machine, Machine]

# inverse-CDF order used by every sampler in the package
JOINT_ORDER: tuple[JointChoice, ...] = (
    (Machine.A, Machine.A),
    (Machine.A, Machine.B),
    (Machine.B, Machine.A),
    (Machine.B, Machine.B),
)


@dataclass(frozen=True)
class JointChoiceDistribution:
    p_aa: float
    p_ab: float
    p_ba: float
    p_bb: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.p_aa, self.p_ab, self.p_ba, self.p_bb)

    @property
    def conflict_probability(self) -> float:
        return self.p_aa + self.p_bb

    def prob(self, choice: JointChoice) -> float:
        return self.as_tuple()[JOINT_ORDER.index(tuple(choice))]

    def thresholds(self) -> tuple[float, float, float]:
        """Cumulative boundaries for (A,A), (A,B), (B,A); (B,B) takes the rest."""
        c1 = self.p_aa
        c2 = c1 + self.p_ab
        return (c1, c2, c2 + self.p_ba)


def half_waveplate_transform(theta_hw: float, theta: float) -> float:
    return 2.0 * theta_hw - theta


def pbs_probabilities(theta: float) -> tuple[float, float]:
    """(horizontal, vertical) detection probabilities for polarization ``theta``."""
    # double-angle form keeps the H/V eigen-angles exactly 0 or 1
    c = math.cos(2.0 * theta)
    return 0.5 * (1.0 + c), 0.5 * (1.0 - c)


def correlated_joint_distribution(mode: Correlated, wp: WaveplateSetting) -> JointChoiceDistribution:
    h1, v1 = pbs_probabilities(half_waveplate_transform(wp.theta_hw1, mode.theta1))
    h2, v2 = pbs_probabilities(half_waveplate_transform(wp.theta_hw2, mode.theta2))
    return JointChoiceDistribution(h1 * h2, h1 * v2, v1 * h2, v1 * v2)


def entangled_joint_distribution(wp: WaveplateSetting) -> JointChoiceDistribution:
    d = 2.0 * (wp.theta_hw1 - wp.theta_hw2)
    c = math.cos(2.0 * d)
    same = 0.25 * (1.0 - c)
    differ = 0.25 * (1.0 + c)
    return JointChoiceDistribution(same, differ, differ, same)


def joint_distribution(mode: SourceMode, wp: WaveplateSetting) -> JointChoiceDistribution:
    if isinstance(mode, Correlated):
        return correlated_joint_distribution(mode, wp)
    if isinstance(mode, EntangledSinglet):
        return entangled_joint_distribution(wp)
    raise TypeError(f"unknown source mode {mode!r}")


def sample_joint_choice(dist: JointChoiceDistribution, rng: RngStream) -> JointChoice:
    """Draw one joint decision; consumes exactly one uniform."""
    u = rng.random()
    c1, c2, c3 = dist.thresholds()
    if u < c1:
        return JOINT_ORDER[0]
    if u < c2:
        return JOINT_ORDER[1]
    if u < c3:
        return JOINT_ORDER[2]
    return JOINT_ORDER[3]


# Correlated pair with theta1 = 0.  The player-1 plate must rotate the signal
# onto V for B, i.e. 2*theta_hw1 = pi/2; the idler starts on V and needs
# 2*theta_hw2 - pi/2 = 0 to land on H for A.
_EXPLOIT = {
    Machine.A: (Correlated(0.0), WaveplateSetting(0.0, math.pi / 4)),
    Machine.B: (Correlated(0.0), WaveplateSetting(math.pi / 4, 0.0)),
}
_EXPLORE = (EntangledSinglet(), WaveplateSetting(0.0, 0.0))


def waveplates_for_exploit(m: Machine) -> tuple[SourceMode, WaveplateSetting]:
    """Correlated configuration sending both players to machine ``m``."""
    return _EXPLOIT[Machine(m)]


def waveplates_for_explore() -> tuple[SourceMode, WaveplateSetting]:
    """Singlet with parallel plates: never a conflict, each machine taken once."""
    return _EXPLORE

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from photonbandit.optics import (
    JOINT_ORDER,
    Correlated,
    EntangledSinglet,
    JointChoiceDistribution,
    Machine,
    WaveplateSetting,
    correlated_joint_distribution,
    entangled_joint_distribution,
    half_waveplate_transform,
    joint_distribution,
    pbs_probabilities,
    sample_joint_choice,
    waveplates_for_exploit,
    waveplates_for_explore,
)
from photonbandit.rng import RngStream

PI = math.pi
angles = st.floats(min_value=-20.0, max_value=20.0, allow_nan=False)


def approx4(dist, expected, tol=1e-12):
    assert dist.as_tuple() == pytest.approx(expected, abs=tol)


def direct_correlated(theta1, hw1, hw2):
    """Cos^2/sin^2 product written out term by term."""
    a1 = 2 * hw1 - theta1
    a2 = 2 * hw2 - theta1 - PI / 2
    return (
        math.cos(a1) ** 2 * math.cos(a2) ** 2,
        math.cos(a1) ** 2 * math.sin(a2) ** 2,
        math.sin(a1) ** 2 * math.cos(a2) ** 2,
        math.sin(a1) ** 2 * math.sin(a2) ** 2,
    )


@pytest.mark.parametrize(
    "hw, theta, expected",
    [(0.0, 0.0, 0.0), (PI / 4, 0.0, PI / 2), (PI / 2, PI / 2, PI / 2)],
)
def test_half_waveplate_transform(hw, theta, expected):
    assert half_waveplate_transform(hw, theta) == pytest.approx(expected)


@pytest.mark.parametrize("theta, expected", [(0.0, (1, 0)), (PI / 2, (0, 1)), (PI / 4, (0.5, 0.5))])
def test_pbs_probabilities(theta, expected):
    assert pbs_probabilities(theta) == pytest.approx(expected, abs=1e-12)


class TestCorrelated:
    def test_both_plates_zero_splits(self):
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(0, 0)), (0, 1, 0, 0))

    def test_plate_angles_from_text_evaluate_to_split(self):
        # (0, pi/2) puts player 2 at 2*(pi/2) - pi/2 = pi/2 -> V, so P(A,B) = 1
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(0, PI / 2)), (0, 1, 0, 0))
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(PI / 2, 0)), (0, 1, 0, 0))

    def test_both_on_a(self):
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(0, PI / 4)), (1, 0, 0, 0))

    def test_both_on_b(self):
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(PI / 4, 0)), (0, 0, 0, 1))

    def test_uniform(self):
        approx4(correlated_joint_distribution(Correlated(0.0), WaveplateSetting(PI / 8, 3 * PI / 8)), (0.25,) * 4)

    @given(angles, angles, angles)
    def test_matches_direct_product(self, t1, hw1, hw2):
        d = correlated_joint_distribution(Correlated(t1), WaveplateSetting(hw1, hw2))
        approx4(d, direct_correlated(t1, hw1, hw2))

    @given(angles, angles, angles)
    def test_product_structure(self, t1, hw1, hw2):
        d = correlated_joint_distribution(Correlated(t1), WaveplateSetting(hw1, hw2))
        assert d.p_aa * d.p_bb == pytest.approx(d.p_ab * d.p_ba, abs=1e-12)

    @given(angles, angles, angles)
    def test_outer_product_of_marginals(self, t1, hw1, hw2):
        h1, v1 = pbs_probabilities(half_waveplate_transform(hw1, t1))
        h2, v2 = pbs_probabilities(half_waveplate_transform(hw2, t1 + PI / 2))
        d = correlated_joint_distribution(Correlated(t1), WaveplateSetting(hw1, hw2))
        approx4(d, tuple(np.outer([h1, v1], [h2, v2]).ravel()))


class TestEntangled:
    @given(angles)
    def test_parallel_plates_never_conflict(self, hw):
        d = entangled_joint_distribution(WaveplateSetting(hw, hw))
        approx4(d, (0, 0.5, 0.5, 0))
        assert d.conflict_probability == pytest.approx(0.0, abs=1e-12)

    def test_crossed_plates_always_conflict(self):
        # plates a quarter turn of polarization apart: 2*(dhw) = pi/2
        approx4(entangled_joint_distribution(WaveplateSetting(PI / 4, 0.0)), (0.5, 0, 0, 0.5))

    def test_offset_pi_over_2_is_parallel_again(self):
        approx4(entangled_joint_distribution(WaveplateSetting(PI / 2, 0.0)), (0, 0.5, 0.5, 0))

    def test_uniform(self):
        approx4(entangled_joint_distribution(WaveplateSetting(PI / 8, 0.0)), (0.25,) * 4)

    @given(angles, angles)
    def test_symmetry(self, hw1, hw2):
        d = entangled_joint_distribution(WaveplateSetting(hw1, hw2))
        assert d.p_aa == d.p_bb and d.p_ab == d.p_ba

    @given(angles, angles, angles)
    def test_depends_on_difference_only(self, hw1, hw2, delta):
        a = entangled_joint_distribution(WaveplateSetting(hw1, hw2))
        b = entangled_joint_distribution(WaveplateSetting(hw1 + delta, hw2 + delta))
        approx4(a, b.as_tuple(), tol=1e-11)

    @given(angles, angles)
    def test_matches_direct_formula(self, hw1, hw2):
        d = 2 * (hw1 - hw2)
        expected = (0.5 * math.sin(d) ** 2, 0.5 * math.cos(d) ** 2, 0.5 * math.cos(d) ** 2, 0.5 * math.sin(d) ** 2)
        approx4(entangled_joint_distribution(WaveplateSetting(hw1, hw2)), expected)


@given(angles, angles, angles, st.booleans())
def test_normalized_and_periodic(t1, hw1, hw2, entangled):
    mode = EntangledSinglet() if entangled else Correlated(t1)
    d = joint_distribution(mode, WaveplateSetting(hw1, hw2))
    assert all(-1e-12 <= p <= 1 + 1e-12 for p in d.as_tuple())
    assert sum(d.as_tuple()) == pytest.approx(1.0, abs=1e-12)
    for shifted in (WaveplateSetting(hw1 + PI, hw2), WaveplateSetting(hw1, hw2 + PI)):
        approx4(joint_distribution(mode, shifted), d.as_tuple(), tol=1e-11)


def test_joint_distribution_dispatch():
    approx4(joint_distribution(EntangledSinglet(), WaveplateSetting(0, 0)), (0, 0.5, 0.5, 0))
    approx4(joint_distribution(Correlated(0.0), WaveplateSetting(0, PI / 4)), (1, 0, 0, 0))
    approx4(joint_distribution(Correlated(0.0), WaveplateSetting(PI / 8, 3 * PI / 8)), (0.25,) * 4)
    with pytest.raises(TypeError):
        joint_distribution("laser", WaveplateSetting(0, 0))


def test_non_finite_angles_rejected():
    with pytest.raises(ValueError):
        WaveplateSetting(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Correlated(float("inf"))


class TestSampling:
    def test_degenerate(self):
        rng = RngStream(3)
        aa = JointChoiceDistribution(1, 0, 0, 0)
        bb = JointChoiceDistribution(0, 0, 0, 1)
        for _ in range(1000):
            assert sample_joint_choice(aa, rng) == (Machine.A, Machine.A)
            assert sample_joint_choice(bb, rng) == (Machine.B, Machine.B)

    def test_consumes_one_draw(self):
        a, b = RngStream(5), RngStream(5)
        sample_joint_choice(JointChoiceDistribution(0.1, 0.2, 0.3, 0.4), a)
        b.random()
        assert a.state == b.state

    def test_inverse_cdf_order(self):
        d = JointChoiceDistribution(0.25, 0.25, 0.25, 0.25)
        for u, expected in [(0.0, 0), (0.2499, 0), (0.25, 1), (0.6, 2), (0.99, 3)]:
            fake = type("R", (), {"random": lambda self, u=u: u})()
            assert sample_joint_choice(d, fake) == JOINT_ORDER[expected]

    def test_split_frequency(self):
        n = 100_000
        rng = RngStream(9)
        d = JointChoiceDistribution(0, 0.5, 0.5, 0)
        hits = sum(sample_joint_choice(d, rng) == (Machine.A, Machine.B) for _ in range(n))
        assert abs(hits / n - 0.5) <= 4 * math.sqrt(0.25 / n)


class TestConfigurations:
    @pytest.mark.parametrize("m", list(Machine))
    def test_exploit_is_degenerate_on_m(self, m):
        d = joint_distribution(*waveplates_for_exploit(m))
        assert d.prob((m, m)) == 1.0
        rng = RngStream(4)
        assert all(sample_joint_choice(d, rng) == (m, m) for _ in range(2000))

    def test_exploit_uses_correlated_source(self):
        for m in Machine:
            mode, _ = waveplates_for_exploit(m)
            assert mode == Correlated(0.0)

    def test_explore(self):
        mode, wp = waveplates_for_explore()
        assert mode == EntangledSinglet() and wp == WaveplateSetting(0.0, 0.0)
        d = joint_distribution(mode, wp)
        assert d.as_tuple() == (0.0, 0.5, 0.5, 0.0)
        assert d.conflict_probability == 0.0

    def test_explore_each_machine_once_per_step(self):
        rng = RngStream(12)
        d = joint_distribution(*waveplates_for_explore())
        assert all(len(set(sample_joint_choice(d, rng))) == 2 for _ in range(100_000))

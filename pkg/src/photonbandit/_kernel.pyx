# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled episode loop.

Mirrors ``_fallback.play_episode`` draw for draw: offset draw, then per step
one joint-choice draw, two machine draws (A then B) and a tie-break draw only
when an exploration round ends level.  The GIL is released for the whole batch.
"""
from libc.stdint cimport uint64_t

import numpy as np

from .optics import Machine, joint_distribution, waveplates_for_exploit, waveplates_for_explore

cdef enum:
    EXPLORE = 0
    CHECK = 1
    EXPLOIT = 2


cdef inline uint64_t _rotl(uint64_t x, int k) noexcept nogil:
    return (x << k) | (x >> (64 - k))


cdef inline double _next_double(uint64_t* s) noexcept nogil:
    cdef uint64_t result = _rotl(s[1] * 5, 7) * 9
    cdef uint64_t t = s[1] << 17
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return (result >> 11) * (1.0 / 9007199254740992.0)


cdef struct EpisodeSpec:
    double p_a
    double p_b
    long period          # 0 disables happy hours
    int happy_machine
    long si
    long cp
    long steps
    bint mixed
    bint early_exit
    double cdf[3][3]     # rows: explore, exploit A, exploit B


cdef inline int _sample(const double* c, double u) noexcept nogil:
    if u < c[0]:
        return 0
    if u < c[1]:
        return 1
    if u < c[2]:
        return 2
    return 3


cdef void _play(const EpisodeSpec* sp, const uint64_t* seed, double* out) noexcept nogil:
    cdef uint64_t s[4]
    cdef long t, offset = 0, two_t = 2 * sp.period, k
    cdef int phase = EXPLORE, m = 0, joint, c1, c2, row
    cdef long steps_done = 0, l_a = 0, l_b = 0
    cdef bint hit[2]
    cdef bint happy
    cdef double r1, r2, tot1 = 0.0, tot2 = 0.0

    s[0] = seed[0]; s[1] = seed[1]; s[2] = seed[2]; s[3] = seed[3]

    if sp.period > 0:
        offset = 1 + <long>(_next_double(s) * two_t)

    for t in range(1, sp.steps + 1):
        row = 0 if (not sp.mixed or phase == EXPLORE) else 1 + m
        joint = _sample(sp.cdf[row], _next_double(s))
        c1 = joint >> 1
        c2 = joint & 1
        hit[0] = _next_double(s) < sp.p_a
        hit[1] = _next_double(s) < sp.p_b

        if sp.period > 0:
            k = (t - offset) % two_t
            if k < 0:
                k += two_t
            happy = k < sp.period
        else:
            happy = False

        if c1 != c2:
            r1 = 1.0 if hit[c1] else 0.0
            r2 = 1.0 if hit[c2] else 0.0
        elif not hit[c1]:
            r1 = 0.0
            r2 = 0.0
        elif happy and c1 == sp.happy_machine:
            r1 = 1.0
            r2 = 1.0
        else:
            r1 = 0.5
            r2 = 0.5
        tot1 += r1
        tot2 += r2

        if not sp.mixed:
            continue

        if phase == EXPLORE:
            steps_done += 1
            if c1 == 0:
                l_a += r1 == 1.0
                l_b += r2 == 1.0
            else:
                l_a += r2 == 1.0
                l_b += r1 == 1.0
            if steps_done >= sp.si:
                if l_a > l_b:
                    m = 0
                elif l_b > l_a:
                    m = 1
                else:
                    m = 0 if _next_double(s) < 0.5 else 1
                phase = CHECK
                steps_done = 0
        elif phase == CHECK:
            if r1 == 1.0 or r2 == 1.0:
                phase = EXPLOIT
            elif sp.early_exit and (r1 == 0.5 or r2 == 0.5):
                phase = EXPLORE
                steps_done = 0; l_a = 0; l_b = 0
            else:
                steps_done += 1
                if steps_done >= sp.cp:
                    phase = EXPLORE
                    steps_done = 0; l_a = 0; l_b = 0
        else:
            if r1 == 0.5 or r2 == 0.5:
                phase = EXPLORE
                steps_done = 0; l_a = 0; l_b = 0

    out[0] = tot1
    out[1] = tot2


cdef void _fill_cdf(EpisodeSpec* sp, int row, dist):
    c = dist.thresholds()
    sp.cdf[row][0] = c[0]
    sp.cdf[row][1] = c[1]
    sp.cdf[row][2] = c[2]


def run_episodes(config, seeds):
    """Play one episode per row of ``seeds`` (uint64, shape ``(n, 4)``).

    Returns a float64 array ``(n, 2)`` of per-player totals.
    """
    cdef EpisodeSpec sp
    cdef const uint64_t[:, ::1] sv = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef Py_ssize_t n = sv.shape[0], i
    result = np.empty((n, 2), dtype=np.float64)
    cdef double[:, ::1] ov = result

    sp.p_a = config.machines.p_a
    sp.p_b = config.machines.p_b
    sp.period = 0 if config.happy_period is None else config.happy_period
    sp.happy_machine = int(config.machines.better)
    sp.si = config.params.si
    sp.cp = config.params.cp
    sp.steps = config.steps
    sp.mixed = config.strategy_kind == "mixed"
    sp.early_exit = config.params.early_exit
    _fill_cdf(&sp, 0, joint_distribution(*waveplates_for_explore()))
    _fill_cdf(&sp, 1, joint_distribution(*waveplates_for_exploit(Machine.A)))
    _fill_cdf(&sp, 2, joint_distribution(*waveplates_for_exploit(Machine.B)))

    with nogil:
        for i in range(n):
            _play(&sp, &sv[i, 0], &ov[i, 0])
    return result

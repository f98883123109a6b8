"""Seedable random streams shared by the Python and compiled backends.

Child streams are keyed by ``(master_seed, rep_index)`` through numpy's
``SeedSequence`` (hash-based entropy mixing, stable across platforms).  The
resulting 256-bit state drives a xoshiro256** generator, which is small enough
to be inlined in the compiled kernel and reproduced bit-for-bit here.

Doubles are produced as ``(x >> 11) * 2**-53``, i.e. uniform on [0, 1).
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

MASK64 = (1 << 64) - 1
_DOUBLE_UNIT = 1.0 / 9007199254740992.0  # 2**-53


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


def seed_state(seed: int, key: tuple[int, ...] = ()) -> tuple[int, int, int, int]:
    """Expand ``seed`` (and an optional spawn key) into a xoshiro256** state."""
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    words = np.random.SeedSequence(seed, spawn_key=key).generate_state(4, np.uint64)
    state = tuple(int(w) for w in words)
    if not any(state):
        # xoshiro has a single absorbing all-zero state
        state = (1, 0, 0, 0)
    return state  # type: ignore[return-value]


@lru_cache(maxsize=16)
def _child_states_cached(master_seed: int, reps: int) -> np.ndarray:
    out = np.empty((reps, 4), dtype=np.uint64)
    for i in range(reps):
        out[i] = seed_state(master_seed, (i,))
    out.setflags(write=False)
    return out


def child_states(master_seed: int, reps: int) -> np.ndarray:
    """States for repetitions ``0..reps-1`` as a read-only ``(reps, 4)`` uint64 array."""
    return _child_states_cached(int(master_seed), int(reps))


class RngStream:
    """xoshiro256** stream.  Same seed, same sequence, on every platform."""

    __slots__ = ("_s",)

    def __init__(self, seed: int = 0, key: tuple[int, ...] = ()):
        self._s = list(seed_state(seed, key))

    @classmethod
    def from_state(cls, state) -> "RngStream":
        obj = cls.__new__(cls)
        obj._s = [int(w) & MASK64 for w in state]
        if len(obj._s) != 4 or not any(obj._s):
            raise ValueError("state must be four 64-bit words, not all zero")
        return obj

    @property
    def state(self) -> tuple[int, int, int, int]:
        return tuple(self._s)  # type: ignore[return-value]

    def next_uint64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        return (self.next_uint64() >> 11) * _DOUBLE_UNIT

    def integer(self, low: int, high: int) -> int:
        """Uniform integer in ``[low, high]`` from a single draw."""
        if high < low:
            raise ValueError("empty range")
        return low + int(self.random() * (high - low + 1))

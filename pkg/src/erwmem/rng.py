"""Counter-based random words keyed by (seed, trial, step, slot).

Every random decision of the walk is a pure function of its coordinates,
so a trajectory never depends on how trials are scheduled across workers.
The mixer is the splitmix64 finalizer; the scalar and numpy paths are
bit-identical by construction.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB

# slots per step: die roll Y, memory pick K, sign draw
SLOTS = 3


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def trial_key(seed: int, trial: int) -> int:
    """Key of one trial's stream: the trial-th splitmix64 output under ``seed``."""
    base = mix64(seed + GOLDEN)
    return mix64(base + (trial + 1) * GOLDEN)


def word(key: int, step: int, slot: int) -> int:
    return mix64(key + (SLOTS * step + slot + 1) * GOLDEN)


def uniform_index(h: int, m: int) -> int:
    """Map a 64-bit word to {1..m} by multiply-shift on its top 32 bits."""
    return 1 + (((h >> 32) * m) >> 32)


def threshold(prob: Fraction) -> int:
    """53-bit acceptance threshold; ``bernoulli`` is exact at prob 0 and 1."""
    return (prob.numerator << 53) // prob.denominator


def bernoulli(h: int, thr: int) -> bool:
    return (h >> 11) < thr


# -- vectorised counterparts (uint64 arithmetic wraps modulo 2**64) ---------

_U = np.uint64


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> _U(30))) * _U(_M1)
    z = (z ^ (z >> _U(27))) * _U(_M2)
    return z ^ (z >> _U(31))


def trial_keys(seed: int, trials: np.ndarray) -> np.ndarray:
    base = _U(mix64(seed + GOLDEN))
    t = trials.astype(np.uint64) + _U(1)
    return _mix64_np(base + t * _U(GOLDEN))


def words(keys: np.ndarray, step: int, slot: int) -> np.ndarray:
    offset = _U(((SLOTS * step + slot + 1) * GOLDEN) & MASK64)
    return _mix64_np(keys + offset)


def uniform_indices(h: np.ndarray, m) -> np.ndarray:
    m = np.asarray(m, dtype=np.uint64)
    return (((h >> _U(32)) * m) >> _U(32)).astype(np.int64) + 1


def bernoullis(h: np.ndarray, thr: int) -> np.ndarray:
    return (h >> _U(11)) < _U(thr)

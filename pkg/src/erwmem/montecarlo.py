"""Reproducible Monte Carlo estimates of E(S_n) and E(S_n^2).

Trial ``i`` is generated from the counter stream keyed by ``(seed, i)``, so
it equals ``sample_trajectory(params, n, seed, trial=i)`` step for step.
Trials are processed in fixed-size blocks; per-block (count, mean, M2)
accumulators are merged pairwise in block order, so the floating-point
result does not depend on the number of worker threads.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import rng as _rng
from .errors import InvalidArgumentError
from .walk import WalkParams

BLOCK_SIZE = 1 << 15


@dataclass(frozen=True)
class RunningMoments:
    count: int = 0
    mean: float = 0.0
    m2: float = 0.0

    @classmethod
    def of(cls, values: np.ndarray) -> "RunningMoments":
        if values.size == 0:
            return cls()
        mean = float(values.mean())
        dev = values - mean
        return cls(int(values.size), mean, float(np.dot(dev, dev)))

    def merge(self, other: "RunningMoments") -> "RunningMoments":
        if other.count == 0:
            return self
        if self.count == 0:
            return other
        count = self.count + other.count
        delta = other.mean - self.mean
        mean = self.mean + delta * (other.count / count)
        m2 = self.m2 + other.m2 + delta * delta * (self.count * other.count / count)
        return RunningMoments(count, mean, m2)

    @property
    def variance(self) -> float:
        return self.m2 / (self.count - 1) if self.count > 1 else 0.0


def merge_all(parts: Sequence[RunningMoments]) -> RunningMoments:
    """Pairwise tree merge in a fixed order."""
    parts = list(parts) or [RunningMoments()]
    while len(parts) > 1:
        nxt = [parts[i].merge(parts[i + 1]) for i in range(0, len(parts) - 1, 2)]
        if len(parts) % 2:
            nxt.append(parts[-1])
        parts = nxt
    return parts[0]


@dataclass(frozen=True)
class SimulationSummary:
    n: int
    trials: int
    sample_mean_S: float
    sample_var_S: float
    stderr_mean: float
    seed: int
    params: WalkParams
    sample_mean_S2: float = 0.0
    stderr_mean_S2: float = 0.0
    histogram: Optional[dict] = field(default=None, compare=True)

    def as_row(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "mean": repr(self.sample_mean_S),
            "var": repr(self.sample_var_S),
            "stderr": repr(self.stderr_mean),
            "seed": self.seed,
            "p": f"{self.params.p.numerator}/{self.params.p.denominator}",
            "q": f"{self.params.q.numerator}/{self.params.q.denominator}",
        }


def simulate_positions(params: WalkParams, n: int, seed: int, start: int, stop: int,
                       checkpoints: Sequence[int]) -> np.ndarray:
    """Positions ``S_c`` for trials ``start..stop-1`` at each checkpoint ``c``.

    Returns an int64 array of shape (len(checkpoints), stop - start).
    """
    count = stop - start
    keys = _rng.trial_keys(seed, np.arange(start, stop, dtype=np.uint64))
    p_thr = _rng.threshold(params.p)
    hist = np.empty((count, n), dtype=np.int8)
    rows = np.arange(count)
    hist[:, 0] = np.where(_rng.bernoullis(_rng.words(keys, 1, 0), _rng.threshold(params.q)), 1, -1)
    pos = hist[:, 0].astype(np.int64)
    want = {c: i for i, c in enumerate(checkpoints)}
    out = np.empty((len(checkpoints), count), dtype=np.int64)
    if 1 in want:
        out[want[1]] = pos
    for m in range(1, n):
        step = m + 1
        y = _rng.uniform_indices(_rng.words(keys, step, 0), m)
        k = _rng.uniform_indices(_rng.words(keys, step, 1), y)
        keep = _rng.bernoullis(_rng.words(keys, step, 2), p_thr)
        recalled = hist[rows, k - 1]
        x = np.where(keep, recalled, -recalled)
        hist[:, m] = x
        pos += x
        if step in want:
            out[want[step]] = pos
    return out


def _block(args):
    params, n, seed, start, stop, checkpoints, with_hist = args
    s = simulate_positions(params, n, seed, start, stop, checkpoints)
    res = []
    for c, row in zip(checkpoints, s):
        f = row.astype(np.float64)
        h = np.bincount(row + c, minlength=2 * c + 1) if with_hist else None
        res.append((RunningMoments.of(f), RunningMoments.of(f * f), h))
    return res


def run_simulation(params: WalkParams, n: int, trials: int, seed: int,
                   checkpoints: Optional[Sequence[int]] = None, threads=None,
                   histogram: bool = False) -> list:
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError("n must be >= 1")
    if not isinstance(trials, int) or trials < 1:
        raise InvalidArgumentError("trials must be >= 1")
    if not 0 <= seed < 2 ** 64:
        raise InvalidArgumentError("seed must be a 64-bit unsigned integer")
    checkpoints = [n] if checkpoints is None else list(checkpoints)
    if not checkpoints:
        raise InvalidArgumentError("checkpoints must be nonempty")
    if checkpoints != sorted(set(checkpoints)) or checkpoints[0] < 1 or checkpoints[-1] > n:
        raise InvalidArgumentError(f"checkpoints must be strictly increasing within [1, {n}]")
    if threads in (None, "auto"):
        threads = os.cpu_count() or 1
    threads = int(threads)
    if threads < 1:
        raise InvalidArgumentError("threads must be >= 1")

    jobs = [(params, n, seed, lo, min(lo + BLOCK_SIZE, trials), checkpoints, histogram)
            for lo in range(0, trials, BLOCK_SIZE)]
    if threads == 1 or len(jobs) == 1:
        blocks = [_block(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(_block, jobs))

    out = []
    for ci, c in enumerate(checkpoints):
        first = merge_all([b[ci][0] for b in blocks])
        second = merge_all([b[ci][1] for b in blocks])
        hist = None
        if histogram:
            counts = sum(b[ci][2] for b in blocks)
            hist = {int(v) - c: int(cnt) for v, cnt in enumerate(counts) if cnt}
        out.append(SimulationSummary(
            n=c, trials=trials,
            sample_mean_S=first.mean, sample_var_S=first.variance,
            stderr_mean=math.sqrt(first.variance / trials),
            seed=seed, params=params,
            sample_mean_S2=second.mean,
            stderr_mean_S2=math.sqrt(second.variance / trials),
            histogram=hist,
        ))
    return out

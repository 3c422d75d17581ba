"""The walk itself: parameters, the generative step law and its closed form.

Step ``n+1`` of the walk is drawn as follows: roll a fair ``n``-sided die to
get ``Y``, pick ``K`` uniformly from ``{1..Y}``, then repeat ``X_K`` with
probability ``p`` or reverse it. The first step is ``+1`` with probability
``q``. Summing the lottery out gives

    P(X_{n+1} = +1 | X_1..X_n) = 1/2 + alpha/(2n) * sum_{r<=n} S_r / r,

with ``alpha = 2p - 1``.
"""
from __future__ import annotations

import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from . import rng as _rng
from .errors import InvalidArgumentError

Rational = Union[Fraction, int, str, float]

HALF = Fraction(1, 2)


def as_rational(value: Rational) -> Fraction:
    """Exact rational from an int, Fraction, ``"3/4"`` or a decimal literal.

    Floats are read through their shortest repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise InvalidArgumentError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, float):
        value = repr(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgumentError(f"not a rational: {value!r}") from exc
    raise InvalidArgumentError(f"not a rational: {value!r}")


@dataclass(frozen=True)
class WalkParams:
    """Repeat probability ``p`` and first-step probability ``q``, both exact."""

    p: Fraction
    q: Fraction = Fraction(1)

    def __post_init__(self):
        p, q = as_rational(self.p), as_rational(self.q)
        for name, v in (("p", p), ("q", q)):
            if not 0 <= v <= 1:
                raise InvalidArgumentError(f"{name}={v} outside [0, 1]")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def alpha(self) -> Fraction:
        return 2 * self.p - 1

    @property
    def beta(self) -> Fraction:
        return 2 * self.q - 1


@dataclass(frozen=True)
class Trajectory:
    steps: tuple
    positions: tuple

    def __post_init__(self):
        if len(self.steps) != len(self.positions):
            raise InvalidArgumentError("steps and positions differ in length")
        s = 0
        for x, pos in zip(self.steps, self.positions):
            if x not in (1, -1):
                raise InvalidArgumentError(f"step {x!r} is not a sign")
            s += x
            if pos != s:
                raise InvalidArgumentError("positions are not the prefix sums of steps")

    @classmethod
    def from_steps(cls, steps: Sequence[int]) -> "Trajectory":
        steps = tuple(int(x) for x in steps)
        return cls(steps, tuple(int(v) for v in np.cumsum(steps)) if steps else ())

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class StepLottery:
    """One realisation of the (die, memory pick, sign) triple."""

    y: int
    k: int
    sign: int

    def check(self, n: int) -> None:
        if not (1 <= self.k <= self.y <= n) or self.sign not in (1, -1):
            raise InvalidArgumentError(f"invalid lottery {self} for history of length {n}")


def _check_history(history: Sequence[int]) -> None:
    if len(history) == 0:
        raise InvalidArgumentError("history must be nonempty")
    if any(x not in (1, -1) for x in history):
        raise InvalidArgumentError("history entries must be +1 or -1")


def conditional_plus_probability(history: Sequence[int], params: WalkParams) -> Fraction:
    _check_history(history)
    n = len(history)
    s = 0
    acc = Fraction(0)
    for r, x in enumerate(history, start=1):
        s += x
        acc += Fraction(s, r)
    return HALF + params.alpha * acc / (2 * n)


def draw_lottery(n: int, p: Fraction, generator: np.random.Generator) -> StepLottery:
    y = int(generator.integers(1, n + 1))
    k = int(generator.integers(1, y + 1))
    sign = 1 if generator.random() < p else -1
    return StepLottery(y, k, sign)


def sample_next_step(history: Sequence[int], params: WalkParams, source) -> int:
    """Next sign under the generative law.

    ``source`` is either an explicit :class:`StepLottery` (deterministic
    replay) or a ``numpy.random.Generator``.
    """
    _check_history(history)
    if isinstance(source, StepLottery):
        lottery = source
        lottery.check(len(history))
    elif isinstance(source, np.random.Generator):
        lottery = draw_lottery(len(history), params.p, source)
    else:
        raise InvalidArgumentError("source must be a StepLottery or numpy Generator")
    return lottery.sign * history[lottery.k - 1]


def lottery_at(key: int, step: int, n: int, p_thr: int) -> StepLottery:
    """Counter-keyed lottery used for step ``step`` (history length ``n``)."""
    y = _rng.uniform_index(_rng.word(key, step, 0), n)
    k = _rng.uniform_index(_rng.word(key, step, 1), y)
    sign = 1 if _rng.bernoulli(_rng.word(key, step, 2), p_thr) else -1
    return StepLottery(y, k, sign)


def sample_trajectory(params: WalkParams, n: int, seed: int, trial: int = 0,
                      method: str = "generative") -> Trajectory:
    """Draw X_1..X_n from the stream keyed by ``(seed, trial)``.

    ``method="generative"`` replays the die/pick/sign lottery and keeps the
    whole history; ``method="closed_form"`` draws each sign directly from
    :func:`conditional_plus_probability` using a running sum of ``S_r / r``.
    Both are exact in law but consume randomness differently.
    """
    if n < 1:
        raise InvalidArgumentError("n must be >= 1")
    if method not in ("generative", "closed_form"):
        raise InvalidArgumentError(f"unknown method {method!r}")
    key = _rng.trial_key(seed, trial)
    first = 1 if _rng.bernoulli(_rng.word(key, 1, 0), _rng.threshold(params.q)) else -1
    steps = [first]
    if method == "generative":
        p_thr = _rng.threshold(params.p)
        for m in range(1, n):
            lot = lottery_at(key, m + 1, m, p_thr)
            steps.append(lot.sign * steps[lot.k - 1])
    else:
        s = first
        acc = Fraction(first)
        for m in range(1, n):
            prob = HALF + params.alpha * acc / (2 * m)
            x = 1 if _rng.bernoulli(_rng.word(key, m + 1, 0), _rng.threshold(prob)) else -1
            steps.append(x)
            s += x
            acc += Fraction(s, m + 1)
    return Trajectory.from_steps(steps)

"""Exact joint law of X_1..X_n by exhaustive enumeration.

Two modes that share no step-law code:

``history``
    chain rule over the closed-form conditional probability of each sign;
``generative``
    raw definition, summing over every (die roll, memory pick, sign) lottery
    at every step and merging equal histories.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import InvalidArgumentError, ResourceLimitError
from .walk import WalkParams

CAPS = {"history": 16, "generative": 8}

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ExactDistribution:
    """Equality compares the law only, not the mode that produced it."""

    n: int
    mode: str = field(compare=False)
    atoms: dict = field(default_factory=dict)

    def total(self) -> Fraction:
        return sum(self.atoms.values(), Fraction(0))

    def negated(self) -> "ExactDistribution":
        return ExactDistribution(self.n, self.mode,
                                 {tuple(-x for x in s): w for s, w in self.atoms.items()})

    def to_json(self) -> list:
        return [{"signs": "".join("+" if x > 0 else "-" for x in s),
                 "prob": f"{w.numerator}/{w.denominator}"}
                for s, w in sorted(self.atoms.items(), reverse=True)]


def exact_distribution(n: int, params: WalkParams, mode: str = "history",
                       override_cap: bool = False) -> ExactDistribution:
    if mode not in CAPS:
        raise InvalidArgumentError(f"unknown mode {mode!r}")
    if not isinstance(n, int) or n < 1:
        raise InvalidArgumentError("n must be >= 1")
    if n > CAPS[mode] and not override_cap:
        raise ResourceLimitError(f"{mode} mode is capped at n <= {CAPS[mode]}")
    atoms = _by_history(n, params) if mode == "history" else _by_lottery(n, params)
    return ExactDistribution(n, mode, {s: w for s, w in atoms.items() if w})


def _by_history(n: int, params: WalkParams) -> dict:
    alpha = params.alpha
    atoms = {}
    # (signs, probability, S_m, sum_{r<=m} S_r / r)
    stack = [((1,), params.q, 1, Fraction(1)), ((-1,), 1 - params.q, -1, Fraction(-1))]
    while stack:
        signs, w, s, acc = stack.pop()
        if not w:
            continue
        m = len(signs)
        if m == n:
            atoms[signs] = w
            continue
        up = _HALF + alpha * acc / (2 * m)
        for x, px in ((1, up), (-1, 1 - up)):
            stack.append((signs + (x,), w * px, s + x, acc + Fraction(s + x, m + 1)))
    return atoms


def _by_lottery(n: int, params: WalkParams) -> dict:
    p = params.p
    layer = {(1,): params.q, (-1,): 1 - params.q}
    for m in range(1, n):
        nxt = {}
        for hist, w in layer.items():
            if not w:
                continue
            for y in range(1, m + 1):
                wy = w / (m * y)
                for k in range(1, y + 1):
                    for sign, ps in ((1, p), (-1, 1 - p)):
                        if ps:
                            key = hist + (sign * hist[k - 1],)
                            nxt[key] = nxt.get(key, Fraction(0)) + wy * ps
        layer = nxt
    return layer


# -- expectations ------------------------------------------------------------

def expectation(dist: ExactDistribution, f: Callable) -> Fraction:
    return sum((w * f(s) for s, w in dist.atoms.items()), Fraction(0))


def _check(dist, *indices):
    for i in indices:
        if not isinstance(i, int) or not 1 <= i <= dist.n:
            raise InvalidArgumentError(f"index {i!r} outside 1..{dist.n}")


def mean_x(dist: ExactDistribution, k: int) -> Fraction:
    _check(dist, k)
    return expectation(dist, lambda s: s[k - 1])


def mean_s(dist: ExactDistribution, k: int) -> Fraction:
    _check(dist, k)
    return expectation(dist, lambda s: sum(s[:k]))


def product(dist: ExactDistribution, a: int, b: int) -> Fraction:
    _check(dist, a, b)
    return expectation(dist, lambda s: s[a - 1] * s[b - 1])


def second_moment_s(dist: ExactDistribution, k: int) -> Fraction:
    _check(dist, k)
    return expectation(dist, lambda s: sum(s[:k]) ** 2)


def distribution_of_s(dist: ExactDistribution, k: int) -> dict:
    _check(dist, k)
    law = {}
    for s, w in dist.atoms.items():
        pos = sum(s[:k])
        law[pos] = law.get(pos, Fraction(0)) + w
    return dict(sorted(law.items()))


_QUERIES = {
    "mean_x": mean_x,
    "mean_s": mean_s,
    "product": product,
    "second_moment_s": second_moment_s,
    "distribution_of_S": distribution_of_s,
}


def oracle_moment(dist: ExactDistribution, query: str, *indices):
    try:
        fn = _QUERIES[query]
    except KeyError:
        raise InvalidArgumentError(f"unknown query {query!r}") from None
    return fn(dist, *indices)

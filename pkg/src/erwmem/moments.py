"""Exact moments of the walk as polynomials in alpha.

Means are stored normalised by ``beta = 2q - 1`` (i.e. for a first step
fixed at +1); products of steps and second moments do not depend on ``q``.

Two product-moment tables are available:

* the *tower* table, from ``E(X_a X_b) = E(X_a E(X_b | X_1..X_{b-1}))``,
  which reproduces exhaustive enumeration of the walk exactly;
* the *paper* table, a literal evaluation of the published quadruple-sum
  recursion for ``E(X_{m+1} X_{n+1})``. It disagrees with enumeration
  (already at ``m=1, n=2``) and is kept as a transcription, not as truth.
  Entries ``E(X_1 X_k)`` that the published recursion leaves undefined are
  taken from the tower table.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidArgumentError
from .poly import ALPHA, ONE, ZERO, AlphaPolynomial
from .walk import WalkParams

_ALPHA2 = ALPHA * ALPHA


class _MeanRecursion:
    """Growing memo of E(X_k)/beta and E(S_k)/beta, O(1) polynomial ops per index."""

    def __init__(self):
        self._lock = threading.Lock()
        self.mean_x = [ONE]        # E(X_1), E(X_2), ...
        self.mean_s = [ONE]        # E(S_1), E(S_2), ...
        self._cum_x = ONE          # c_n = sum_{k<=n} E(X_k)
        self._acc_x = ONE          # sum_{r<=n} c_r / r
        self._acc_s = ONE          # sum_{r<=n} E(S_r) / r

    def extend(self, k: int) -> None:
        with self._lock:
            while len(self.mean_x) < k:
                n = len(self.mean_x)
                x_next = self._acc_x.times_alpha() / n
                s_next = self.mean_s[-1] + self._acc_s.times_alpha() / n
                self.mean_x.append(x_next)
                self.mean_s.append(s_next)
                self._cum_x = self._cum_x + x_next
                self._acc_x = self._acc_x + self._cum_x / (n + 1)
                self._acc_s = self._acc_s + s_next / (n + 1)


_MEANS = _MeanRecursion()


def _check_index(k: int, lo: int = 1) -> None:
    if not isinstance(k, int) or k < lo:
        raise InvalidArgumentError(f"index must be an integer >= {lo}, got {k!r}")


def mean_increment(k: int) -> AlphaPolynomial:
    """E(X_k)/beta from the mean-increment recursion."""
    _check_index(k)
    _MEANS.extend(k)
    return _MEANS.mean_x[k - 1]


def mean_displacement(k: int) -> AlphaPolynomial:
    """E(S_k)/beta from the displacement recursion (not summed from increments)."""
    _check_index(k)
    _MEANS.extend(k)
    return _MEANS.mean_s[k - 1]


def mean_increment_value(k: int, params: WalkParams) -> Fraction:
    return params.beta * mean_increment(k)(params.alpha)


def mean_displacement_value(k: int, params: WalkParams) -> Fraction:
    return params.beta * mean_displacement(k)(params.alpha)


# -- product moments ---------------------------------------------------------

def _tower_table(size: int) -> list:
    """Full symmetric table ``A[a-1][b-1] = E(X_a X_b)`` for a, b <= size."""
    A = [[ZERO] * size for _ in range(size)]
    for a in range(1, size + 1):
        A[a - 1][a - 1] = ONE
        cum = ZERO                  # sum_{k<=r} E(X_a X_k)
        acc = ZERO                  # sum_{r'<=r} cum_{r'} / r'
        for r in range(1, size):
            cum = cum + A[a - 1][r - 1]
            acc = acc + cum / r
            b = r + 1
            if b > a:
                v = acc.times_alpha() / r
                A[a - 1][b - 1] = v
                A[b - 1][a - 1] = v
    return A


def _paper_table(size: int, tower: list) -> list:
    """Literal evaluation of the published product recursion.

    ``Q[a][b] = alpha^2/((a-1)(b-1)) * W[a-1][b-1]`` for a != b, both >= 2, where
    ``W[l][r] = sum_{l'<=l, r'<=r} P[l'][r'] / (l' r')`` and ``P`` is the 2-D
    prefix sum of ``Q``. Row and column 1 come from the tower table.
    """
    Q = [[ZERO] * (size + 1) for _ in range(size + 1)]
    P = [[ZERO] * (size + 1) for _ in range(size + 1)]
    W = [[ZERO] * (size + 1) for _ in range(size + 1)]
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            if a == b:
                q = ONE
            elif a == 1 or b == 1:
                q = tower[a - 1][b - 1]
            else:
                q = (W[a - 1][b - 1] * _ALPHA2) / ((a - 1) * (b - 1))
            Q[a][b] = q
            P[a][b] = q + P[a - 1][b] + P[a][b - 1] - P[a - 1][b - 1]
            W[a][b] = P[a][b] / (a * b) + W[a - 1][b] + W[a][b - 1] - W[a - 1][b - 1]
    return [row[1:] for row in Q[1:]]


class _ProductCache:
    def __init__(self, build):
        self._build = build
        self._lock = threading.Lock()
        self.table: list = []

    def get(self, size: int) -> list:
        with self._lock:
            if len(self.table) < size:
                self.table = self._build(max(size, 2 * len(self.table)))
            return self.table


_TOWER = _ProductCache(_tower_table)
_PAPER = _ProductCache(lambda size: _paper_table(size, _TOWER.get(size)))


def product_moment_tower(a: int, b: int) -> AlphaPolynomial:
    """E(X_a X_b) for 1 <= a <= b, exact and independent of q."""
    _check_index(a)
    if not isinstance(b, int) or b < a:
        raise InvalidArgumentError(f"need a <= b, got a={a}, b={b}")
    return _TOWER.get(b)[a - 1][b - 1]


def product_moment_paper(m: int, n: int) -> AlphaPolynomial:
    """The published recursion's E(X_{m+1} X_{n+1}), m, n >= 1."""
    _check_index(m)
    _check_index(n)
    if m == n:
        return ONE
    return _PAPER.get(max(m, n) + 1)[m][n]


def second_moment_displacement(k: int) -> AlphaPolynomial:
    """E(S_k^2) = k + 2 sum_{a<b<=k} E(X_a X_b) using the tower table."""
    _check_index(k)
    A = _TOWER.get(k)
    total = ZERO
    for b in range(2, k + 1):
        for a in range(1, b):
            total = total + A[a - 1][b - 1]
    return total * 2 + k


def second_moment_paper_form(k: int) -> AlphaPolynomial:
    """The published E(S_{n+1}^2) formula at k = n+1.

    Terms with i = 0 are empty sums and contribute nothing; every other
    (i, j) term is the published E(X_{i+1} X_{j+1}), so the X_1 cross terms
    are absent.
    """
    _check_index(k, lo=2)
    n = k - 1
    total = ZERO
    for j in range(2, n + 1):
        for i in range(1, j):
            total = total + product_moment_paper(i, j)
    return total * 2 + k


@dataclass(frozen=True)
class MomentTable:
    mean_x: tuple
    mean_s: tuple
    product: tuple
    source: str

    def product_of(self, a: int, b: int) -> AlphaPolynomial:
        return self.product[a - 1][b - 1]


def build_moment_table(size: int, source: str = "tower-recursion") -> MomentTable:
    _check_index(size)
    if source == "tower-recursion":
        prod = _TOWER.get(size)
    elif source == "paper-recursion":
        prod = _PAPER.get(size)
    else:
        raise InvalidArgumentError(f"unknown source {source!r}")
    _MEANS.extend(size)
    return MomentTable(
        mean_x=tuple(_MEANS.mean_x[:size]),
        mean_s=tuple(_MEANS.mean_s[:size]),
        product=tuple(tuple(row[:size]) for row in prod[:size]),
        source=source,
    )


# -- double-precision mode ---------------------------------------------------

def mean_moments_float(alpha: float, size: int) -> tuple:
    """E(X_k)/beta and E(S_k)/beta for k = 1..size in double precision."""
    _check_index(size)
    ex = np.empty(size)
    es = np.empty(size)
    ex[0] = es[0] = 1.0
    cum = acc_x = acc_s = 1.0
    for n in range(1, size):
        ex[n] = alpha * acc_x / n
        es[n] = es[n - 1] + alpha * acc_s / n
        cum += ex[n]
        acc_x += cum / (n + 1)
        acc_s += es[n] / (n + 1)
    return ex, es


def second_moments_float(alpha: float, size: int) -> np.ndarray:
    """E(S_k^2) for k = 1..size from the tower table in double precision."""
    _check_index(size)
    A = np.eye(size)
    for a in range(size):
        cum = acc = 0.0
        for r in range(1, size):
            cum += A[a, r - 1]
            acc += cum / r
            if r > a:
                A[a, r] = A[r, a] = alpha * acc / r
    upper = np.triu(A, 1)
    pair_sums = np.cumsum(upper.sum(axis=0))
    return np.arange(1, size + 1) + 2 * pair_sums

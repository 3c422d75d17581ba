"""Index families of exponent vectors behind the explicit mean formulas.

An exponent vector ``(x_2, ..., x_n)`` with entries in {0, 1, 2} carries the
weight ``prod_i i**(-x_i)``. The coefficient of ``alpha**j`` in E(X_{n+1})
is the total weight of the family Phi(j, n); for E(S_{n+1}) it is Theta(j, n).
Each family has two constructions:

* recursive: Phi from the "B" suffix sets, Theta from the "Lambda" sets;
* condition C1: all vectors whose coordinate sum lies in [2(j-1), 2j] such
  that every 2 is followed by an even number of 1s (Phi also needs x_n != 0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import InvalidArgumentError, ResourceLimitError
from .poly import AlphaPolynomial

MATERIALIZE_CAP = 14

KINDS = {
    "phi_recursive": "phi",
    "phi_c1": "omega",
    "theta_recursive": "theta",
    "psi_c1": "psi",
}


def vector_weight(vec: Iterable[int]) -> Fraction:
    den = 1
    for i, x in enumerate(vec, start=2):
        den *= i ** x
    return Fraction(1, den)


def satisfies_c1(vec) -> bool:
    ones = 0
    for x in reversed(vec):
        if x == 1:
            ones += 1
        elif x == 2 and ones % 2:
            return False
    return True


@dataclass(frozen=True)
class IndexFamily:
    kind: str
    j: int
    n: int
    members: tuple

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, vec):
        return tuple(vec) in set(self.members)

    @property
    def weight(self) -> Fraction:
        return family_weight(self)

    def to_json(self) -> list:
        return [list(v) for v in self.members]


def family_weight(family) -> Fraction:
    return sum((vector_weight(v) for v in family), Fraction(0))


# -- recursive constructions -------------------------------------------------
# Vectors for walk index n have length n-1. The degenerate indices n = 0, 1
# carry the empty vector and make the base cases of both recursions uniform.

def _suffixes(length: int):
    """(0,..,0,2) and (0,..,1,..,0,1) with the inner 1 anywhere before the end."""
    yield (0,) * (length - 1) + (2,)
    for i in range(length - 1):
        v = [0] * length
        v[i] = 1
        v[-1] = 1
        yield tuple(v)


@lru_cache(maxsize=None)
def _phi(j: int, n: int) -> frozenset:
    if n == 1:
        return frozenset({()}) if j == 1 else frozenset()
    if j < 1 or j > n:
        return frozenset()
    lone_one = (0,) * (n - 2) + (1,)
    if j == 1:
        out = {lone_one, (0,) * (n - 2) + (2,)}
        for i in range(n - 2):
            v = [0] * (n - 1)
            v[i] = 1
            v[-1] = 1
            out.add(tuple(v))
        return frozenset(out)
    out = set()
    if j == 2:
        out |= _phi(1, n) - {lone_one}
        lo = 2
    else:
        lo = j - 1
    # B^{j-1}_m: members of Phi(j-1, m) followed by a suffix of length n-m
    for m in range(lo, n):
        for pre in _phi(j - 1, m):
            for suf in _suffixes(n - m):
                out.add(pre + suf)
    return frozenset(out)


@lru_cache(maxsize=None)
def _theta(j: int, n: int) -> frozenset:
    if n == 0:
        return frozenset({()}) if j == 0 else frozenset()
    if n == 1:
        return frozenset({()}) if j in (0, 1) else frozenset()
    if j < 0 or j > n:
        return frozenset()
    if j == 0:
        return frozenset({(0,) * (n - 1)})
    out = {v + (0,) for v in _theta(j, n - 1)}
    out |= {v + (2,) for v in _theta(j - 1, n - 1)}
    # Lambda^{j-1}_{r-1}: the E(S_r)/(r n) term, a 1 at position r and at n
    for r in range(1, n):
        for v in _theta(j - 1, r - 1):
            if r == 1:
                out.add((0,) * (n - 2) + (1,))
                continue
            w = list(v) + [0] * (n - r + 1)
            w[r - 2] = 1
            w[-1] = 1
            out.add(tuple(w))
    return frozenset(out)


# -- condition C1 ------------------------------------------------------------

def iter_c1(n: int, lo: int, hi: int, last_nonzero: bool) -> Iterator[tuple]:
    """Depth-first enumeration, right to left, of C1 vectors with sum in [lo, hi].

    Tracks the parity of 1s already placed to the right, so a 2 is only
    placed where C1 allows it; branches that cannot reach the sum window
    are cut.
    """
    length = n - 1
    buf = [0] * length

    def rec(pos: int, total: int, odd: bool):
        if pos < 0:
            if lo <= total <= hi:
                yield tuple(buf)
            return
        if total + 2 * (pos + 1) < lo:
            return
        choices = (1, 2) if last_nonzero and pos == length - 1 else (0, 1, 2)
        for x in choices:
            if x == 2 and odd:
                continue
            if total + x > hi:
                break
            buf[pos] = x
            yield from rec(pos - 1, total + x, odd ^ (x == 1))
        buf[pos] = 0

    if length == 0:
        if lo <= 0 <= hi:
            yield ()
        return
    yield from rec(length - 1, 0, False)


def c1_sum_weights(n: int, last_nonzero: bool) -> list:
    """Total C1 weight by coordinate sum, without materialising any vector.

    Aggregates the same right-to-left walk as :func:`iter_c1` over states
    (parity of 1s to the right, running sum).
    """
    states = {(False, 0): Fraction(1)}
    for i in range(n, 1, -1):
        nxt = {}
        choices = (1, 2) if last_nonzero and i == n else (0, 1, 2)
        for (odd, total), w in states.items():
            for x in choices:
                if x == 2 and odd:
                    continue
                key = (odd ^ (x == 1), total + x)
                nxt[key] = nxt.get(key, Fraction(0)) + w / i ** x
        states = nxt
    out = [Fraction(0)] * (2 * max(n - 1, 0) + 1)
    for (_, total), w in states.items():
        out[total] += w
    return out


def _window(j: int) -> tuple:
    return 2 * (j - 1), 2 * j


def omega_family(j: int, k: int, n: int) -> IndexFamily:
    """Omega^j_{k,n}: C1 vectors with sum exactly k and x_n != 0."""
    _check_range("omega", j, n)
    _check_cap(n)
    return IndexFamily("omega", j, n, tuple(sorted(iter_c1(n, k, k, True))))


def psi_family(j: int, k: int, n: int) -> IndexFamily:
    """Psi^j_{k,n}: C1 vectors with sum exactly k."""
    _check_range("psi", j, n)
    _check_cap(n)
    return IndexFamily("psi", j, n, tuple(sorted(iter_c1(n, k, k, False))))


def _check_range(kind: str, j: int, n: int) -> None:
    lo = 0 if kind in ("theta", "psi") else 1
    if not isinstance(n, int) or not isinstance(j, int) or n < 2 or not lo <= j <= n:
        raise InvalidArgumentError(f"{kind} family needs n >= 2 and {lo} <= j <= n, got j={j}, n={n}")


def _check_cap(n: int) -> None:
    if n > MATERIALIZE_CAP:
        raise ResourceLimitError(f"families are materialised only for n <= {MATERIALIZE_CAP}")


def build_family(kind: str, j: int, n: int) -> IndexFamily:
    if kind not in KINDS:
        raise InvalidArgumentError(f"unknown construction {kind!r}")
    label = KINDS[kind]
    _check_range(label, j, n)
    _check_cap(n)
    if kind == "phi_recursive":
        members = _phi(j, n)
    elif kind == "theta_recursive":
        members = _theta(j, n)
    else:
        lo, hi = _window(j)
        members = iter_c1(n, lo, hi, last_nonzero=(kind == "phi_c1"))
    return IndexFamily(label, j, n, tuple(sorted(members)))


# -- explicit moment formulas ------------------------------------------------

def _explicit(k: int, construction: str, displacement: bool) -> AlphaPolynomial:
    if not isinstance(k, int) or k < 2:
        raise InvalidArgumentError(f"explicit formulas need k >= 2, got {k!r}")
    if construction not in ("recursive", "c1"):
        raise InvalidArgumentError(f"unknown construction {construction!r}")
    n = k - 1
    j0 = 0 if displacement else 1
    if n > MATERIALIZE_CAP or n == 1:
        by_sum = c1_sum_weights(n, last_nonzero=not displacement)
        coeffs = [sum(by_sum[max(lo, 0): hi + 1], Fraction(0))
                  for lo, hi in map(_window, range(j0, n + 1))]
    elif construction == "recursive":
        fam = _theta if displacement else _phi
        coeffs = [family_weight(fam(j, n)) for j in range(j0, n + 1)]
    else:
        coeffs = [family_weight(iter_c1(n, *_window(j), last_nonzero=not displacement))
                  for j in range(j0, n + 1)]
    if not displacement:
        coeffs = [Fraction(0)] + coeffs
    return AlphaPolynomial(coeffs)


def explicit_mean_increment(k: int, construction: str = "recursive") -> AlphaPolynomial:
    """E(X_k)/beta summed over the Phi (or Omega) families.

    Above :data:`MATERIALIZE_CAP` the C1 weights are streamed instead.
    """
    return _explicit(k, construction, displacement=False)


def explicit_mean_displacement(k: int, construction: str = "recursive") -> AlphaPolynomial:
    """E(S_k)/beta summed over the Theta (or Psi) families."""
    return _explicit(k, construction, displacement=True)


# -- cardinalities -----------------------------------------------------------

def _phi2_size(n: int) -> int:
    return n - 1 + sum(r * (n - r) for r in range(1, n - 1))


def cardinality_formula(kind: str, j: int, n: int) -> int:
    """Closed nested-sum sizes of Phi(j, n) and Theta(j, n); empty sums are 0.

    For j >= 3 the summation indices r_0 > r_1 > ... run with lower bounds
    j-1, j-2, ..., and each level contributes the gap factor (r_{i-1} - r_i)
    with r_{-1} = n.
    """
    if kind not in ("phi", "theta"):
        raise InvalidArgumentError(f"unknown family kind {kind!r}")
    if not isinstance(j, int) or not isinstance(n, int) or j < 1 or n < 1:
        raise InvalidArgumentError(f"need j >= 1 and n >= 1, got j={j}, n={n}")

    if kind == "phi":
        if j == 1:
            return n
        if j == 2:
            return _phi2_size(n)
        depth, inner = j - 3, _phi2_size
    else:
        if j == 1:
            return n * (n + 1) // 2
        depth, inner = j - 2, (lambda r: r * (r + 1) // 2)

    def nest(level: int, upper: int) -> int:
        total = 0
        for r in range(j - 1 - level, upper):
            tail = inner(r) if level == depth else nest(level + 1, r)
            total += (upper - r) * tail
        return total

    return nest(0, n)

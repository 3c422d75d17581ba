"""Polynomials in the memory parameter alpha with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable


def _canonical(coeffs: Iterable) -> tuple:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class AlphaPolynomial:
    """Immutable polynomial ``sum_j coeffs[j] * alpha**j``.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _canonical(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("AlphaPolynomial is immutable")

    @classmethod
    def constant(cls, c) -> "AlphaPolynomial":
        return cls((c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coefficient(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def __call__(self, alpha) -> Fraction:
        alpha = Fraction(alpha)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc

    def evaluate_float(self, alpha: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * alpha + float(c)
        return acc

    def times_alpha(self, power: int = 1) -> "AlphaPolynomial":
        if not self.coeffs:
            return self
        return AlphaPolynomial((0,) * power + self.coeffs)

    @staticmethod
    def _lift(other) -> "AlphaPolynomial":
        if isinstance(other, AlphaPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return AlphaPolynomial((other,))
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return AlphaPolynomial(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self):
        return AlphaPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlphaPolynomial(c * other for c in self.coeffs)
        if not isinstance(other, AlphaPolynomial):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return AlphaPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return AlphaPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlphaPolynomial(c / other for c in self.coeffs)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def to_strings(self) -> list:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    def __repr__(self):
        return f"AlphaPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if j == 0 else ("α" if j == 1 else f"α^{j}")
            if j and c == 1:
                terms.append(mono)
            else:
                terms.append(f"({c})" + ("·" + mono if mono else ""))
        return " + ".join(terms)


ZERO = AlphaPolynomial()
ONE = AlphaPolynomial((1,))
ALPHA = AlphaPolynomial((0, 1))

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from erwmem.poly import ALPHA, ONE, ZERO, AlphaPolynomial

fracs = st.fractions(min_value=-10, max_value=10, max_denominator=50)
polys = st.lists(fracs, max_size=6).map(AlphaPolynomial)


def test_canonical_form():
    assert AlphaPolynomial([1, 0, 0]).coeffs == (Fraction(1),)
    assert AlphaPolynomial([0, 0]).coeffs == ()
    assert ZERO.degree == -1
    assert AlphaPolynomial([0, 0, 5]).degree == 2


def test_basic_values():
    p = ONE + ALPHA * Fraction(7, 4) + ALPHA * ALPHA / 4
    assert p.coeffs == (1, Fraction(7, 4), Fraction(1, 4))
    assert p(Fraction(1, 2)) == Fraction(31, 16)
    assert p.leading == Fraction(1, 4)
    assert p.to_strings() == ["1/1", "7/4", "1/4"]
    assert p == AlphaPolynomial(["1", "7/4", "1/4"])
    assert ALPHA.times_alpha(2) == AlphaPolynomial([0, 0, 0, 1])


def test_immutable():
    with pytest.raises(AttributeError):
        ALPHA.coeffs = ()


@given(polys, polys, fracs)
def test_ring_ops_agree_with_evaluation(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a - b)(x) == a(x) - b(x)
    assert (a * b)(x) == a(x) * b(x)
    assert (a * 3)(x) == 3 * a(x)
    assert (a / 7)(x) == a(x) / 7


@given(polys, polys)
def test_degree_of_product(a, b):
    if a != ZERO and b != ZERO:
        assert (a * b).degree == a.degree + b.degree
        assert (a * b).leading == a.leading * b.leading


@given(polys)
def test_float_evaluation(a):
    assert a.evaluate_float(0.5) == pytest.approx(float(a(Fraction(1, 2))), abs=1e-9)

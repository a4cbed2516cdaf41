from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bnskein.ring import (
    QQ,
    ZZ,
    Laurent,
    RingError,
    coeff,
    coeff_add,
    format_coeff,
    format_exponent,
    laurent_mul,
    parse_coeff,
)

fractions = st.fractions(max_denominator=12).filter(lambda f: abs(f) < 50)
laurents = st.dictionaries(st.integers(-6, 6), fractions, max_size=4).map(Laurent)


def test_coeff_add_examples():
    assert coeff_add(Fraction(1, 2), Fraction(1, 2)) == 1
    assert coeff_add(0, Fraction(3, 7)) == Fraction(3, 7)
    assert coeff_add(Fraction(1, 4), Fraction(-1, 4)) == 0


def test_coefficients_are_exact_and_reduced():
    c = coeff_add(Fraction(2, 8), Fraction(1, 8))
    assert (c.numerator, c.denominator) == (3, 8)
    with pytest.raises(TypeError):
        coeff(0.5)


def test_coefficient_text():
    assert format_coeff(Fraction(-3, 4)) == "-3/4"
    assert format_coeff(Fraction(6, 3)) == "2"
    assert parse_coeff(" -3/4 ") == Fraction(-3, 4)
    for bad in ("", "0.5", "1e3", "x"):
        with pytest.raises(ValueError):
            parse_coeff(bad)


def test_integer_mode_has_no_half():
    assert QQ.half() == Fraction(1, 2)
    with pytest.raises(RingError):
        ZZ.half()
    with pytest.raises(RingError):
        ZZ(Fraction(1, 3))
    with pytest.raises(RingError):
        ZZ.inverse(2)
    assert ZZ.inverse(-1) == -1
    with pytest.raises(RingError):
        QQ.inverse(0)


def test_laurent_examples():
    x = Laurent.monomial(1)
    assert laurent_mul(x, Laurent.monomial(-1)) == Laurent.constant(1)
    assert laurent_mul(x + Laurent.constant(1), x) == Laurent.monomial(2) + x
    half = Laurent.monomial(Fraction(1, 2))
    assert half.terms == {1: 1}
    assert laurent_mul(half, half) == x
    with pytest.raises(ValueError):
        Laurent.monomial(Fraction(1, 3))


def test_laurent_text():
    assert str(Laurent()) == "0"
    assert format_exponent(-3) == "-3/2"
    assert format_exponent(4) == "2"
    assert "x^" in str(Laurent.monomial(2, Fraction(1, 2)))


def test_zero_terms_never_stored():
    a = Laurent({0: 1, 2: 1})
    b = Laurent({0: -1})
    assert (a + b).terms == {2: 1}
    assert Laurent({3: 0}).is_zero()


@given(fractions, fractions, fractions)
def test_coefficient_ring_laws(a, b, c):
    assert coeff_add(a, b) == coeff_add(b, a)
    assert coeff_add(coeff_add(a, b), c) == coeff_add(a, coeff_add(b, c))
    assert a * (b + c) == a * b + a * c


@given(laurents, laurents, laurents)
def test_laurent_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    for p in (a * b, a + b):
        assert all(v != 0 for v in p.terms.values())

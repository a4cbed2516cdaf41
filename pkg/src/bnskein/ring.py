"""Exact coefficients and Laurent polynomials in one formal variable ``x``.

Coefficients are :class:`fractions.Fraction` values.  Laurent exponents may be
half-integers; they are stored doubled so that all bookkeeping stays integral.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Coefficient = Fraction
Number = Union[int, Fraction, str]


class RingError(ValueError):
    """Raised when an operation needs an inverse the coefficient ring lacks."""


class Ring:
    """The coefficient ring R.

    ``QQ`` (the default everywhere) is the rationals.  ``ZZ`` is the integer
    mode: values must stay integral and anything needing ``1/2`` raises.
    """

    def __init__(self, name: str, integral: bool):
        self.name = name
        self.integral = integral

    def __repr__(self) -> str:
        return f"Ring({self.name})"

    def __call__(self, value: Number) -> Fraction:
        c = coeff(value)
        if self.integral and c.denominator != 1:
            raise RingError(f"{format_coeff(c)} is not an element of {self.name}")
        return c

    def half(self) -> Fraction:
        if self.integral:
            raise RingError(f"2 is not invertible in {self.name}")
        return Fraction(1, 2)

    def inverse(self, value: Number) -> Fraction:
        c = coeff(value)
        if c == 0:
            raise RingError("0 is not invertible")
        inv = 1 / c
        if self.integral and inv.denominator != 1:
            raise RingError(f"{format_coeff(c)} is not invertible in {self.name}")
        return inv


QQ = Ring("QQ", integral=False)
ZZ = Ring("ZZ", integral=True)


def coeff(value: Number) -> Fraction:
    """Coerce ``value`` to an exact coefficient.  Floats are refused."""
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    if isinstance(value, str):
        return parse_coeff(value)
    return Fraction(value)


def coeff_add(a: Number, b: Number) -> Fraction:
    return coeff(a) + coeff(b)


def format_coeff(c: Fraction) -> str:
    c = Fraction(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def parse_coeff(text: str) -> Fraction:
    text = text.strip()
    if not text:
        raise ValueError("empty coefficient")
    if "." in text or "e" in text.lower():
        raise ValueError(f"coefficient must be p or p/q, got {text!r}")
    return Fraction(text)


def format_exponent(doubled: int) -> str:
    if doubled % 2 == 0:
        return str(doubled // 2)
    return f"{doubled}/2"


class Laurent:
    """Element of R[x^{1/2}, x^{-1/2}] with exact coefficients.

    ``terms`` maps doubled exponents to nonzero coefficients.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Number] | None = None):
        clean = {}
        for e2, c in (terms or {}).items():
            c = coeff(c)
            if c != 0:
                clean[int(e2)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def monomial(cls, exponent: Number = 0, c: Number = 1) -> "Laurent":
        """``c * x**exponent``; ``exponent`` may be a half-integer."""
        e = coeff(exponent)
        doubled = e * 2
        if doubled.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(doubled): c})

    @classmethod
    def constant(cls, c: Number) -> "Laurent":
        return cls({0: c})

    @property
    def terms(self) -> dict[int, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def has_half_exponents(self) -> bool:
        return any(e % 2 for e in self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Laurent.constant(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            other = Laurent.constant(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if not isinstance(other, Laurent):
            c = coeff(other)
            return Laurent({e: c * v for e, v in self._terms.items()})
        out: dict[int, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if len(self._terms) != 1:
                raise RingError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            return Laurent({-e * -n: (1 / c) ** -n})
        out = Laurent.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self) -> str:
        return f"Laurent({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                parts.append(format_coeff(c))
            else:
                parts.append(f"{format_coeff(c)}*x^{format_exponent(e)}")
        return " + ".join(parts)


def laurent_mul(a: Laurent, b: Laurent) -> Laurent:
    return a * b


def laurent_sum(items: Iterable[Laurent]) -> Laurent:
    out = Laurent()
    for item in items:
        out = out + item
    return out

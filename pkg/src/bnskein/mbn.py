"""Alternative normalizations and the doubly modified module MBN(M, R).

MBN(M, R) is free over R[x, 1/x] on H_2(M; Z/2).  A dotless surface F maps to
``x**(g(F) - |F|) * [F]``; each dot multiplies by ``x``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from bnskein.core import SkeinError
from bnskein.ring import Laurent, Number, QQ, Ring, coeff, format_exponent


@dataclass(frozen=True)
class NormalizationConstants:
    """Values of the white sphere (y), the dotted sphere (z) and x."""

    x: Fraction
    y: Fraction
    z: Fraction

    @classmethod
    def of(cls, x: Number, y: Number, z: Number) -> "NormalizationConstants":
        return cls(coeff(x), coeff(y), coeff(z))


def check_normalization(c: NormalizationConstants) -> bool:
    """Both sphere identities forced by the neck-cut relation."""
    return c.y == 2 * c.y * c.z and c.z == c.z * c.z + c.x * c.y


@dataclass(frozen=True)
class NormalizationFamily:
    name: str
    description: str
    contains: Callable[[NormalizationConstants], bool]
    sample: Callable[[Number], NormalizationConstants]


def _sample_nonzero_y(x: Number, ring: Ring = QQ) -> NormalizationConstants:
    x = coeff(x)
    return NormalizationConstants(x, ring.inverse(4 * x), ring.half())


def enumerate_normalization_families() -> list[NormalizationFamily]:
    return [
        NormalizationFamily(
            "modified",
            "y != 0, z = 1/2, x*y = 1/4",
            lambda c: c.y != 0 and c.z == Fraction(1, 2) and c.x * c.y == Fraction(1, 4),
            _sample_nonzero_y,
        ),
        NormalizationFamily(
            "bar-natan",
            "y = 0, z = 1, x arbitrary",
            lambda c: c.y == 0 and c.z == 1,
            lambda x: NormalizationConstants(coeff(x), Fraction(0), Fraction(1)),
        ),
        NormalizationFamily(
            "trivial",
            "y = 0, z = 0, x arbitrary",
            lambda c: c.y == 0 and c.z == 0,
            lambda x: NormalizationConstants(coeff(x), Fraction(0), Fraction(0)),
        ),
    ]


def in_some_family(c: NormalizationConstants) -> bool:
    return any(f.contains(c) for f in enumerate_normalization_families())


def dotted_state_recursion_check(x: Number, k: int, ring: Ring = QQ) -> Fraction:
    """Value of a k-dotted state relative to the dotless one, ``(2x)**k``.

    Iterates ``a_k = x a_{k-1} + a_k / 2`` solved for ``a_k`` and checks the
    closed form against it.
    """
    if k < 0:
        raise SkeinError("k must be non-negative")
    x = coeff(x)
    half = ring.half()
    a = Fraction(1)
    for _ in range(k):
        a = x * a / (1 - half)
    closed = (2 * x) ** k
    if a != closed:
        raise AssertionError(f"recursion gives {a}, closed form {closed}")
    return closed


# --- H_2 classes and the evaluator ------------------------------------------


def format_bits(cls: int, b: int) -> str:
    return "".join("1" if cls >> i & 1 else "0" for i in range(b))


def parse_bits(text: str) -> int:
    text = text.strip()
    if text and set(text) - {"0", "1"}:
        raise ValueError(f"{text!r} is not a bit string")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


@dataclass(frozen=True)
class MbnComponent:
    euler: int
    dots: int = 0
    cls: int = 0
    orientable: bool = True

    def __post_init__(self):
        if self.dots < 0:
            raise SkeinError("dots must be non-negative")
        if self.orientable and (self.euler % 2 or self.euler > 2):
            raise SkeinError(f"orientable closed surface cannot have euler characteristic {self.euler}")
        if not self.orientable and self.euler > 1:
            raise SkeinError(f"non-orientable closed surface cannot have euler characteristic {self.euler}")


class MbnElement:
    """Finite sum ``sum_h p_h(x) [h]`` with ``h`` in (Z/2)^b."""

    def __init__(self, b: int, terms: Mapping[int, Laurent] | None = None):
        if b < 0:
            raise SkeinError("b must be non-negative")
        self.b = b
        clean = {}
        for h, p in (terms or {}).items():
            if not 0 <= h < 1 << b:
                raise SkeinError(f"class {h} outside H_2 of rank {b}")
            if not p.is_zero():
                clean[h] = p
        self.terms = clean

    @classmethod
    def basis(cls, b: int, h: int, exponent: Number = 0, c: Number = 1) -> "MbnElement":
        return cls(b, {h: Laurent.monomial(exponent, c)})

    def __eq__(self, other) -> bool:
        return isinstance(other, MbnElement) and self.b == other.b and self.terms == other.terms

    def __hash__(self):
        return hash((self.b, frozenset(self.terms.items())))

    def __add__(self, other: "MbnElement") -> "MbnElement":
        _same_rank(self, other)
        out = dict(self.terms)
        for h, p in other.terms.items():
            out[h] = out.get(h, Laurent()) + p
        return MbnElement(self.b, out)

    def __mul__(self, other: "MbnElement") -> "MbnElement":
        return mbn_multiply(self, other)

    def __repr__(self) -> str:
        return f"MbnElement({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for h in sorted(self.terms):
            p = self.terms[h]
            for e in sorted(p.terms, reverse=True):
                c = p.terms[e]
                parts.append(f"{c} * x^{format_exponent(e)} * [{format_bits(h, self.b)}]")
        return " + ".join(parts)


def _same_rank(a: MbnElement, b: MbnElement):
    if a.b != b.b:
        raise SkeinError(f"H_2 ranks differ: {a.b} vs {b.b}")


def mbn_multiply(a: MbnElement, b: MbnElement) -> MbnElement:
    """Group-algebra product: classes add mod 2, coefficients multiply."""
    _same_rank(a, b)
    out: dict[int, Laurent] = {}
    for h1, p1 in a.terms.items():
        for h2, p2 in b.terms.items():
            h = h1 ^ h2
            out[h] = out.get(h, Laurent()) + p1 * p2
    return MbnElement(a.b, out)


def mbn_exponent_doubled(components: Iterable[MbnComponent]) -> int:
    return sum(-c.euler + 2 * c.dots for c in components)


def mbn_evaluate(components: Sequence[MbnComponent], b: int, *, allow_half: bool = False) -> MbnElement:
    """Image of a marked surface: ``x**(sum(-chi/2) + dots) * [sum of classes]``."""
    e2 = mbn_exponent_doubled(components)
    if e2 % 2 and not allow_half:
        raise SkeinError("odd total euler characteristic gives a half-integer power of x (allow_half / --allow-half)")
    h = 0
    for c in components:
        if not 0 <= c.cls < 1 << b:
            raise SkeinError(f"class {c.cls} outside H_2 of rank {b}")
        h ^= c.cls
    return MbnElement(b, {h: Laurent({e2: 1})})


def mbn_neck_cut(
    components: Sequence[MbnComponent], index: int, outcome: Sequence[MbnComponent]
) -> list[MbnComponent]:
    """Compress ``components[index]`` into ``outcome`` (one or two pieces).

    The one-term MBN relation: the compression carries one new dot, on either
    side.  ``outcome`` must include that dot.
    """
    old = components[index]
    outcome = list(outcome)
    if len(outcome) not in (1, 2):
        raise SkeinError("a compression yields one or two components")
    if sum(c.euler for c in outcome) != old.euler + 2:
        raise SkeinError("compression must raise euler characteristic by 2")
    if sum(c.dots for c in outcome) != old.dots + 1:
        raise SkeinError("compression adds exactly one dot")
    h = 0
    for c in outcome:
        h ^= c.cls
    if h != old.cls:
        raise SkeinError("compression preserves the Z/2 class")
    return list(components[:index]) + outcome + list(components[index + 1:])

"""Closed-form normal forms for surfaces in S^3, S^1 x S^2 and T^3."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from bnskein.core import SkeinError, State, SurfaceComponent, TRIVIAL
from bnskein.ring import QQ, Ring, format_coeff


def eval_s3_component(genus: int, dots: int) -> Fraction:
    """Value of one closed component in a ball: ``2**g`` if ``g + d == 1``."""
    if genus < 0 or dots < 0:
        raise SkeinError("genus and dots must be non-negative")
    return Fraction(2**genus) if genus + dots == 1 else Fraction(0)


def eval_s3(components: Iterable[tuple[int, int]]) -> Fraction:
    """Coefficient of the empty surface for a marked surface in S^3."""
    out = Fraction(1)
    for g, d in components:
        out *= eval_s3_component(g, d)
        if out == 0:
            break
    return out


@dataclass(frozen=True)
class Canonical:
    """``coefficient * basis``; ``basis`` is ``None`` exactly for zero.

    Basis keys: ``("empty",)``, ``("z", k)``, ``("e0",)``, ``("T", dir, k)``,
    ``("dT", dir)`` and, for horizontal surfaces, ``("f", name, k)``,
    ``("d", name)``.
    """

    coefficient: Fraction
    basis: tuple | None

    @classmethod
    def zero(cls) -> "Canonical":
        return cls(Fraction(0), None)

    def is_zero(self) -> bool:
        return self.basis is None

    def scale(self, c) -> "Canonical":
        c = self.coefficient * c
        return Canonical.zero() if c == 0 or self.basis is None else Canonical(c, self.basis)

    def __str__(self) -> str:
        if self.basis is None:
            return "0"
        return f"{format_coeff(self.coefficient)} * {basis_name(self.basis)}"


def basis_name(b: tuple) -> str:
    kind = b[0]
    if kind == "empty":
        return "empty"
    if kind == "z":
        return f"z^{b[1]}"
    if kind == "e0":
        return "e0"
    if kind == "T":
        p, q, r = b[1]
        return f"T[{p},{q},{r}]^{b[2]}"
    if kind == "dT":
        p, q, r = b[1]
        return f"dT[{p},{q},{r}]"
    if kind == "f":
        return f"{b[1]}^{b[2]}"
    if kind == "d":
        return f"d_{b[1]}"
    raise ValueError(f"unknown basis {b!r}")


def reduce_parallel_dots(k: int, dot_positions: Sequence[int], spheres: bool) -> tuple[int, int, int | None]:
    """Shift and pair off dots in a family of ``k`` parallel copies.

    Dots move toward the lowest index; the two lowest dots are made adjacent
    (one sign per shift) and the pair is deleted.  Returns ``(sign, copies,
    dots_left)`` with ``sign == 0`` when the state vanishes.
    """
    counts: dict[int, int] = {}
    for i in dot_positions:
        if not 0 <= i < k:
            raise SkeinError(f"dot position {i} outside 0..{k - 1}")
        counts[i] = counts.get(i, 0) + 1
    if any(c >= 2 for c in counts.values()):
        return 0, k, None
    dotted = sorted(counts)
    sign = 1
    while len(dotted) >= 2:
        if not spheres:
            return 0, k, None
        a, b = dotted[0], dotted[1]
        sign *= (-1) ** (b - a - 1)
        k -= 2
        dotted = [d - 2 for d in dotted[2:]]
    return sign, k, len(dotted)


def _family_canonical(k, dot_positions, spheres, white_basis, dotted_basis) -> Canonical:
    sign, k, left = reduce_parallel_dots(k, dot_positions, spheres)
    if sign == 0:
        return Canonical.zero()
    if left == 0:
        return Canonical(Fraction(sign), white_basis(k))
    if k == 1:
        return Canonical(Fraction(sign), dotted_basis())
    # a single dot on k >= 2 copies: shifting it is a rotation, so P = -P
    return Canonical.zero()


@dataclass(frozen=True)
class S1xS2State:
    """``k`` parallel essential spheres with dots at the given positions."""

    k: int
    dots: tuple = ()
    extras: tuple = ()

    def __post_init__(self):
        if self.k < 0:
            raise SkeinError("k must be non-negative")
        object.__setattr__(self, "dots", tuple(self.dots))
        object.__setattr__(self, "extras", tuple(tuple(e) for e in self.extras))


def normalize_s1xs2(s: S1xS2State) -> Canonical:
    """Write a pure state of S^1 x S^2 in the basis ``z^k``, ``e0``."""
    c = eval_s3(s.extras)
    if c == 0:
        return Canonical.zero()
    out = _family_canonical(
        s.k, s.dots, True,
        lambda k: ("z", k) if k else ("empty",),
        lambda: ("e0",),
    )
    return out.scale(c)


def primitive_direction(direction: Sequence[int]) -> tuple[int, int, int]:
    """Sign-normalized primitive triple; the first nonzero entry is positive."""
    if len(direction) != 3:
        raise SkeinError("a T^3 slope is a triple of integers")
    p, q, r = (int(v) for v in direction)
    if (p, q, r) == (0, 0, 0):
        raise SkeinError("direction (0,0,0) is not a torus slope")
    if gcd(gcd(p, q), r) != 1:
        raise SkeinError(f"direction ({p},{q},{r}) is not primitive")
    first = next(v for v in (p, q, r) if v)
    if first < 0:
        p, q, r = -p, -q, -r
    return p, q, r


@dataclass(frozen=True)
class T3State:
    direction: tuple
    k: int
    dots: tuple = ()
    extras: tuple = ()

    def __post_init__(self):
        if self.k < 0:
            raise SkeinError("k must be non-negative")
        object.__setattr__(self, "direction", tuple(self.direction))
        object.__setattr__(self, "dots", tuple(self.dots))
        object.__setattr__(self, "extras", tuple(tuple(e) for e in self.extras))


def normalize_t3(s: T3State) -> Canonical:
    d = primitive_direction(s.direction)
    c = eval_s3(s.extras)
    if c == 0:
        return Canonical.zero()
    out = _family_canonical(
        s.k, s.dots, False,
        lambda k: ("T", d, k) if k else ("empty",),
        lambda: ("dT", d),
    )
    return out.scale(c)


# --- the dual functional E on S^1 x S^2 -------------------------------------


def functional_E_term(t: tuple, family_prefix: str = "essential-sphere") -> Fraction:
    """E on one surface term of the S^1 x S^2 model.

    Nonzero only when the essential spheres are all dotted and odd in number
    (``e0`` and the states its pair deletions come from) and every other
    component is a dotted sphere or white torus in a ball.  Those ball
    components contribute their S^3 values, so each white torus counts 2.
    """
    fam = [x for x in t if x.label.startswith(family_prefix + "#")]
    rest = [x for x in t if not x.label.startswith(family_prefix + "#")]
    if not fam or len(fam) % 2 == 0 or any(x.dots != 1 for x in fam):
        return Fraction(0)
    if any(x.label != TRIVIAL for x in rest):
        return Fraction(0)
    return eval_s3((x.genus, x.dots) for x in rest)


def functional_E(s: State | S1xS2State, ring: Ring = QQ) -> Fraction:
    if isinstance(s, S1xS2State):
        from bnskein.models import ESSENTIAL_SPHERES, family_term

        pattern = [0] * s.k
        for i in s.dots:
            pattern[i] += 1
        s = State.of(family_term(ESSENTIAL_SPHERES, pattern, s.extras))
    out = Fraction(0)
    for t, c in s.items():
        out += c * functional_E_term(t)
    return ring(out)

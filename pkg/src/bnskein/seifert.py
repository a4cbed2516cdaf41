"""Bar-Natan modules of Seifert fibered spaces: vertical part plus horizontal part."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from bnskein.core import SkeinError
from bnskein.evaluators import Canonical, _family_canonical
from bnskein.sbn import (
    DottedCanonical,
    Region,
    Stack,
    SurfaceSpec,
    circle_adjacency,
    dotted_normalize,
    format_class,
    graded_dimension,
)


@dataclass(frozen=True)
class SeifertData:
    base_genus: int
    fibers: tuple = ()
    orientable_total: bool = True
    orientable_base: bool = True

    def __post_init__(self):
        if self.base_genus < 0:
            raise SkeinError("base genus must be non-negative")
        fibers = tuple(sorted((int(p), int(q)) for p, q in self.fibers))
        for p, q in fibers:
            if abs(p) <= 1:
                raise SkeinError(f"singular fiber ({p},{q}) needs |p| > 1")
        object.__setattr__(self, "fibers", fibers)

    @property
    def surface(self) -> SurfaceSpec:
        return SurfaceSpec(self.base_genus, len(self.fibers))


@dataclass(frozen=True, order=True)
class HorizontalClass:
    """Opaque isotopy class of a horizontal surface with its degree and genus."""

    token: str
    degree: int
    genus: int = 0

    def __post_init__(self):
        if not self.token or any(ch in self.token for ch in ":, ^"):
            raise SkeinError(f"bad horizontal class token {self.token!r}")
        if self.degree <= 0:
            raise SkeinError(f"horizontal class {self.token} needs positive degree")
        if self.genus < 0:
            raise SkeinError("genus must be non-negative")


@dataclass(frozen=True)
class HorizontalState:
    cls: HorizontalClass
    k: int
    dots: tuple = ()

    def __post_init__(self):
        if self.k < 0:
            raise SkeinError("k must be non-negative")
        object.__setattr__(self, "dots", tuple(self.dots))


@dataclass(frozen=True)
class BnStructureReport:
    vertical: SurfaceSpec
    horizontal: tuple

    def vertical_dimensions(self, max_n: int = 4, *, exclude_zero_class: bool = False) -> list[int]:
        return [graded_dimension(self.vertical, n, exclude_zero_class=exclude_zero_class) for n in range(1, max_n + 1)]

    def __str__(self) -> str:
        v = self.vertical
        lines = [f"BN(M) = BN_v(M) + BN_h(M)", f"vertical: SBN(F) genus={v.genus} singular={v.singular_points}"]
        full = self.vertical_dimensions()
        excl = self.vertical_dimensions(exclude_zero_class=True)
        for n, (a, b) in enumerate(zip(full, excl), start=1):
            lines.append(f"  rank G_{n} = {a} (excluding zero class: {b})")
        if not self.horizontal:
            lines.append("horizontal: none")
        for h in self.horizontal:
            lines.append(f"horizontal: {h.token} degree={h.degree} genus={h.genus}: free on {h.token}^k (k>=0) plus d_{h.token}")
        return "\n".join(lines)


def bn_decompose(m: SeifertData, horiz: Sequence[HorizontalClass] = ()) -> BnStructureReport:
    if not (m.orientable_total and m.orientable_base):
        raise SkeinError("only orientable total spaces over orientable bases are handled")
    tokens = [h.token for h in horiz]
    if len(set(tokens)) != len(tokens):
        raise SkeinError("horizontal class tokens must be distinct")
    return BnStructureReport(m.surface, tuple(sorted(horiz)))


def normalize_horizontal(s: HorizontalState) -> Canonical:
    """Parallel horizontal copies reduce like essential spheres (genus 0) or tori."""
    name = s.cls.token
    return _family_canonical(
        s.k, s.dots, s.cls.genus == 0,
        lambda k: ("f", name, k) if k else ("empty",),
        lambda: ("d", name),
    )


# --- vertical lift functional ---------------------------------------------------


@dataclass(frozen=True)
class LiftSample:
    """A pure vertical state: the base curve state plus trivial tori."""

    stacks: tuple
    regions: tuple
    white_tori: int = 0
    dotted_tori: int = 0


@dataclass
class LiftReport:
    checked: int = 0
    nontrivial: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        head = (
            f"checked {self.checked} relation instances ({self.nontrivial} with nonzero terms), "
            f"{len(self.violations)} violations"
        )
        return "\n".join([head] + [f"  {v}" for v in self.violations])


def phi(spec: SurfaceSpec, target: DottedCanonical, beta: LiftSample) -> Fraction:
    """Coefficient of ``target`` in ``beta`` within G_n.

    ``(-1)^l`` from the dot transport and a factor 2 per compressible white
    torus, which is what makes the functional vanish on the compression
    relation (a trivial torus is twice the empty surface).
    """
    if beta.dotted_tori:
        return Fraction(0)
    res = dotted_normalize(spec, list(beta.stacks), list(beta.regions))
    if res.canonical.is_zero() or res.canonical.value != target.value:
        return Fraction(0)
    return res.signed_coefficient * target.sign * 2**beta.white_tori


def _canonical_samples(spec: SurfaceSpec) -> list[tuple]:
    """Stacks/regions presentations of surviving dotted states on ``spec``."""
    g = spec.genus
    out = []
    classes = range(1, spec.h1_size)
    for e in classes:
        for w in (1, 2, 4):
            out.append(((Stack(e, w, (0,)),), (Region((0, 0), g - 1),)))
    if g >= 2:
        pairs = [(e, f) for e in classes for f in classes if e < f]
        for e, f in pairs[:24]:
            out.append(((Stack(e, 1, (0,)), Stack(f, 1)), (Region((0, 0, 1, 1), g - 2),)))
            for m in (1, 3):
                out.append((
                    (Stack(e, 1, (0,)), Stack(f, 1), Stack(0, m)),
                    (Region((0, 0, 2), g - 2), Region((2, 1, 1), 0)),
                ))
    return out


def _move_dot(stacks: Sequence[Stack], circle) -> tuple:
    s, p = circle
    return tuple(replace(st, dots=(p,) if i == s else ()) for i, st in enumerate(stacks))


def vertical_lift_consistency(spec: SurfaceSpec, samples: int = 100, seed: int = 0) -> LiftReport:
    """Check the lifted functionals on sampled relation instances.

    Instances: a dot moved across a region (the merged third term lies one
    level down, so the two dotted terms must cancel), a trivial torus
    compressed into a dotted sphere, and a dotted trivial torus (both sides
    vanish).
    """
    rng = random.Random(seed)
    bases = _canonical_samples(spec)
    report = LiftReport()
    if not bases:
        return report
    targets = []
    for stacks, regions in bases:
        res = dotted_normalize(spec, list(stacks), list(regions))
        if not res.canonical.is_zero():
            targets.append((stacks, regions, res.canonical))
    if not targets:
        return report
    for _ in range(samples):
        stacks, regions, own = rng.choice(targets)
        target = own if rng.random() < 0.5 else rng.choice(targets)[2]
        kind = rng.choice(("jump", "torus", "dotted-torus"))
        adj = circle_adjacency(stacks, regions)
        c = rng.choice(sorted(adj))
        base = LiftSample(_move_dot(stacks, c), regions)
        plus = Fraction(0)
        if kind == "jump" and adj[c]:
            c2 = rng.choice(sorted(adj[c]))
            plus = phi(spec, target, base)
            minus = phi(spec, target, LiftSample(_move_dot(stacks, c2), regions))
            lhs, rhs = Fraction(0), plus + minus
        elif kind == "torus":
            k = rng.randint(0, 2)
            lhs = phi(spec, target, replace(base, white_tori=k + 1))
            rhs = 2 * phi(spec, target, replace(base, white_tori=k))
        else:
            lhs = phi(spec, target, replace(base, dotted_tori=1))
            rhs = Fraction(0)
        report.checked += 1
        report.nontrivial += bool(lhs or rhs or plus)
        if lhs != rhs:
            report.violations.append(f"{kind} at circle {c}: {lhs} != {rhs}")
    return report

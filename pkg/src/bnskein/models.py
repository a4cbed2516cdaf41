"""Relation generators for the rewrite oracle.

Each rule maps one term to the :class:`RelationInstance` objects that may
rewrite it.  These rules know nothing about the closed-form normalizers in
:mod:`bnskein.evaluators`; tests compare the two routes.

Conventions for labels:

* ``trivial`` components lie in a ball (any genus); they compress to spheres
  bounding balls.
* a parallel family is a set of components ``<prefix>#<i>`` sitting at cyclic
  positions ``0..k-1`` (spheres ``{*} x S^2`` in S^1 x S^2, tori of one slope
  in T^3, copies of a horizontal surface).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from bnskein.core import (
    TRIVIAL,
    RelationInstance,
    State,
    SurfaceComponent,
    neck_cut_replacement,
    replace_components,
)


def rule_two_dot(t: tuple) -> Iterator[RelationInstance]:
    for i, x in enumerate(t):
        if x.dots >= 2:
            yield RelationInstance("TwoDots", (i,), t, State())
            return


def rule_trivial_sphere(t: tuple) -> Iterator[RelationInstance]:
    for i, x in enumerate(t):
        if x.label == TRIVIAL and x.genus == 0 and x.dots <= 1:
            if x.dots == 0:
                yield RelationInstance("WhiteSphere", (i,), t, State())
            else:
                yield RelationInstance("DottedSphere", (i,), t, State.of(replace_components(t, [i], [])))


def compressions(x: SurfaceComponent) -> list[list[SurfaceComponent]]:
    """All compression outcomes of a closed surface in a ball, with dot splits."""
    g, d = x.genus, x.dots
    out = []
    if g == 0:
        return out
    out.append([SurfaceComponent(x.label, g - 1, d)])
    for g1 in range(1, g):
        if g1 > g - g1:
            continue
        for d1 in range(d + 1):
            a = SurfaceComponent(x.label, g1, d1)
            b = SurfaceComponent(x.label, g - g1, d - d1)
            if g1 == g - g1 and d1 > d - d1:
                continue
            out.append([a, b])
    return out


def rule_neck_cut_trivial(t: tuple) -> Iterator[RelationInstance]:
    for i, x in enumerate(t):
        if x.label == TRIVIAL and x.genus >= 1:
            for outcome in compressions(x):
                yield RelationInstance("NeckCut", (i, tuple(outcome)), t, neck_cut_replacement(t, i, outcome))


S3_RULES = (rule_two_dot, rule_trivial_sphere, rule_neck_cut_trivial)


class ParallelFamily:
    """Cyclically arranged parallel copies of one surface.

    Terms are kept in a rotation-canonical form, since rotating the whole
    family around the circle direction is an isotopy.
    """

    def __init__(self, prefix: str, genus: int, cyclic: bool = True):
        self.prefix = prefix
        self.genus = genus
        self.cyclic = cyclic

    def member(self, x: SurfaceComponent) -> bool:
        return x.label.startswith(self.prefix + "#")

    def split(self, t: tuple) -> tuple[list[int], tuple]:
        """Dot pattern by position, and the remaining components."""
        fam = sorted((int(x.label.rsplit("#", 1)[1]), x.dots) for x in t if self.member(x))
        rest = tuple(x for x in t if not self.member(x))
        return [d for _, d in fam], rest

    def build(self, pattern, rest: tuple) -> tuple:
        pattern = self.canonical_pattern(tuple(pattern))
        fam = [SurfaceComponent(f"{self.prefix}#{i}", self.genus, d) for i, d in enumerate(pattern)]
        return tuple(sorted(list(rest) + fam))

    def canonical_pattern(self, pattern: tuple) -> tuple:
        if not self.cyclic or not pattern:
            return pattern
        return _min_rotation(pattern)

    def canonical(self, t: tuple) -> tuple:
        pattern, rest = self.split(t)
        return self.build(pattern, rest)

    def adjacent_pairs(self, k: int) -> list[tuple[int, int]]:
        if k < 2:
            return []
        pairs = [(i, i + 1) for i in range(k - 1)]
        if self.cyclic and k > 2:
            pairs.append((k - 1, 0))
        return pairs

    def rules(self):
        return (self.rule_pair_delete, self.rule_shift)

    def rule_pair_delete(self, t: tuple) -> Iterator[RelationInstance]:
        pattern, rest = self.split(t)
        for i, j in self.adjacent_pairs(len(pattern)):
            if pattern[i] == 1 and pattern[j] == 1:
                if self.genus > 0:
                    rhs = State()
                else:
                    keep = [d for p, d in enumerate(pattern) if p not in (i, j)]
                    rhs = State.of(self.build(keep, rest))
                yield RelationInstance("HandleTube", ("pair", i, j), t, rhs)

    def rule_shift(self, t: tuple) -> Iterator[RelationInstance]:
        pattern, rest = self.split(t)
        here = self.canonical_pattern(tuple(pattern))
        for i, j in self.adjacent_pairs(len(pattern)):
            for src, dst in ((i, j), (j, i)):
                if pattern[src] == 1 and pattern[dst] == 0:
                    moved = list(pattern)
                    moved[src], moved[dst] = 0, 1
                    there = self.canonical_pattern(tuple(moved))
                    if there == here:
                        # P = -P with 1/2 in R
                        yield RelationInstance("NeckCut", ("shift-self", src, dst), t, State())
                    elif there < here:
                        yield RelationInstance("NeckCut", ("shift", src, dst), t, State.of(self.build(there, rest), -1))


@lru_cache(maxsize=None)
def _min_rotation(pattern: tuple) -> tuple:
    return min(pattern[r:] + pattern[:r] for r in range(len(pattern)))


def family_rules(family: ParallelFamily) -> tuple:
    return S3_RULES + family.rules()


def family_term(family: ParallelFamily, dots, extras=()) -> tuple:
    """Canonical term for a family with the given per-position dot counts."""
    rest = tuple(SurfaceComponent(TRIVIAL, g, d) for g, d in extras)
    return family.build(tuple(dots), rest)


ESSENTIAL_SPHERES = ParallelFamily("essential-sphere", genus=0)


def t3_family(direction) -> ParallelFamily:
    p, q, r = direction
    return ParallelFamily(f"torus({p}/{q}/{r})", genus=1)

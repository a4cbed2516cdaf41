"""Curve-level rewrite oracle for SBN states.

A term is an arrangement of disjoint named circles on the surface: each
circle has a class and a dot count; each complementary region lists the
circles on its boundary (a circle with the same region on both sides is
listed twice), its genus and its singular point count.  No symmetry of the
surface is used to identify terms, so equal terms are equal on the nose.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from bnskein.core import ClosureResult, RelationInstance, SkeinError, State, oracle_rewrite_closure
from bnskein.sbn import Region, Stack, stack_end_regions


@dataclass(frozen=True, order=True)
class Arrangement:
    circles: tuple  # sorted (name, cls, dots)
    regions: tuple  # sorted (boundary names, genus, singular)

    def circle(self, name: str) -> tuple:
        for c in self.circles:
            if c[0] == name:
                return c
        raise KeyError(name)

    def names(self) -> list[str]:
        return [c[0] for c in self.circles]

    def dots(self, name: str) -> int:
        return self.circle(name)[2]

    def sides(self, name: str) -> list[int]:
        out = []
        for r, (bd, _, _) in enumerate(self.regions):
            out.extend(r for x in bd if x == name)
        return out

    @property
    def level(self) -> int:
        return len(self.circles)

    def __str__(self) -> str:
        circ = " ".join(f"{n}:{c}:{d}" for n, c, d in self.circles)
        regs = " ".join(f"R({','.join(bd)};g{g};s{s})" for bd, g, s in self.regions)
        return f"<{circ} | {regs}>"


def make_arrangement(circles: Sequence, regions: Sequence) -> Arrangement:
    circles = tuple(sorted((str(n), int(c), int(d)) for n, c, d in circles))
    names = [c[0] for c in circles]
    if len(set(names)) != len(names):
        raise SkeinError("circle names must be distinct")
    regions = tuple(sorted((tuple(sorted(bd)), int(g), int(s)) for bd, g, s in regions))
    counts = {n: 0 for n in names}
    for bd, _, _ in regions:
        for c in bd:
            if c not in counts:
                raise SkeinError(f"region names unknown circle {c!r}")
            counts[c] += 1
    if any(k != 2 for k in counts.values()):
        raise SkeinError("every circle must have exactly two sides")
    return Arrangement(circles, regions)


def arrangement_from_stacks(stacks: Sequence[Stack], regions: Sequence[Region]) -> Arrangement:
    """Expand each stack into circles ``s<stack>.<pos>`` and the blank annuli between them."""
    stack_end_regions(stacks, regions)
    name = lambda s, p: f"s{s}.{p}"
    circles = [(name(s, p), st.cls, st.dots.count(p)) for s, st in enumerate(stacks) for p in range(st.weight)]
    out = []
    seen: set = set()
    for reg in regions:
        bd = []
        for s in reg.ends:
            bd.append(name(s, stacks[s].weight - 1 if s in seen else 0))
            seen.add(s)
        out.append((bd, reg.genus, reg.singular))
    for s, st in enumerate(stacks):
        for p in range(st.weight - 1):
            out.append(([name(s, p), name(s, p + 1)], 0, 0))
    return make_arrangement(circles, out)


# --- elementary edits ---------------------------------------------------------


def _regions(a: Arrangement) -> list:
    return [[list(bd), g, s] for bd, g, s in a.regions]


def _set_dots(a: Arrangement, changes: dict) -> Arrangement:
    circles = [(n, c, changes.get(n, d)) for n, c, d in a.circles]
    return make_arrangement(circles, a.regions)


def _leaf_side(a: Arrangement, c: str):
    """(leaf region, other region) when one side of ``c`` has ``c`` as its only boundary."""
    r1, r2 = a.sides(c)
    if r1 == r2:
        return None
    for r, o in ((r1, r2), (r2, r1)):
        if a.regions[r][0] == (c,):
            return r, o
    return None


def remove_circle_into(a: Arrangement, c: str, leaf: int, other: int) -> Arrangement:
    regs = _regions(a)
    regs[other][0].remove(c)
    regs[other][1] += regs[leaf][1]
    regs[other][2] += regs[leaf][2]
    del regs[leaf]
    return make_arrangement([x for x in a.circles if x[0] != c], regs)


def merged_name(x: str, y: str) -> str:
    x, y = sorted((x, y))
    return f"({x}#{y})"


def band_sum(a: Arrangement, x: str, y: str, region: int) -> Arrangement:
    """Join circles ``x`` and ``y`` by a band through ``region``.

    The new circle carries the class sum and the dots of both.
    """
    if x == y:
        raise SkeinError("band sum needs two distinct circles")
    bd = list(a.regions[region][0])
    if bd.count(x) != 1 or bd.count(y) != 1:
        raise SkeinError("band endpoints must each lie once on the region boundary")
    (ox,) = [r for r in a.sides(x) if r != region]
    (oy,) = [r for r in a.sides(y) if r != region]
    m = merged_name(x, y)
    regs = _regions(a)
    regs[region][0] = [c for c in regs[region][0] if c not in (x, y)] + [m]
    if ox == oy:
        regs[ox][0] = [c for c in regs[ox][0] if c not in (x, y)] + [m]
        regs[ox][1] += 1
    else:
        regs[ox][0] = [c for c in regs[ox][0] if c != x] + [c for c in regs[oy][0] if c != y] + [m]
        regs[ox][1] += regs[oy][1]
        regs[ox][2] += regs[oy][2]
        del regs[oy]
    _, cx, dx = a.circle(x)
    _, cy, dy = a.circle(y)
    circles = [c for c in a.circles if c[0] not in (x, y)] + [(m, cx ^ cy, dx + dy)]
    return make_arrangement(circles, regs)


def circle_distances(a: Arrangement, sources: Sequence[str]) -> dict:
    adj = {n: set() for n in a.names()}
    for bd, _, _ in a.regions:
        for x in bd:
            adj[x].update(y for y in bd if y != x)
    dist = {c: 0 for c in sources}
    todo = deque(sources)
    while todo:
        c = todo.popleft()
        for d in sorted(adj[c]):
            if d not in dist:
                dist[d] = dist[c] + 1
                todo.append(d)
    return dist


# --- rules --------------------------------------------------------------------


def rule_two_dot(a: Arrangement):
    for n, _, d in a.circles:
        if d >= 2:
            yield RelationInstance("two-dot", (n,), a, State.zero())
            return


def rule_trivial_circle(a: Arrangement):
    for n, _, d in a.circles:
        side = _leaf_side(a, n)
        if side is None:
            continue
        leaf, other = side
        _, g, s = a.regions[leaf]
        if g == 0 and s <= 1:
            rhs = State.zero() if d else State.of(remove_circle_into(a, n, leaf, other), 2)
            yield RelationInstance("trivial-circle", (n,), a, rhs)


def rule_separating(a: Arrangement):
    """A dotted circle cutting off genus, or several singular points."""
    for n, _, d in a.circles:
        if d != 1:
            continue
        side = _leaf_side(a, n)
        if side is None:
            continue
        leaf, other = side
        _, g, s = a.regions[leaf]
        if g >= 1:
            regs = _regions(a)
            regs[leaf][1] -= 1
            regs[other][1] += 1
            yield RelationInstance("separating-genus", (n,), a, State.of(make_arrangement(a.circles, regs)))
        if g == 0 and s >= 2:
            yield RelationInstance("separating-singular", (n,), a, State.zero())


def band_sites(a: Arrangement, x: str):
    """(region, y) pairs where a band from ``x`` to ``y`` is well defined."""
    for r in sorted(set(a.sides(x))):
        bd = list(a.regions[r][0])
        if bd.count(x) != 1:
            continue
        for y in sorted(set(bd)):
            if y != x and bd.count(y) == 1:
                yield r, y


def band_sum_relation(a: Arrangement, x: str, y: str, region: int, result_class: int | None = None) -> RelationInstance:
    """``x^p y^q + x^(p-1) y^(q+1) = 2 (x#y)^(p+q)`` for a band from ``x`` to ``y``.

    The two circles are distinct, so both sides of the annular sum are the
    single merged circle and the right side is doubled.  A supplied
    ``result_class`` must be the class sum.
    """
    if a.dots(x) < 1:
        raise SkeinError(f"circle {x} carries no dot to transport")
    cls = a.circle(x)[1] ^ a.circle(y)[1]
    if result_class is not None and result_class != cls:
        raise SkeinError(f"band sum of classes {a.circle(x)[1]} and {a.circle(y)[1]} cannot have class {result_class}")
    moved = _set_dots(a, {x: a.dots(x) - 1, y: a.dots(y) + 1})
    return RelationInstance("band-sum", (x, y, region), a, State({moved: -1, band_sum(a, x, y, region): 2}))


def rule_dot_transport(a: Arrangement):
    """Band-sum relations that move a dot strictly closer to its target.

    The target is another dotted circle if there is one, otherwise the
    circle with the least name.
    """
    if any(d >= 2 for _, _, d in a.circles):
        return
    dotted = [n for n, _, d in a.circles if d == 1]
    for x in dotted:
        others = [c for c in dotted if c != x]
        dist = circle_distances(a, others or [min(a.names())])
        for r, y in band_sites(a, x):
            if y in dist and x in dist and dist[y] < dist[x]:
                yield band_sum_relation(a, x, y, r)


CURVE_RULES = (rule_two_dot, rule_trivial_circle, rule_separating, rule_dot_transport)


def curve_closure(s: State, *, max_forms: int = 64) -> ClosureResult:
    return oracle_rewrite_closure(s, CURVE_RULES, max_forms=max_forms)


def top_level(s: State, n: int) -> State:
    """Image in G_n: drop terms with fewer than ``n`` circles."""
    return State({t: c for t, c in s.items() if t.level >= n})


def path_arrangement(length: int, dots: Sequence[int], genera: Sequence[int], *, closed: bool, cls: int = 1) -> Arrangement:
    """Circles ``c0 .. c<length>`` with consecutive ones cobounding a region.

    ``closed`` joins the ends into a cycle (all circles non-separating of
    class ``cls``); otherwise both ends cut off leaf regions and every circle
    separates.  ``genera`` gives region genera in order.
    """
    k = length + 1
    if len(dots) != k:
        raise SkeinError("one dot count per circle")
    names = [f"c{i}" for i in range(k)]
    circles = [(names[i], cls if closed else 0, d) for i, d in enumerate(dots)]
    if closed:
        if len(genera) != k:
            raise SkeinError(f"a closed path of {k} circles has {k} regions")
        regions = [([names[i], names[(i + 1) % k]], genera[i], 0) for i in range(k)]
    else:
        if len(genera) != k + 1:
            raise SkeinError(f"an open path of {k} circles has {k + 1} regions")
        regions = [([names[0]], genera[0], 0)]
        regions += [([names[i], names[i + 1]], genera[i + 1], 0) for i in range(k - 1)]
        regions += [([names[-1]], genera[k], 0)]
    return make_arrangement(circles, regions)

"""Curve-level skein module SBN(F, R) of a closed orientable surface F.

States are described by stacks of parallel circles and the complementary
regions they bound.  The diagram of a state has one vertex per region and one
edge per stack; each edge carries its Z/2 homology class (an int bitmask of
length 2g) and weight (number of circles).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations_with_replacement, permutations, product
from typing import Callable, Iterable, Sequence

from bnskein.core import SkeinError


class ClassificationError(RuntimeError):
    """A graph passed every zero test but matches no canonical shape."""


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    singular_points: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.singular_points < 0:
            raise SkeinError("genus and singular point count must be non-negative")

    @property
    def h1_size(self) -> int:
        return 4**self.genus

    @property
    def bits(self) -> int:
        return 2 * self.genus

    def check_class(self, cls: int) -> int:
        if not 0 <= cls < self.h1_size:
            raise SkeinError(f"class {cls} is not in H_1 of a genus-{self.genus} surface")
        return cls


def format_class(cls: int, bits: int) -> str:
    if bits == 0:
        return "0"
    return "".join("1" if cls >> i & 1 else "0" for i in range(bits))


def parse_class(text: str) -> int:
    text = text.strip()
    if text in ("", "0"):
        return 0
    if set(text) - {"0", "1"}:
        raise ValueError(f"class {text!r} is not a bit string")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


@dataclass(frozen=True)
class Stack:
    """``weight`` parallel homologous circles; ``dots`` lists dotted positions."""

    cls: int
    weight: int = 1
    dots: tuple = ()

    def __post_init__(self):
        if self.weight < 1:
            raise SkeinError("a stack holds at least one circle")
        object.__setattr__(self, "dots", tuple(sorted(self.dots)))
        for p in self.dots:
            if not 0 <= p < self.weight:
                raise SkeinError(f"dot position {p} outside stack of weight {self.weight}")


@dataclass(frozen=True)
class Region:
    """A complementary region: the stack ends on its boundary, its genus and
    the number of singular points it contains.  Each stack index occurs
    exactly twice over all regions; the first occurrence is the end at
    position 0, the second the end at position ``weight - 1``."""

    ends: tuple
    genus: int = 0
    singular: int = 0

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(self.ends))


@dataclass(frozen=True)
class Edge:
    cls: int
    weight: int
    ends: tuple
    tag: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ends", tuple(sorted(self.ends)))

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class SkeinGraph:
    vertices: tuple
    edges: tuple

    @property
    def total_weight(self) -> int:
        return sum(e.weight for e in self.edges)

    def incident(self, v) -> list[int]:
        """Edge indices at ``v``; a loop appears twice."""
        out = []
        for i, e in enumerate(self.edges):
            out.extend(i for end in e.ends if end == v)
        return out

    def distinct_edges(self, v) -> set[int]:
        return set(self.incident(v))

    def circles_on(self, v) -> int:
        """Distinct circles on the boundary of region ``v``."""
        n = 0
        for i in self.distinct_edges(v):
            e = self.edges[i]
            n += (1 if e.weight == 1 else 2) if e.is_loop else 1
        return n

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        adj = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = e.ends
            adj[a].add(b)
            adj[b].add(a)
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for w in adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)


# --- diagram construction ----------------------------------------------------


def stack_end_regions(stacks: Sequence[Stack], regions: Sequence[Region]) -> list[list[int]]:
    """For each stack, the regions holding its end at position 0 and at ``w-1``."""
    ends: list[list[int]] = [[] for _ in stacks]
    for r, region in enumerate(regions):
        for s in region.ends:
            if not 0 <= s < len(stacks):
                raise SkeinError(f"region {r} names unknown stack {s}")
            ends[s].append(r)
    for s, found in enumerate(ends):
        if len(found) != 2:
            raise SkeinError(f"stack {s} has {len(found)} region-boundary slots, expected 2")
    return ends


def build_graph(spec: SurfaceSpec, stacks: Sequence[Stack], regions: Sequence[Region]) -> SkeinGraph:
    ends = stack_end_regions(stacks, regions)
    edges = []
    for s, (stack, (a, b)) in enumerate(zip(stacks, ends)):
        spec.check_class(stack.cls)
        edges.append(Edge(stack.cls, stack.weight, (a, b), (s,)))
    g = SkeinGraph(tuple(range(len(regions))), tuple(edges))
    if not g.is_connected():
        raise SkeinError("regions do not form a connected surface")
    betti = len(edges) - len(regions) + 1
    genus = sum(r.genus for r in regions) + betti
    if genus != spec.genus:
        raise SkeinError(f"regions and stacks give genus {genus}, surface has genus {spec.genus}")
    if sum(r.singular for r in regions) > spec.singular_points:
        raise SkeinError("regions hold more singular points than the surface has")
    return g


def check_admissible(g: SkeinGraph) -> bool:
    """Non-loop classes at every vertex sum to zero mod 2."""
    for v in g.vertices:
        total = 0
        for i in g.incident(v):
            e = g.edges[i]
            if not e.is_loop:
                total ^= e.cls
        if total:
            return False
    return True


# --- reduction ---------------------------------------------------------------


def reducible_vertices(g: SkeinGraph) -> list:
    out = []
    for v in g.vertices:
        inc = g.incident(v)
        if len(inc) == 2 and inc[0] != inc[1]:
            out.append(v)
    return out


def merge_at(g: SkeinGraph, v) -> SkeinGraph:
    i, j = g.incident(v)
    e1, e2 = g.edges[i], g.edges[j]
    if e1.cls != e2.cls:
        raise SkeinError(f"edges meeting at divalent vertex {v} have different classes; graph is not admissible")
    a = e1.ends[0] if e1.ends[1] == v else e1.ends[1]
    b = e2.ends[0] if e2.ends[1] == v else e2.ends[1]
    merged = Edge(e1.cls, e1.weight + e2.weight, (a, b), tuple(sorted(e1.tag + e2.tag)))
    edges = [e for k, e in enumerate(g.edges) if k not in (i, j)] + [merged]
    return SkeinGraph(tuple(u for u in g.vertices if u != v), tuple(edges))


def reduce_graph(g: SkeinGraph, choose: Callable[[list], object] | None = None) -> SkeinGraph:
    """Merge the two edges at divalent vertices until none is left."""
    choose = choose or min
    while True:
        cand = reducible_vertices(g)
        if not cand:
            return g
        g = merge_at(g, choose(cand))


def is_reduced(g: SkeinGraph) -> bool:
    return not reducible_vertices(g)


def canonical_graph(g: SkeinGraph) -> tuple:
    """Relabeling-invariant key: minimum over vertex orders within degree blocks."""
    def signature(v):
        inc = g.incident(v)
        return (len(inc), sum(1 for i in set(inc) if g.edges[i].is_loop))

    verts = sorted(g.vertices, key=signature)
    blocks: list[list] = []
    for v in verts:
        if blocks and signature(blocks[-1][0]) == signature(v):
            blocks[-1].append(v)
        else:
            blocks.append([v])
    best = None
    for choice in product(*(permutations(b) for b in blocks)):
        order = [v for block in choice for v in block]
        pos = {v: k for k, v in enumerate(order)}
        key = tuple(sorted((tuple(sorted((pos[e.ends[0]], pos[e.ends[1]]))), e.cls, e.weight, e.tag) for e in g.edges))
        if best is None or key < best:
            best = key
    return (len(g.vertices), best or ())


def all_reductions(g: SkeinGraph) -> set:
    """Canonical keys of the results of every merge order."""
    results = set()
    seen = set()
    todo = [g]
    while todo:
        cur = todo.pop()
        key = canonical_graph(cur)
        if key in seen:
            continue
        seen.add(key)
        cand = reducible_vertices(cur)
        if not cand:
            results.add(key)
        for v in cand:
            todo.append(merge_at(cur, v))
    return results


# --- zero conditions and classification --------------------------------------


def zero_reason(g: SkeinGraph, n: int) -> str | None:
    """Which vanishing condition kills ``g`` in G_n, or ``None``."""
    if not is_reduced(g):
        raise SkeinError("zero test needs a reduced graph")
    if g.total_weight <= n - 1:
        return "low-weight"
    for v in g.vertices:
        inc = g.incident(v)
        if len(inc) == 1:
            return "blank-region"
    loops = [e for e in g.edges if e.is_loop]
    loop_classes = [e.cls for e in loops]
    if len(set(loop_classes)) < len(loop_classes):
        return "repeated-class"
    for v in g.vertices:
        if g.circles_on(v) > 2:
            return "trivalent"
    for e in loops:
        if e.weight > 1 and e.weight % 2:
            return "odd-loop"
    if n % 2 == 0 and any(not e.is_loop for e in g.edges):
        return "even-bar"
    return None


def is_zero_in_graded(g: SkeinGraph, n: int) -> bool:
    return zero_reason(g, n) is not None


@dataclass(frozen=True)
class DottedCanonical:
    """``sign * TypeA(e, n)`` or ``sign * TypeBC(e, f, n)``; ``kind == "0"`` is zero."""

    kind: str
    e: int = 0
    f: int = 0
    n: int = 0
    sign: int = 1
    bits: int = field(default=0, compare=False)

    @classmethod
    def zero(cls) -> "DottedCanonical":
        return cls("0", sign=0)

    def is_zero(self) -> bool:
        return self.kind == "0"

    @property
    def value(self) -> tuple:
        """Identity of the basis element, ignoring sign."""
        return (self.kind, self.e, self.f, self.n)

    def negated(self) -> "DottedCanonical":
        return self if self.is_zero() else replace(self, sign=-self.sign)

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        s = "+" if self.sign > 0 else "-"
        if self.kind == "A":
            return f"{s}TypeA[e={format_class(self.e, self.bits)}](n={self.n})"
        return f"{s}TypeBC[e={format_class(self.e, self.bits)},f={format_class(self.f, self.bits)}](n={self.n})"


def classify(g: SkeinGraph, n: int, bits: int = 0) -> DottedCanonical:
    if zero_reason(g, n) is not None:
        raise SkeinError("graph vanishes in G_n; nothing to classify")
    if g.total_weight != n:
        raise SkeinError(f"graph of weight {g.total_weight} does not lie in G_{n}")
    loops = [e for e in g.edges if e.is_loop]
    bars = [e for e in g.edges if not e.is_loop]
    if len(g.vertices) == 1 and len(loops) == 1 and not bars:
        (e,) = loops
        if not (e.weight == 1 or e.weight % 2 == 0):
            raise ClassificationError(f"single loop of weight {e.weight} survived the zero test")
        return DottedCanonical("A", e.cls, 0, n, bits=bits)
    two_loops = len(loops) == 2 and loops[0].cls != loops[1].cls
    if two_loops and len(g.vertices) == 1 and not bars:
        e, f = sorted(x.cls for x in loops)
        return DottedCanonical("BC", e, f, n, bits=bits)
    if two_loops and len(g.vertices) == 2 and len(bars) == 1 and loops[0].ends != loops[1].ends:
        e, f = sorted(x.cls for x in loops)
        return DottedCanonical("BC", e, f, n, bits=bits)
    raise ClassificationError(f"no canonical shape for reduced graph {canonical_graph(g)} at level {n}")


def graded_dimension(spec: SurfaceSpec | int, n: int, *, exclude_zero_class: bool = False) -> int:
    """Rank of G_n from the closed formulas in |H_1(F; Z/2)|."""
    if isinstance(spec, int):
        spec = SurfaceSpec(spec)
    if n <= 0:
        raise SkeinError("graded pieces are indexed by n >= 1")
    h = spec.h1_size - (1 if exclude_zero_class else 0)
    if n == 1:
        return h
    if n % 2:
        return h * (h - 1)
    return h + h * (h - 1)


# --- exhaustive enumeration ---------------------------------------------------


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def graph_shapes(max_edges: int, max_vertices: int | None = None) -> list[SkeinGraph]:
    """Connected loop-multigraphs with 1..max_edges edges, up to isomorphism.

    Classes are zero and tags record the original edge index.
    """
    shapes = {}
    for m in range(1, max_edges + 1):
        vmax = m + 1 if max_vertices is None else min(max_vertices, m + 1)
        for nv in range(1, vmax + 1):
            pairs = [(a, b) for a in range(nv) for b in range(a, nv)]
            for chosen in combinations_with_replacement(pairs, m):
                used = {x for p in chosen for x in p}
                if len(used) != nv:
                    continue
                g = SkeinGraph(tuple(range(nv)), tuple(Edge(0, 1, p) for p in chosen))
                if not g.is_connected():
                    continue
                shapes.setdefault(canonical_graph(g), g)
    return list(shapes.values())


def enumerate_graded_values(spec: SurfaceSpec | int, n: int, *, exclude_zero_class: bool = False) -> set:
    """Distinct canonical values of reduced admissible graphs of weight ``n``.

    Every connected reduced shape with every weight split is tried against
    the class-blind zero conditions; the survivors get every class assignment,
    are checked for admissibility and the class-dependent condition, then
    classified.
    """
    if isinstance(spec, int):
        spec = SurfaceSpec(spec)
    values = set()
    classes = range(spec.h1_size)
    for shape in graph_shapes(n):
        if not is_reduced(shape):
            continue
        for weights in _compositions(n, len(shape.edges)):
            g = SkeinGraph(shape.vertices, tuple(replace(e, weight=w) for e, w in zip(shape.edges, weights)))
            if zero_reason(g, n) not in (None, "repeated-class"):
                continue
            for assignment in product(classes, repeat=len(g.edges)):
                if exclude_zero_class and any(c == 0 for e, c in zip(g.edges, assignment) if e.is_loop):
                    continue
                h = SkeinGraph(g.vertices, tuple(replace(e, cls=c) for e, c in zip(g.edges, assignment)))
                if not check_admissible(h) or zero_reason(h, n) is not None:
                    continue
                values.add(classify(h, n, spec.bits).value)
    return values


# --- circles, dot transport and the full pipeline ------------------------------


def circle_adjacency(stacks: Sequence[Stack], regions: Sequence[Region]) -> dict:
    """Circles ``(stack, position)``; adjacent when they cobound a region or an
    annulus inside a stack."""
    ends = stack_end_regions(stacks, regions)
    adj: dict = {}
    for s, st in enumerate(stacks):
        for p in range(st.weight):
            adj.setdefault((s, p), set())
        for p in range(st.weight - 1):
            adj[(s, p)].add((s, p + 1))
            adj[(s, p + 1)].add((s, p))
    on_region: dict[int, set] = {r: set() for r in range(len(regions))}
    for s, (a, b) in enumerate(ends):
        on_region[a].add((s, 0))
        on_region[b].add((s, stacks[s].weight - 1))
    for circles in on_region.values():
        for c1 in circles:
            for c2 in circles:
                if c1 != c2:
                    adj[c1].add(c2)
    return adj


def jump_parity(adj: dict, start) -> dict | None:
    """Sign exponent (mod 2) of moving the dot from ``start`` to each circle;
    ``None`` when an odd cycle makes the state equal to its own negative."""
    parity = {start: 0}
    todo = deque([start])
    while todo:
        c = todo.popleft()
        for d in adj[c]:
            if d not in parity:
                parity[d] = parity[c] ^ 1
                todo.append(d)
            elif parity[d] == parity[c]:
                return None
    return parity


def remove_trivial_stacks(stacks: list[Stack], regions: list[Region]) -> tuple[Fraction, list[Stack], list[Region]]:
    """Delete stacks cutting off a disk with at most one singular point.

    Each white trivial circle contributes a factor 2; a dotted one kills the
    state (returned coefficient 0).
    """
    coeff = Fraction(1)
    stacks, regions = list(stacks), list(regions)
    while True:
        ends = stack_end_regions(stacks, regions)
        hit = None
        for s, (a, b) in enumerate(ends):
            for r, other in ((a, b), (b, a)):
                reg = regions[r]
                if r != other and len(reg.ends) == 1 and reg.genus == 0 and reg.singular <= 1:
                    hit = (s, r, other)
                    break
            if hit:
                break
        if hit is None:
            return coeff, stacks, regions
        s, r, other = hit
        if stacks[s].dots:
            return Fraction(0), stacks, regions
        coeff *= 2 ** stacks[s].weight
        merged_other = list(regions[other].ends)
        merged_other.remove(s)
        new_regions = []
        for k, reg in enumerate(regions):
            if k == r:
                continue
            if k == other:
                reg = Region(tuple(merged_other), reg.genus, reg.singular + regions[r].singular)
            new_regions.append(Region(tuple(x - (x > s) for x in reg.ends), reg.genus, reg.singular))
        stacks = stacks[:s] + stacks[s + 1:]
        regions = new_regions


@dataclass(frozen=True)
class NormalizeResult:
    canonical: DottedCanonical
    coefficient: Fraction
    reason: str | None = None

    @property
    def signed_coefficient(self) -> Fraction:
        if self.canonical.is_zero():
            return Fraction(0)
        return self.coefficient * self.canonical.sign

    def __str__(self) -> str:
        c = self.signed_coefficient
        if c == 0:
            return "0"
        body = str(replace(self.canonical, sign=1))[1:]
        if c == 1:
            return body
        if c == -1:
            return f"-{body}"
        return f"{c}*{body}"


def dotted_normalize(spec: SurfaceSpec, stacks: Sequence[Stack], regions: Sequence[Region]) -> NormalizeResult:
    """Canonical form in G_n (n = number of circles) of a dotted state.

    Pipeline: trivial circles, multiple dots, separating circles with a
    blank side, dot transport to the canonical circle, diagram, reduction,
    zero test, classification.
    """
    build_graph(spec, stacks, regions)
    c, stacks, regions = remove_trivial_stacks(list(stacks), list(regions))
    if c == 0:
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), "trivial-dotted")
    dotted = [(s, p) for s, st in enumerate(stacks) for p in st.dots]
    if not dotted:
        raise SkeinError("dotted_normalize needs a state with at least one dot")
    if len(dotted) != len(set(dotted)):
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), "two-dots")
    if len(dotted) > 1:
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), "dot-path")
    (ds, dp), = dotted
    ends = stack_end_regions(stacks, regions)
    if stacks[ds].cls == 0 and any(len(regions[r].ends) == 1 for r in ends[ds]):
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), "separating")
    adj = circle_adjacency(stacks, regions)
    parity = jump_parity(adj, (ds, dp))
    if parity is None:
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), "odd-jump-cycle")
    target = min(adj, key=lambda cp: (stacks[cp[0]].cls, cp[0], cp[1]))
    sign = -1 if parity[target] else 1
    n = sum(st.weight for st in stacks)
    g = reduce_graph(build_graph(SurfaceSpec(spec.genus, spec.singular_points), stacks, regions))
    if not check_admissible(g):
        raise SkeinError("state diagram is not admissible")
    reason = zero_reason(g, n)
    if reason is not None:
        return NormalizeResult(DottedCanonical.zero(), Fraction(0), reason)
    canon = classify(g, n, spec.bits)
    return NormalizeResult(replace(canon, sign=sign), c)

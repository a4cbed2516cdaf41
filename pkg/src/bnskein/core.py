"""Marked-surface terms, formal linear combinations and the Bar-Natan moves.

A term is a canonically sorted tuple of :class:`SurfaceComponent`; a
:class:`State` is an immutable map from terms to nonzero coefficients.  The
topology (which components are parallel, what a compression produces) is
supplied by the caller and only checked through Euler characteristic and dot
bookkeeping.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Iterator, Mapping, Sequence

from bnskein.ring import QQ, Number, Ring, coeff, format_coeff, parse_coeff

TRIVIAL = "trivial"

_LABEL_RE = re.compile(r"^[A-Za-z0-9_#.+\-()/=|<>]+$")


class SkeinError(ValueError):
    """A move was requested whose preconditions do not hold."""


class Inconclusive(RuntimeError):
    """The rewrite oracle hit its bound before every branch terminated."""


@dataclass(frozen=True, order=True)
class SurfaceComponent:
    """One connected component: isotopy label, genus and number of dots."""

    label: str
    genus: int = 0
    dots: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.dots < 0:
            raise SkeinError(f"negative genus or dots in {self!r}")
        if not _LABEL_RE.match(self.label):
            raise SkeinError(f"label {self.label!r} has characters reserved by the text format")

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus

    def with_dots(self, dots: int) -> "SurfaceComponent":
        return SurfaceComponent(self.label, self.genus, dots)

    def annihilable(self) -> bool:
        return self.dots >= 2

    def __str__(self) -> str:
        return f"{self.label}:{self.genus}:{self.dots}"


def comp(label: str, genus: int = 0, dots: int = 0) -> SurfaceComponent:
    return SurfaceComponent(label, genus, dots)


def term(*components: SurfaceComponent) -> tuple:
    """Canonical term (sorted multiset) from components."""
    return tuple(sorted(components))


EMPTY = ()


def replace_components(t: tuple, indices: Sequence[int], new: Iterable[SurfaceComponent]) -> tuple:
    drop = set(indices)
    if any(i < 0 or i >= len(t) for i in drop):
        raise SkeinError(f"component index out of range for term {format_term(t)}")
    kept = [c for i, c in enumerate(t) if i not in drop]
    return tuple(sorted(kept + list(new)))


class State:
    """Formal R-linear combination of terms.

    Terms are any hashable, mutually comparable keys; the surface engine uses
    sorted tuples of :class:`SurfaceComponent`, the curve engine its own keys.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Hashable, Number] | Iterable[tuple[Hashable, Number]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for t, c in items:
            acc[t] = acc.get(t, 0) + coeff(c)
        self._terms = {t: c for t, c in acc.items() if c != 0}
        self._hash = None

    @classmethod
    def of(cls, t: Hashable, c: Number = 1) -> "State":
        return cls({t: c})

    @classmethod
    def zero(cls) -> "State":
        return cls()

    def items(self):
        return self._terms.items()

    def terms(self):
        return self._terms.keys()

    def coefficient(self, t: Hashable) -> Fraction:
        return self._terms.get(t, Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, State):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "State") -> "State":
        return state_add(self, other)

    def __neg__(self) -> "State":
        return self.scale(-1)

    def __sub__(self, other: "State") -> "State":
        return state_add(self, other.scale(-1))

    def scale(self, c: Number) -> "State":
        c = coeff(c)
        return State({t: c * v for t, v in self._terms.items()})

    def map_terms(self, fn: Callable[[Hashable], "State"]) -> "State":
        """Linear extension of ``fn`` applied term by term."""
        out = State()
        for t, c in self._terms.items():
            out = out + fn(t).scale(c)
        return out

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: _sort_key(kv[0]))

    def __repr__(self) -> str:
        return f"State({format_state(self)!r})"

    def __str__(self) -> str:
        return format_state(self)


def _sort_key(t):
    if isinstance(t, tuple) and all(isinstance(c, SurfaceComponent) for c in t):
        return (len(t), t)
    return (0, t)


def state_add(a: State, b: State) -> State:
    out = dict(a.items())
    for t, c in b.items():
        out[t] = out.get(t, 0) + c
    return State(out)


def check_ring(s: State, ring: Ring = QQ) -> State:
    for _, c in s.items():
        ring(c)
    return s


# --- Definition 1 moves -----------------------------------------------------


def apply_two_dot_rule(s: State) -> State:
    """Delete every term that has a component with two or more dots."""
    return State({t: c for t, c in s.items() if not any(x.dots >= 2 for x in t)})


def _require_term(s: State, t: tuple) -> Fraction:
    c = s.coefficient(t)
    if c == 0:
        raise SkeinError(f"term {format_term(t)} does not occur in the state")
    return c


def neck_cut_replacement(t: tuple, index: int, outcome: Sequence[SurfaceComponent]) -> State:
    """Expansion of the single term ``t`` after compressing component ``index``.

    ``outcome`` lists the one or two components left after compression, carrying
    the original dots.  The compression adds one dot on either side of the cut;
    if both sides lie on the same component that gives twice one term.
    """
    if not 0 <= index < len(t):
        raise SkeinError("component index out of range")
    old = t[index]
    outcome = list(outcome)
    if len(outcome) not in (1, 2):
        raise SkeinError("a compression yields one or two components")
    if sum(c.euler for c in outcome) != old.euler + 2:
        raise SkeinError(
            f"compressing {old} must raise Euler characteristic by 2, "
            f"outcome {[str(c) for c in outcome]} does not"
        )
    if sum(c.dots for c in outcome) != old.dots:
        raise SkeinError("compression outcome must carry exactly the original dots")
    if len(outcome) == 1:
        (a,) = outcome
        return State.of(replace_components(t, [index], [a.with_dots(a.dots + 1)]), 2)
    a, b = outcome
    return State(
        [
            (replace_components(t, [index], [a.with_dots(a.dots + 1), b]), 1),
            (replace_components(t, [index], [a, b.with_dots(b.dots + 1)]), 1),
        ]
    )


def neck_cut(s: State, t: tuple, index: int, outcome: Sequence[SurfaceComponent]) -> State:
    c = _require_term(s, t)
    return s - State.of(t, c) + neck_cut_replacement(t, index, outcome).scale(c)


def handle_tube_rule(s: State, t: tuple, index: int, *, reverse: bool = False, ring: Ring = QQ) -> State:
    """``2 * F(g, d) = F(g + 1, d - 1)`` for a dotted component, either direction.

    Forward turns ``c * F(g, d)`` into ``c/2 * F(g+1, d-1)``; ``reverse`` turns
    ``c * F(g, d)`` into ``2c * F(g-1, d+1)`` and needs ``g >= 1``.
    """
    c = _require_term(s, t)
    x = t[index]
    if reverse:
        if x.genus < 1:
            raise SkeinError("reverse handle rule needs genus >= 1")
        new = SurfaceComponent(x.label, x.genus - 1, x.dots + 1)
        out = s - State.of(t, c) + State.of(replace_components(t, [index], [new]), 2 * c)
        return out
    if x.dots < 1:
        raise SkeinError("handle rule needs a dotted component")
    if x.dots >= 2:
        # two-dot relation wins: the term is already zero
        return s - State.of(t, c)
    new = SurfaceComponent(x.label, x.genus + 1, x.dots - 1)
    return s - State.of(t, c) + State.of(replace_components(t, [index], [new]), c * ring.half())


def remove_trivial_spheres(s: State, label: str = TRIVIAL) -> State:
    """White sphere bounding a ball kills the term; a dotted one is deleted."""

    def one(t):
        kept = []
        for x in t:
            if x.label == label and x.genus == 0:
                if x.dots == 0:
                    return State()
                if x.dots == 1:
                    continue
            kept.append(x)
        return State.of(tuple(kept))

    return s.map_terms(one)


def _check_parallel(t: tuple, i0: int, i1: int):
    if i0 == i1 or not (0 <= i0 < len(t) and 0 <= i1 < len(t)):
        raise SkeinError("parallel components must be two distinct components of the term")
    s0, s1 = t[i0], t[i1]
    if s0.genus != s1.genus:
        raise SkeinError("parallel components have equal genus")
    return s0, s1


def parallel_dot_shift(s: State, t: tuple, i0: int, i1: int, *, target: tuple | None = None) -> State:
    """Move the dot from ``t[i0]`` to the parallel white ``t[i1]``, negating.

    ``target`` optionally names the term the shifted surface is isotopic to
    (the caller knows the isotopy classes; labels alone may not).
    """
    c = _require_term(s, t)
    s0, s1 = _check_parallel(t, i0, i1)
    if s0.dots < 1:
        raise SkeinError("source of a dot shift must be dotted")
    if s1.dots != 0:
        raise SkeinError("target of a dot shift must be white")
    moved = target if target is not None else replace_components(
        t, [i0, i1], [s0.with_dots(s0.dots - 1), s1.with_dots(1)]
    )
    return s - State.of(t, c) + State.of(moved, -c)


def parallel_dotted_pair_delete(s: State, t: tuple, i0: int, i1: int) -> State:
    """Both parallel components dotted: spheres disappear, higher genus kills."""
    c = _require_term(s, t)
    s0, s1 = _check_parallel(t, i0, i1)
    if s0.dots != 1 or s1.dots != 1:
        raise SkeinError("pair deletion needs both parallel components singly dotted")
    if s0.genus > 0:
        return s - State.of(t, c)
    return s - State.of(t, c) + State.of(replace_components(t, [i0, i1], []), c)


# --- filtration ---------------------------------------------------------------


def level(t: tuple) -> int:
    return len(t)


def graded_reduce(s: State, m: int, *, level_of: Callable[[Hashable], int] = level) -> State:
    """Image of ``s`` in ``G_m = F_m / F_{m-1}``."""
    out = {}
    for t, c in s.items():
        lv = level_of(t)
        if lv > m:
            raise SkeinError(f"term of level {lv} does not lie in F_{m}")
        if lv == m:
            out[t] = c
    return State(out)


# --- rewrite oracle -----------------------------------------------------------


@dataclass(frozen=True)
class RelationInstance:
    """``lhs`` (one term) may be replaced by ``rhs``; ``lhs - rhs`` is a relation."""

    kind: str
    site: tuple
    lhs: Hashable
    rhs: State = field(compare=False)

    def relation(self) -> State:
        return State.of(self.lhs) - self.rhs


Rule = Callable[[Hashable], Iterable[RelationInstance]]


@dataclass
class ClosureResult:
    terminals: frozenset
    explored: int
    depth: int

    @property
    def confluent(self) -> bool:
        return len(self.terminals) == 1

    def unique(self) -> State:
        if not self.confluent:
            raise Inconclusive(f"{len(self.terminals)} distinct terminal states")
        (only,) = self.terminals
        return only


def apply_instance(s: State, inst: RelationInstance) -> State:
    c = _require_term(s, inst.lhs)
    return s - State.of(inst.lhs, c) + inst.rhs.scale(c)


def oracle_rewrite_closure(
    s: State,
    rules: Sequence[Rule],
    bound: int = 64,
    max_states: int = 200_000,
    max_forms: int = 64,
) -> ClosureResult:
    """Every terminal state reachable from ``s`` by any choice of rule instance.

    Rewriting is explored term by term and memoized: the normal forms of a
    term are the linear combinations of normal forms of each instance's
    right-hand side, so independent terms are not interleaved.  A rewrite
    chain longer than ``bound``, more than ``max_states`` distinct terms or
    more than ``max_forms`` normal forms raises :class:`Inconclusive`
    rather than truncating.
    """
    memo: dict = {}
    active: set = set()
    deepest = 0

    def forms(t, depth: int) -> frozenset:
        nonlocal deepest
        if t in memo:
            return memo[t]
        if t in active:
            raise Inconclusive(f"rewriting cycles through {t}")
        if depth > bound:
            raise Inconclusive(f"term still reducible after {bound} steps: {t}")
        if len(memo) > max_states:
            raise Inconclusive(f"more than {max_states} terms reachable")
        deepest = max(deepest, depth)
        active.add(t)
        insts = [inst for rule in rules for inst in rule(t)]
        if not insts:
            out = frozenset({State.of(t)})
        else:
            acc: set = set()
            for inst in insts:
                partial = {State.zero()}
                for u, c in inst.rhs.items():
                    partial = {p + f.scale(c) for p in partial for f in forms(u, depth + 1)}
                    _cap(partial, max_forms)
                acc |= partial
                _cap(acc, max_forms)
            out = frozenset(acc)
        active.discard(t)
        memo[t] = out
        return out

    total = {State.zero()}
    for t, c in s.items():
        total = {p + f.scale(c) for p in total for f in forms(t, 0)}
        _cap(total, max_forms)
    return ClosureResult(frozenset(total), len(memo), deepest)


def _cap(forms: set, limit: int):
    if len(forms) > limit:
        raise Inconclusive(f"more than {limit} distinct normal forms")


def oracle_state_bfs(
    s: State,
    rules: Sequence[Rule],
    bound: int = 64,
    max_states: int = 200_000,
) -> ClosureResult:
    """Breadth-first search over whole states, up to ``bound`` rule applications.

    Slow on sums of independent terms, since it walks every interleaving;
    kept as a cross-check for :func:`oracle_rewrite_closure`.  Returns the
    set of terminal states (no rule applies to any term).  If some
    branch is still live at depth ``bound`` or the search grows past
    ``max_states`` the result is :class:`Inconclusive` rather than truncated.
    """
    cache: dict = {}

    def instances(t):
        if t not in cache:
            cache[t] = [inst for rule in rules for inst in rule(t)]
        return cache[t]

    seen = {s: 0}
    queue = deque([s])
    terminals = set()
    deepest = 0
    while queue:
        cur = queue.popleft()
        d = seen[cur]
        succ = [apply_instance(cur, inst) for t in cur.terms() for inst in instances(t)]
        if not succ:
            terminals.add(cur)
            continue
        if d >= bound:
            raise Inconclusive(f"state still reducible after {bound} steps: {format_state(cur)}")
        for nxt in succ:
            if nxt not in seen:
                seen[nxt] = d + 1
                deepest = max(deepest, d + 1)
                if len(seen) > max_states:
                    raise Inconclusive(f"more than {max_states} states reachable")
                queue.append(nxt)
    return ClosureResult(frozenset(terminals), len(seen), deepest)


# --- text format --------------------------------------------------------------


def format_term(t: tuple) -> str:
    return "[" + ", ".join(str(x) for x in sorted(t)) + "]"


def format_state(s: State) -> str:
    """One ``COEFF * [label:genus:dots, ...]`` line per term; ``0`` if empty."""
    if s.is_zero():
        return "0"
    lines = []
    for t, c in s.sorted_items():
        lines.append(f"{format_coeff(c)} * {format_term(t) if isinstance(t, tuple) else t}")
    return "\n".join(lines)


_LINE_RE = re.compile(r"^\s*(?P<c>[-+]?\d+(?:/\d+)?)\s*\*\s*\[(?P<body>[^\[\]]*)\]\s*$")


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def parse_component(text: str) -> SurfaceComponent:
    parts = text.strip().split(":")
    if len(parts) != 3:
        raise ValueError(f"component {text!r} is not label:genus:dots")
    label, g, d = parts
    if not g.isdigit() or not d.isdigit():
        raise ValueError(f"genus and dots must be non-negative integers in {text!r}")
    return SurfaceComponent(label, int(g), int(d))


def parse_state(text: str) -> State:
    items = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if line.strip() == "0":
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise ParseError(lineno, f"expected 'COEFF * [components]', got {line!r}")
        try:
            c = parse_coeff(m.group("c"))
            body = m.group("body").strip()
            comps = [parse_component(p) for p in body.split(",")] if body else []
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(lineno, str(exc)) from None
        items.append((term(*comps), c))
    return State(items)


def parse_state_file(path) -> State:
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh.read())

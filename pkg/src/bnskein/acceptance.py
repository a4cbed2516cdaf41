"""Executable acceptance properties, shared by ``bnskein selftest`` and the test suite."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Callable

from bnskein.core import (
    EMPTY,
    TRIVIAL,
    Inconclusive,
    State,
    comp,
    format_state,
    oracle_rewrite_closure,
    parse_state,
    term,
)
from bnskein.evaluators import (
    Canonical,
    S1xS2State,
    T3State,
    eval_s3,
    functional_E,
    normalize_s1xs2,
    normalize_t3,
    primitive_direction,
)
from bnskein.mbn import (
    MbnComponent,
    MbnElement,
    NormalizationConstants,
    check_normalization,
    enumerate_normalization_families,
    mbn_evaluate,
    mbn_neck_cut,
)
from bnskein.models import ESSENTIAL_SPHERES, S3_RULES, ParallelFamily, family_rules, family_term, t3_family
from bnskein.sbn import (
    Edge,
    Region,
    SkeinGraph,
    Stack,
    SurfaceSpec,
    all_reductions,
    canonical_graph,
    check_admissible,
    dotted_normalize,
    enumerate_graded_values,
    graded_dimension,
    graph_shapes,
    reduce_graph,
)
from bnskein.sbn_oracle import arrangement_from_stacks, band_sum_relation, curve_closure, path_arrangement
from bnskein.seifert import HorizontalClass, HorizontalState, normalize_horizontal, vertical_lift_consistency


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] criterion {self.number}: {self.title} ({self.detail})"


# --- shared helpers ------------------------------------------------------------


def canonical_to_state(c: Canonical, family: ParallelFamily) -> State:
    """Surface-term image of a family normal form."""
    if c.is_zero():
        return State.zero()
    kind = c.basis[0]
    if kind == "empty":
        t = EMPTY
    elif kind in ("z", "T", "f"):
        t = family_term(family, [0] * c.basis[-1])
    elif kind in ("e0", "dT", "d"):
        t = family_term(family, [1])
    else:
        raise ValueError(f"no surface term for basis {c.basis}")
    return State.of(t, c.coefficient)


def dot_multisets(k: int, max_dots: int):
    for n in range(max_dots + 1):
        for combo in combinations_with_replacement(range(k), n):
            yield combo


def pattern_of(k: int, dots) -> list[int]:
    pattern = [0] * k
    for i in dots:
        pattern[i] += 1
    return pattern


def _family_oracle(family: ParallelFamily, k: int, dots, extras=()) -> State:
    s = State.of(family_term(family, pattern_of(k, dots), extras))
    return oracle_rewrite_closure(s, family_rules(family)).unique()


# --- criteria --------------------------------------------------------------------


def criterion_1() -> CriterionResult:
    table = {
        (0, 0): 0, (0, 1): 1, (0, 2): 0, (1, 0): 2, (1, 1): 0, (2, 0): 0, (3, 2): 0,
    }
    fails = [gd for gd, v in table.items() if eval_s3([gd]) != v]
    checked = 0
    for g in range(4):
        for d in range(4):
            res = oracle_rewrite_closure(State.of(term(comp(TRIVIAL, g, d))), S3_RULES)
            checked += 1
            if not res.confluent or res.unique() != State.of(EMPTY, eval_s3([(g, d)])):
                fails.append((g, d))
    return CriterionResult(1, "S3 evaluation table and oracle", not fails, f"{checked} oracle cases, mismatches {fails}")


def _random_family_instance(rng: random.Random, family: ParallelFamily):
    """A random relation instance applicable to a random family term."""
    rules = family_rules(family)
    while True:
        k = rng.randint(1, 5)
        dots = [rng.choice((0, 0, 1)) for _ in range(k)]
        extras = [(rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(0, 2))]
        t = family_term(family, dots, extras)
        insts = [i for r in rules for i in r(t)]
        if insts:
            return rng.choice(insts)


def criterion_2(seed: int = 2) -> CriterionResult:
    mismatches = []
    checked = 0
    for k in range(6):
        for dots in dot_multisets(k, 4):
            checked += 1
            want = canonical_to_state(normalize_s1xs2(S1xS2State(k, dots)), ESSENTIAL_SPHERES)
            res = oracle_rewrite_closure(State.of(family_term(ESSENTIAL_SPHERES, pattern_of(k, dots))), family_rules(ESSENTIAL_SPHERES))
            if not res.confluent or res.unique() != want:
                mismatches.append((k, dots, len(res.terminals)))
    e_ok = functional_E(S1xS2State(1, (0,))) == 1 and all(functional_E(S1xS2State(k)) == 0 for k in range(6))
    rng = random.Random(seed)
    e_fail = 0
    for _ in range(200):
        inst = _random_family_instance(rng, ESSENTIAL_SPHERES)
        e_fail += functional_E(inst.relation()) != 0
    passed = not mismatches and e_ok and not e_fail
    detail = f"{checked} states, {len(mismatches)} oracle disagreements {mismatches[:4]}; E basis ok={e_ok}; E nonzero on {e_fail}/200 relations"
    return CriterionResult(2, "S1xS2 basis against the oracle, functional E", passed, detail)


def _random_s3_state(rng: random.Random) -> State:
    terms = {}
    for _ in range(rng.randint(1, 3)):
        comps = [comp(TRIVIAL, rng.randint(0, 2), rng.randint(0, 2)) for _ in range(rng.randint(1, 2))]
        terms[term(*comps)] = rng.choice((1, -1, 2, Fraction(1, 2)))
    return State(terms)


def _random_family_state(rng: random.Random, family: ParallelFamily) -> State:
    k = rng.randint(0, 4)
    dots = [rng.choice((0, 0, 1)) for _ in range(k)]
    extras = [(rng.randint(0, 1), rng.randint(0, 1)) for _ in range(rng.randint(0, 1))]
    return State.of(family_term(family, dots, extras))


def _random_path(rng: random.Random):
    closed = rng.random() < 0.5
    length = rng.randint(0, 4)
    k = length + 1
    dots = [rng.choice((0, 0, 1)) for _ in range(k)]
    if closed:
        genera = [rng.randint(0, 1) for _ in range(k)]
    else:
        genera = [rng.randint(1, 2)] + [rng.randint(0, 1) for _ in range(k - 1)] + [rng.randint(1, 2)]
    return path_arrangement(length, dots, genera, closed=closed)


def criterion_3(seed: int = 3) -> CriterionResult:
    rng = random.Random(seed)
    split = {}
    t3_dirs = [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 3), (2, -1, 1)]
    for name in ("S3", "S1xS2", "T3", "SBN paths"):
        bad = 0
        for _ in range(100):
            try:
                if name == "S3":
                    res = oracle_rewrite_closure(_random_s3_state(rng), S3_RULES)
                elif name == "S1xS2":
                    res = oracle_rewrite_closure(_random_family_state(rng, ESSENTIAL_SPHERES), family_rules(ESSENTIAL_SPHERES))
                elif name == "T3":
                    fam = t3_family(primitive_direction(rng.choice(t3_dirs)))
                    res = oracle_rewrite_closure(_random_family_state(rng, fam), family_rules(fam))
                else:
                    res = curve_closure(State.of(_random_path(rng)))
            except Inconclusive:
                bad += 1
                continue
            bad += not res.confluent
        split[name] = bad
    return CriterionResult(3, "oracle confluence on random states", not any(split.values()), f"non-confluent per model {split}")


GRID = [Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(-1, 2), Fraction(1, 4), Fraction(-1, 4), Fraction(2), Fraction(-2)]


def criterion_4() -> CriterionResult:
    families = enumerate_normalization_families()
    wrong = []
    solutions = 0
    for x, y, z in product(GRID, repeat=3):
        c = NormalizationConstants(x, y, z)
        ok = check_normalization(c)
        solutions += ok
        if ok != any(f.contains(c) for f in families):
            wrong.append((x, y, z))
    has_sample = check_normalization(NormalizationConstants.of(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    passed = not wrong and has_sample
    return CriterionResult(4, "normalization families on the grid", passed, f"{len(GRID) ** 3} points, {solutions} solutions, {len(wrong)} misclassified")


def _random_mbn_component(rng: random.Random, b: int) -> MbnComponent:
    return MbnComponent(rng.choice((2, 0, -2, -4)), rng.randint(0, 2), rng.randrange(1 << b))


def criterion_5(seed: int = 5) -> CriterionResult:
    rng = random.Random(seed)
    fails = {"multiplicative": 0, "dot": 0, "neck-cut": 0}
    x = MbnElement.basis
    for _ in range(200):
        b = rng.randint(0, 3)
        comps = [_random_mbn_component(rng, b) for _ in range(rng.randint(1, 4))]
        cut = rng.randint(0, len(comps))
        lhs = mbn_evaluate(comps, b)
        if lhs != mbn_evaluate(comps[:cut], b) * mbn_evaluate(comps[cut:], b):
            fails["multiplicative"] += 1
        i = rng.randrange(len(comps))
        dotted = comps[:i] + [MbnComponent(comps[i].euler, comps[i].dots + 1, comps[i].cls)] + comps[i + 1:]
        if mbn_evaluate(dotted, b) != lhs * x(b, 0, 1):
            fails["dot"] += 1
        handles = [j for j, c in enumerate(comps) if c.euler <= 0]
        if handles:
            j = rng.choice(handles)
            c = comps[j]
            if rng.random() < 0.5:
                outcome = [MbnComponent(c.euler + 2, c.dots + 1, c.cls)]
            else:
                e1 = rng.choice([e for e in (2, 0, -2, -4) if e <= 2 and c.euler + 2 - e <= 2])
                h1 = rng.randrange(1 << b)
                d1 = rng.randint(0, 1)
                outcome = [MbnComponent(e1, c.dots * d1 + d1, h1), MbnComponent(c.euler + 2 - e1, c.dots * (1 - d1) + 1 - d1, c.cls ^ h1)]
                outcome = [MbnComponent(o.euler, o.dots, o.cls) for o in outcome]
                extra = c.dots + 1 - sum(o.dots for o in outcome)
                outcome[0] = MbnComponent(outcome[0].euler, outcome[0].dots + extra, outcome[0].cls)
            if mbn_evaluate(mbn_neck_cut(comps, j, outcome), b) != lhs:
                fails["neck-cut"] += 1
    return CriterionResult(5, "MBN evaluation properties", not any(fails.values()), f"200 samples, failures {fails}")


def criterion_6() -> CriterionResult:
    expected = {(1, 1): 4, (1, 2): 16, (1, 3): 12, (2, 1): 16, (2, 3): 240, (2, 2): 256}
    formula_ok = all(graded_dimension(g, n) == v for (g, n), v in expected.items())
    mismatches = []
    for g in (0, 1, 2):
        for n in range(1, 5):
            for excl in (False, True):
                counted = len(enumerate_graded_values(g, n, exclude_zero_class=excl))
                formula = graded_dimension(g, n, exclude_zero_class=excl)
                if counted != formula:
                    mismatches.append(f"g={g} n={n}{' excl' if excl else ''}: formula {formula} enumerated {counted}")
    passed = formula_ok and not mismatches
    detail = f"formula values ok={formula_ok}; {len(mismatches)} of 24 counts differ: " + "; ".join(mismatches[:6])
    return CriterionResult(6, "SBN graded dimensions", passed, detail)


def _path_stacks(length: int, dots, genera, closed: bool, cls: int = 1):
    k = length + 1
    if closed:
        stacks = [Stack(cls, 1, (0,) * d) for d in dots]
        regions = [Region((i, (i + 1) % k), genera[i]) if k > 1 else Region((0, 0), genera[0]) for i in range(k)]
        genus = sum(genera) + 1
    else:
        stacks = [Stack(0, 1, (0,) * d) for d in dots]
        regions = [Region((0,), genera[0])] + [Region((i, i + 1), genera[i + 1]) for i in range(k - 1)] + [Region((k - 1,), genera[k])]
        genus = sum(genera)
    return SurfaceSpec(genus), stacks, regions


def _band_flip(one, two, regions, s: int, p: int) -> bool:
    """Across the blank annulus between positions p and p+1 of stack s the
    band-sum relation reads ``one = -two + 2 M`` and ``M`` closes to zero."""
    a, b = arrangement_from_stacks(one, regions), arrangement_from_stacks(two, regions)
    x, y = f"s{s}.{p}", f"s{s}.{p + 1}"
    r = next(i for i, (bd, g, sing) in enumerate(a.regions) if bd == tuple(sorted((x, y))) and g == 0 and sing == 0)
    rhs = band_sum_relation(a, x, y, r).rhs
    if rhs.coefficient(b) != -1 or len(rhs) != 2:
        return False
    (m,) = [t for t in rhs.terms() if t != b]
    return m.level == a.level - 1 and curve_closure(State.of(m)).terminals == {State.zero()}


def criterion_7() -> CriterionResult:
    fails = {"separating": 0, "dot-path": 0, "sign-flip": 0}
    checks = {"separating": 0, "dot-path": 0, "sign-flip": 0}
    for g1 in (1, 2):
        for g2 in (1, 2):
            spec = SurfaceSpec(g1 + g2)
            stacks, regions = [Stack(0, 1, (0,))], [Region((0,), g1), Region((0,), g2)]
            checks["separating"] += 1
            a = arrangement_from_stacks(stacks, regions)
            if not dotted_normalize(spec, stacks, regions).canonical.is_zero() or curve_closure(State.of(a)).terminals != {State.zero()}:
                fails["separating"] += 1
    for closed in (True, False):
        for length in range(1, 5):
            k = length + 1
            for dots in product((0, 1), repeat=k):
                if sum(dots) < 2:
                    continue
                genera = [0] * k if closed else [1] + [0] * (k - 1) + [1]
                spec, stacks, regions = _path_stacks(length, dots, genera, closed)
                checks["dot-path"] += 1
                arr = path_arrangement(length, dots, genera, closed=closed)
                if not dotted_normalize(spec, stacks, regions).canonical.is_zero() or curve_closure(State.of(arr)).terminals != {State.zero()}:
                    fails["dot-path"] += 1
    samples = []
    for e in (1, 2, 3):
        for w in (2, 3, 4):
            samples.append((SurfaceSpec(1), [Stack(e, w)], [Region((0, 0))]))
    samples.append((SurfaceSpec(2), [Stack(1, 2), Stack(2, 1)], [Region((0, 0, 1, 1))]))
    samples.append((SurfaceSpec(2), [Stack(1, 1), Stack(2, 1), Stack(0, 3)], [Region((0, 0, 2)), Region((2, 1, 1))]))
    for spec, stacks, regions in samples:
        for s, st in enumerate(stacks):
            for p in range(st.weight - 1):
                one = [Stack(x.cls, x.weight, (p,) if i == s else ()) for i, x in enumerate(stacks)]
                two = [Stack(x.cls, x.weight, (p + 1,) if i == s else ()) for i, x in enumerate(stacks)]
                checks["sign-flip"] += 1
                r1 = dotted_normalize(spec, one, regions)
                r2 = dotted_normalize(spec, two, regions)
                if r1.signed_coefficient != -r2.signed_coefficient or r1.canonical.value != r2.canonical.value or not _band_flip(one, two, regions, s, p):
                    fails["sign-flip"] += 1
    return CriterionResult(7, "SBN vanishing lemmas", not any(fails.values()), f"checks {checks}, failures {fails}")


def criterion_8() -> CriterionResult:
    shapes = graph_shapes(6)
    bad = 0
    for shape in shapes:
        g = SkeinGraph(shape.vertices, tuple(Edge(0, 1, e.ends, (i,)) for i, e in enumerate(shape.edges)))
        once = reduce_graph(g)
        if len(all_reductions(g)) != 1 or canonical_graph(reduce_graph(once)) != canonical_graph(once):
            bad += 1
    concrete = 0
    for genus, max_edges in ((1, 4), (2, 3)):
        classes = range(4**genus)
        for shape in graph_shapes(max_edges):
            for assignment in product(classes, repeat=len(shape.edges)):
                g = SkeinGraph(shape.vertices, tuple(Edge(c, 1, e.ends) for e, c in zip(shape.edges, assignment)))
                if not check_admissible(g):
                    continue
                concrete += 1
                red = reduce_graph(g)
                if len(all_reductions(g)) != 1 or not check_admissible(red) or reduce_graph(red) != red:
                    bad += 1
    return CriterionResult(8, "reduce_graph idempotent and order independent", bad == 0, f"{len(shapes)} shapes with <= 6 edges (tagged), {concrete} class-labelled graphs, {bad} failures")


def _shape(c: Canonical) -> tuple:
    """Normal form with the family name forgotten: white power or dotted."""
    if c.is_zero():
        return (0,)
    kind = c.basis[0]
    if kind == "empty":
        return (c.coefficient, "white", 0)
    if kind in ("z", "T", "f"):
        return (c.coefficient, "white", c.basis[-1])
    return (c.coefficient, "dotted")


def criterion_9() -> CriterionResult:
    sphere_bad = torus_bad = checked = 0
    f0 = HorizontalClass("f", 1, 0)
    f1 = HorizontalClass("f", 1, 1)
    for k in range(5):
        for dots in dot_multisets(k, 3):
            checked += 1
            h0 = normalize_horizontal(HorizontalState(f0, k, dots))
            sphere_bad += _shape(h0) != _shape(normalize_s1xs2(S1xS2State(k, dots)))
            h1 = normalize_horizontal(HorizontalState(f1, k, dots))
            torus_bad += _shape(h1) != _shape(normalize_t3(T3State((1, 0, 0), k, dots)))
            torus_bad += len(set(dots)) >= 2 and not h1.is_zero()
    lift = vertical_lift_consistency(SurfaceSpec(2), 100, seed=9)
    passed = not sphere_bad and not torus_bad and lift.ok and lift.checked == 100
    detail = f"{checked} horizontal states, sphere mismatches {sphere_bad}, torus mismatches {torus_bad}; lift: {lift.checked} instances, {len(lift.violations)} violations"
    return CriterionResult(9, "Seifert assembly", passed, detail)


def random_state(rng: random.Random) -> State:
    labels = [TRIVIAL, "essential-sphere#0", "essential-sphere#1", "torus(1/0/0)#0", "vertical-over-stack-2", "h_f#3"]
    terms = {}
    for _ in range(rng.randint(0, 4)):
        comps = [comp(rng.choice(labels), rng.randint(0, 3), rng.randint(0, 2)) for _ in range(rng.randint(0, 3))]
        num = rng.randint(-9, 9) or 1
        terms[term(*comps)] = Fraction(num, rng.choice((1, 1, 2, 3, 4)))
    return State(terms)


def round_trip_corpus(n: int = 100, seed: int = 10) -> tuple[int, list]:
    rng = random.Random(seed)
    failures = []
    for i in range(n):
        s = random_state(rng)
        text = format_state(s)
        back = parse_state(text)
        if back != s or format_state(back) != text:
            failures.append(i)
    return n, failures


def criterion_10_round_trip() -> CriterionResult:
    n, failures = round_trip_corpus()
    return CriterionResult(10, "state text round trip", not failures, f"{n} states, {len(failures)} non-fixpoints")


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10_round_trip,
}


def run(numbers=None) -> list[CriterionResult]:
    out = []
    for k in numbers or sorted(CRITERIA):
        start = time.perf_counter()
        res = CRITERIA[k]()
        res.seconds = time.perf_counter() - start
        out.append(res)
    return out

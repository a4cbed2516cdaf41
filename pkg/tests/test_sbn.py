from fractions import Fraction

import pytest

from bnskein.core import SkeinError, State
from bnskein.sbn import (
    Edge,
    Region,
    SkeinGraph,
    Stack,
    SurfaceSpec,
    all_reductions,
    build_graph,
    check_admissible,
    classify,
    dotted_normalize,
    format_class,
    graded_dimension,
    graph_shapes,
    is_reduced,
    merge_at,
    parse_class,
    reduce_graph,
    zero_reason,
)
from bnskein.sbn_oracle import (
    arrangement_from_stacks,
    band_sites,
    band_sum_relation,
    curve_closure,
    make_arrangement,
    path_arrangement,
    rule_trivial_circle,
)

TORUS = SurfaceSpec(1)
GENUS2 = SurfaceSpec(2)


def loop(cls, w=1, v=0):
    return Edge(cls, w, (v, v))


def bar(cls, a, b, w=1):
    return Edge(cls, w, (a, b))


def test_classes():
    assert format_class(0b01, 2) == "10"
    assert format_class(0, 0) == "0"
    assert parse_class("0110") == 0b0110
    with pytest.raises(ValueError):
        parse_class("2")
    with pytest.raises(SkeinError):
        TORUS.check_class(4)


def test_stack_validation():
    with pytest.raises(SkeinError):
        Stack(1, 0)
    with pytest.raises(SkeinError):
        Stack(1, 2, (2,))


def test_build_graph_checks_topology():
    g = build_graph(TORUS, [Stack(1)], [Region((0, 0))])
    assert g.total_weight == 1 and g.edges[0].is_loop
    with pytest.raises(SkeinError):
        build_graph(GENUS2, [Stack(1)], [Region((0, 0))])
    with pytest.raises(SkeinError):
        build_graph(TORUS, [Stack(1)], [Region((0,))])
    with pytest.raises(SkeinError):
        build_graph(TORUS, [Stack(1)], [Region((0, 0)), Region(())])


def test_admissibility():
    ok = SkeinGraph((0, 1), (bar(1, 0, 1), bar(4, 0, 1), bar(5, 0, 1)))
    bad = SkeinGraph((0, 1), (bar(1, 0, 1), bar(4, 0, 1), bar(4, 0, 1)))
    assert check_admissible(ok)
    assert not check_admissible(bad)


def test_reduction_merges_divalent_vertices():
    g = SkeinGraph((0, 1, 2), (bar(1, 0, 1), bar(1, 1, 2, 2), bar(1, 2, 0)))
    assert not is_reduced(g)
    r = reduce_graph(g)
    assert is_reduced(r)
    assert len(r.vertices) == 1 and r.edges[0].weight == 4 and r.edges[0].is_loop
    assert len(all_reductions(g)) == 1
    with pytest.raises(SkeinError):
        merge_at(SkeinGraph((0, 1), (bar(1, 0, 1), bar(2, 0, 1))), 0)


@pytest.mark.parametrize(
    "graph,n,reason",
    [
        (SkeinGraph((0,), (loop(1),)), 2, "low-weight"),
        (SkeinGraph((0, 1), (loop(1), loop(2), bar(3, 0, 1))), 3, "blank-region"),
        (SkeinGraph((0,), (loop(1), loop(1))), 2, "repeated-class"),
        (SkeinGraph((0,), (loop(1), loop(2), loop(3))), 3, "trivalent"),
        (SkeinGraph((0,), (loop(1, 3),)), 3, "odd-loop"),
        (SkeinGraph((0, 1), (loop(1, 1, 0), loop(2, 1, 1), bar(0, 0, 1, 2))), 4, "even-bar"),
        (SkeinGraph((0,), (loop(1, 2),)), 2, None),
        (SkeinGraph((0, 1), (loop(1, 1, 0), loop(2, 1, 1), bar(0, 0, 1))), 3, None),
    ],
)
def test_zero_conditions(graph, n, reason):
    assert zero_reason(graph, n) == reason


def test_zero_reason_needs_reduced_graph():
    g = SkeinGraph((0, 1), (bar(1, 0, 1), bar(1, 0, 1)))
    with pytest.raises(SkeinError):
        zero_reason(g, 2)


def test_classify():
    a = classify(SkeinGraph((0,), (loop(1, 2),)), 2, 2)
    assert str(a) == "+TypeA[e=10](n=2)"
    bc = classify(SkeinGraph((0, 1), (loop(2, 1, 0), loop(1, 1, 1), bar(3, 0, 1))), 3, 2)
    assert bc.value == ("BC", 1, 2, 3)
    assert str(bc.negated()) == "-TypeBC[e=10,f=01](n=3)"
    with pytest.raises(SkeinError):
        classify(SkeinGraph((0,), (loop(1, 2),)), 3, 2)


def test_graded_dimension():
    assert graded_dimension(TORUS, 1) == 4
    assert graded_dimension(TORUS, 2) == 16
    assert graded_dimension(TORUS, 3) == 12
    assert graded_dimension(1, 2, exclude_zero_class=True) == 9
    assert graded_dimension(0, 5) == 0
    for n in (0, -1):
        with pytest.raises(SkeinError):
            graded_dimension(TORUS, n)


def test_graph_shapes_small_counts():
    assert len(graph_shapes(1)) == 2
    assert len(graph_shapes(2)) == 2 + 4


def test_dotted_normalize_examples():
    one = [Region((0, 0))]
    assert str(dotted_normalize(TORUS, [Stack(1, 1, (0,))], one)) == "TypeA[e=10](n=1)"
    assert str(dotted_normalize(TORUS, [Stack(1, 2, (1,))], one)) == "-TypeA[e=10](n=2)"
    assert str(dotted_normalize(TORUS, [Stack(1, 2, (0,))], one)) == "TypeA[e=10](n=2)"
    odd = dotted_normalize(TORUS, [Stack(1, 3, (1,))], one)
    assert odd.signed_coefficient == 0


def test_trivial_circles():
    trivial_white = dotted_normalize(TORUS, [Stack(1, 1, (0,)), Stack(0)], [Region((0, 0, 1)), Region((1,))])
    assert str(trivial_white) == "2*TypeA[e=10](n=1)"
    trivial_dotted = dotted_normalize(TORUS, [Stack(1), Stack(0, 1, (0,))], [Region((0, 0, 1)), Region((1,))])
    assert trivial_dotted.reason == "trivial-dotted"


def test_dotted_normalize_zero_reasons():
    two = dotted_normalize(TORUS, [Stack(1, 2, (0, 1))], [Region((0, 0))])
    assert two.reason == "dot-path"
    sep = dotted_normalize(GENUS2, [Stack(0, 1, (0,))], [Region((0,), 1), Region((0,), 1)])
    assert sep.signed_coefficient == 0
    with pytest.raises(SkeinError):
        dotted_normalize(TORUS, [Stack(1)], [Region((0, 0))])


def test_figure_eight():
    r = dotted_normalize(GENUS2, [Stack(1, 1, (0,)), Stack(2)], [Region((0, 0, 1, 1))])
    assert str(r) == "TypeBC[e=1000,f=0100](n=2)"


def test_band_sum_relation_checks_class():
    a = arrangement_from_stacks([Stack(1, 2, (0,))], [Region((0, 0))])
    r, y = next(band_sites(a, "s0.0"))
    inst = band_sum_relation(a, "s0.0", y, r)
    assert sum(1 for t in inst.rhs if t.level == 1) == 1
    with pytest.raises(SkeinError):
        band_sum_relation(a, "s0.0", y, r, result_class=1)
    with pytest.raises(SkeinError):
        band_sum_relation(a, "s0.1", "s0.0", r)


def test_trivial_circle_rule_factor():
    a = make_arrangement([("x", 1, 1), ("t", 0, 0)], [(("x", "x", "t"), 0, 0), (("t",), 0, 0)])
    (inst,) = list(rule_trivial_circle(a))
    (coeff,) = (c for _, c in inst.rhs.items())
    assert coeff == 2


def test_arrangement_validation():
    with pytest.raises(SkeinError):
        make_arrangement([("x", 1, 0)], [(("x",), 0, 0)])
    with pytest.raises(SkeinError):
        path_arrangement(2, [1], [0, 0, 0], closed=True)


def test_curve_oracle_on_closed_path():
    a = path_arrangement(3, [1, 0, 0, 0], [0, 0, 0, 0], closed=True)
    res = curve_closure(State.of(a))
    assert res.confluent

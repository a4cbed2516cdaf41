from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bnskein.core import (
    EMPTY,
    TRIVIAL,
    Inconclusive,
    ParseError,
    RelationInstance,
    SkeinError,
    State,
    SurfaceComponent,
    apply_two_dot_rule,
    comp,
    format_state,
    graded_reduce,
    handle_tube_rule,
    neck_cut,
    oracle_rewrite_closure,
    oracle_state_bfs,
    parallel_dot_shift,
    parallel_dotted_pair_delete,
    parse_state,
    parse_state_file,
    remove_trivial_spheres,
    term,
)
from bnskein.models import S3_RULES
from bnskein.ring import ZZ, RingError


def test_component_validation():
    with pytest.raises(SkeinError):
        comp("a", -1, 0)
    with pytest.raises(SkeinError):
        comp("a[1]", 0, 0)
    assert comp("a", 2, 1).euler == -2


def test_state_arithmetic_drops_zeros():
    t = term(comp("a"))
    s = State.of(t, 2) - State.of(t, 2)
    assert s.is_zero() and s == State.zero()
    assert (State.of(t) + State.of(t)).coefficient(t) == 2
    assert State.of(t).scale(Fraction(1, 2)).coefficient(t) == Fraction(1, 2)


def test_two_dot_rule():
    s = State({term(comp("a", 0, 2)): 1, term(comp("a", 0, 1)): 3})
    assert apply_two_dot_rule(s) == State.of(term(comp("a", 0, 1)), 3)


def test_neck_cut_torus_to_sphere_counts_twice():
    t = term(comp(TRIVIAL, 1, 0))
    out = neck_cut(State.of(t), t, 0, [comp(TRIVIAL, 0, 0)])
    assert out == State.of(term(comp(TRIVIAL, 0, 1)), 2)


def test_neck_cut_separating_gives_two_terms():
    t = term(comp("a", 1, 0))
    out = neck_cut(State.of(t), t, 0, [comp("b", 0, 0), comp("c", 1, 0)])
    assert out == State({term(comp("b", 0, 1), comp("c", 1, 0)): 1, term(comp("b"), comp("c", 1, 1)): 1})


def test_neck_cut_rejects_bad_outcome():
    t = term(comp("a", 1, 0))
    with pytest.raises(SkeinError):
        neck_cut(State.of(t), t, 0, [comp("a", 1, 0)])
    with pytest.raises(SkeinError):
        neck_cut(State.of(t), t, 0, [comp("a", 0, 1)])
    with pytest.raises(SkeinError):
        neck_cut(State.zero(), t, 0, [comp("a")])


def test_handle_tube_rule_both_directions():
    t = term(comp("a", 0, 1))
    fwd = handle_tube_rule(State.of(t, 2), t, 0)
    assert fwd == State.of(term(comp("a", 1, 0)), 1)
    back = handle_tube_rule(fwd, term(comp("a", 1, 0)), 0, reverse=True)
    assert back == State.of(t, 2)
    with pytest.raises(SkeinError):
        handle_tube_rule(State.of(term(comp("a"))), term(comp("a")), 0)
    with pytest.raises(RingError):
        handle_tube_rule(State.of(t), t, 0, ring=ZZ)


def test_trivial_spheres():
    white = term(comp(TRIVIAL), comp("a", 1, 0))
    dotted = term(comp(TRIVIAL, 0, 1), comp("a", 1, 0))
    assert remove_trivial_spheres(State.of(white)).is_zero()
    assert remove_trivial_spheres(State.of(dotted)) == State.of(term(comp("a", 1, 0)))


def test_parallel_moves():
    t = term(comp("s#0", 0, 1), comp("s#1", 0, 0))
    shifted = parallel_dot_shift(State.of(t), t, 0, 1)
    assert shifted == State.of(term(comp("s#0"), comp("s#1", 0, 1)), -1)
    pair = term(comp("s#0", 0, 1), comp("s#1", 0, 1))
    assert parallel_dotted_pair_delete(State.of(pair), pair, 0, 1) == State.of(EMPTY)
    tori = term(comp("t#0", 1, 1), comp("t#1", 1, 1))
    assert parallel_dotted_pair_delete(State.of(tori), tori, 0, 1).is_zero()
    with pytest.raises(SkeinError):
        parallel_dot_shift(State.of(pair), pair, 0, 1)


def test_graded_reduce():
    s = State({term(comp("a"), comp("b")): 1, term(comp("a")): 5})
    assert graded_reduce(s, 2) == State.of(term(comp("a"), comp("b")))
    with pytest.raises(SkeinError):
        graded_reduce(s, 1)


def test_relation_instance():
    t = term(comp("a", 0, 2))
    inst = RelationInstance("two-dot", (0,), t, State.zero())
    assert inst.relation() == State.of(t)


def test_oracle_agrees_with_state_search():
    s = State({term(comp(TRIVIAL, 2, 0)): 1, term(comp(TRIVIAL, 1, 0), comp(TRIVIAL, 0, 1)): Fraction(1, 2)})
    fast = oracle_rewrite_closure(s, S3_RULES)
    slow = oracle_state_bfs(s, S3_RULES)
    assert fast.terminals == slow.terminals == {State.of(EMPTY, 1)}


def test_oracle_reports_bound():
    s = State.of(term(comp(TRIVIAL, 2, 0)))
    with pytest.raises(Inconclusive):
        oracle_rewrite_closure(s, S3_RULES, bound=1)
    with pytest.raises(Inconclusive):
        oracle_state_bfs(s, S3_RULES, bound=1)


def test_text_format():
    assert format_state(State.zero()) == "0"
    s = parse_state("1/2 * [essential-sphere#1:0:1]\n\n1 * []\n")
    assert s == State({term(comp("essential-sphere#1", 0, 1)): Fraction(1, 2), EMPTY: 1})
    assert parse_state("0") == State.zero()
    assert format_state(parse_state(format_state(s))) == format_state(s)


def test_parse_errors_carry_line_numbers(tmp_path):
    with pytest.raises(ParseError) as err:
        parse_state("1 * [a:0:0]\n2 * [a:0]\n")
    assert err.value.lineno == 2
    p = tmp_path / "s.txt"
    p.write_text("1 * [a:0:0]\n")
    assert parse_state_file(p) == State.of(term(comp("a")))


labels = st.sampled_from(["trivial", "essential-sphere#0", "torus(1/0/0)#2", "a_b"])
components = st.builds(SurfaceComponent, labels, st.integers(0, 3), st.integers(0, 3))
states = st.dictionaries(
    st.lists(components, max_size=3).map(lambda cs: term(*cs)),
    st.fractions(max_denominator=6).filter(lambda f: abs(f) < 20),
    max_size=4,
).map(State)


@settings(max_examples=100)
@given(states)
def test_round_trip_property(s):
    text = format_state(s)
    assert parse_state(text) == s
    assert format_state(parse_state(text)) == text

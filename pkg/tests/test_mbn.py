from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from bnskein.core import SkeinError
from bnskein.mbn import (
    MbnComponent,
    MbnElement,
    NormalizationConstants,
    check_normalization,
    dotted_state_recursion_check,
    enumerate_normalization_families,
    format_bits,
    in_some_family,
    mbn_evaluate,
    mbn_neck_cut,
    parse_bits,
)
from bnskein.ring import ZZ, Laurent, RingError


def test_families_match_brute_force():
    grid = [Fraction(n, 4) for n in range(-8, 9)]
    for x, y, z in product(grid, repeat=3):
        c = NormalizationConstants(x, y, z)
        assert check_normalization(c) == in_some_family(c), c


def test_family_samples_satisfy_identities():
    for fam in enumerate_normalization_families():
        for x in (Fraction(1), Fraction(-3, 2)):
            c = fam.sample(x)
            assert check_normalization(c) and fam.contains(c)


def test_usual_values():
    assert check_normalization(NormalizationConstants.of(0, 0, 1))
    assert not check_normalization(NormalizationConstants.of(0, 1, 1))


def test_dotted_recursion():
    assert dotted_state_recursion_check(Fraction(1, 2), 3) == 1
    assert dotted_state_recursion_check(3, 2) == 36
    with pytest.raises(RingError):
        dotted_state_recursion_check(1, 1, ring=ZZ)


def test_bits():
    assert format_bits(0b101, 4) == "1010"
    assert parse_bits("1010") == 0b101
    with pytest.raises(ValueError):
        parse_bits("12")


def test_evaluate_examples():
    torus = MbnComponent(0, 0, 1)
    sphere = MbnComponent(2, 1, 0)
    assert mbn_evaluate([torus], 1) == MbnElement.basis(1, 1, 0)
    assert mbn_evaluate([sphere], 1) == MbnElement.basis(1, 0, 0)
    assert mbn_evaluate([MbnComponent(-2, 0, 1), torus], 1) == MbnElement.basis(1, 0, 1)
    assert str(mbn_evaluate([MbnComponent(2)], 0)) == "1 * x^-1 * []"


def test_half_powers():
    rp2 = MbnComponent(1, 0, 1, orientable=False)
    with pytest.raises(SkeinError, match="allow-half"):
        mbn_evaluate([rp2], 1)
    v = mbn_evaluate([rp2], 1, allow_half=True)
    assert v.terms[1] == Laurent.monomial(Fraction(-1, 2))


def test_component_validation():
    with pytest.raises(SkeinError):
        MbnComponent(1)
    with pytest.raises(SkeinError):
        MbnComponent(4)
    with pytest.raises(SkeinError):
        MbnComponent(0, -1)
    with pytest.raises(SkeinError):
        mbn_evaluate([MbnComponent(0, 0, 4)], 2)


def test_neck_cut_preserves_value():
    before = [MbnComponent(-2, 0, 1)]
    after = mbn_neck_cut(before, 0, [MbnComponent(0, 1, 1)])
    assert mbn_evaluate(before, 1) == mbn_evaluate(after, 1)
    with pytest.raises(SkeinError):
        mbn_neck_cut(before, 0, [MbnComponent(0, 0, 1)])
    with pytest.raises(SkeinError):
        mbn_neck_cut(before, 0, [MbnComponent(0, 1, 0)])


classes = st.integers(0, 7)
elements = st.dictionaries(
    classes, st.dictionaries(st.integers(-4, 4), st.integers(-3, 3), max_size=2).map(Laurent), max_size=3
).map(lambda d: MbnElement(3, d))


@given(elements, elements, elements)
def test_group_algebra_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    one = MbnElement.basis(3, 0)
    assert a * one == a


@given(st.lists(st.tuples(st.sampled_from([2, 0, -2, -4]), st.integers(0, 2), classes), min_size=1, max_size=4))
def test_evaluation_is_multiplicative(raw):
    comps = [MbnComponent(e, d, h) for e, d, h in raw]
    prod = MbnElement.basis(3, 0)
    for c in comps:
        prod = prod * mbn_evaluate([c], 3)
    assert prod == mbn_evaluate(comps, 3)


def test_rank_mismatch():
    with pytest.raises(SkeinError):
        MbnElement.basis(1, 0) * MbnElement.basis(2, 0)

import pytest

from bnskein.core import SkeinError
from bnskein.sbn import DottedCanonical, Region, Stack, SurfaceSpec
from bnskein.seifert import (
    HorizontalClass,
    HorizontalState,
    LiftSample,
    SeifertData,
    bn_decompose,
    normalize_horizontal,
    phi,
    vertical_lift_consistency,
)


def test_seifert_data_validation():
    m = SeifertData(1, ((3, 1), (2, 1)))
    assert m.fibers == ((2, 1), (3, 1))
    assert m.surface == SurfaceSpec(1, 2)
    with pytest.raises(SkeinError):
        SeifertData(0, ((1, 0),))
    with pytest.raises(SkeinError):
        SeifertData(-1)


def test_horizontal_class_validation():
    for bad in (("", 1), ("a:b", 1), ("f", 0)):
        with pytest.raises(SkeinError):
            HorizontalClass(*bad)
    with pytest.raises(SkeinError):
        HorizontalClass("f", 1, -1)


def test_decomposition_report():
    m = SeifertData(1, ((2, 1),))
    report = bn_decompose(m, [HorizontalClass("g", 2, 1), HorizontalClass("f", 1)])
    assert [h.token for h in report.horizontal] == ["f", "g"]
    assert report.vertical_dimensions(3) == [4, 16, 12]
    text = str(report)
    assert "rank G_2 = 16 (excluding zero class: 9)" in text
    assert "horizontal: f degree=1 genus=0" in text
    assert "horizontal: none" in str(bn_decompose(m))
    with pytest.raises(SkeinError):
        bn_decompose(m, [HorizontalClass("f", 1), HorizontalClass("f", 2)])
    with pytest.raises(SkeinError):
        bn_decompose(SeifertData(1, orientable_base=False))


def test_horizontal_normalization():
    sphere = HorizontalClass("f", 1, 0)
    torus = HorizontalClass("t", 1, 1)
    assert str(normalize_horizontal(HorizontalState(sphere, 3))) == "1 * f^3"
    assert str(normalize_horizontal(HorizontalState(sphere, 3, (0, 2)))) == "-1 * f^1"
    assert str(normalize_horizontal(HorizontalState(sphere, 2, (0, 1)))) == "1 * empty"
    assert normalize_horizontal(HorizontalState(torus, 2, (0, 1))).is_zero()
    assert str(normalize_horizontal(HorizontalState(torus, 1, (0,)))) == "1 * d_t"


def test_phi_weights():
    spec = SurfaceSpec(1)
    stacks, regions = (Stack(1, 1, (0,)),), (Region((0, 0)),)
    target = DottedCanonical("A", 1, 0, 1)
    assert phi(spec, target, LiftSample(stacks, regions)) == 1
    assert phi(spec, target, LiftSample(stacks, regions, white_tori=2)) == 4
    assert phi(spec, target, LiftSample(stacks, regions, dotted_tori=1)) == 0
    assert phi(spec, DottedCanonical("A", 2, 0, 1), LiftSample(stacks, regions)) == 0


@pytest.mark.parametrize("genus", [1, 2])
def test_vertical_lift_consistency(genus):
    report = vertical_lift_consistency(SurfaceSpec(genus), samples=30, seed=genus)
    assert report.ok, str(report)
    assert report.checked > 0

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from quasifree import (
    BasisSymbol,
    Comparator,
    Comparison,
    GroupDescriptor,
    OmegaData,
    PrecisionError,
    combine,
    compare_real,
    descriptor_from_json,
    descriptor_to_json,
    element_from_json,
    element_to_json,
    omega_from_json,
    omega_to_json,
)


def test_descriptor_validation():
    with pytest.raises(ValueError):
        GroupDescriptor("discrete", free_rank=-1)
    with pytest.raises(ValueError):
        GroupDescriptor("discrete", torsion=(1,))
    with pytest.raises(ValueError):
        GroupDescriptor("real_line")
    with pytest.raises(Exception):
        GroupDescriptor("p_adic")


def test_torsion_reduction():
    g = GroupDescriptor("discrete", free_rank=1, torsion=(4,))
    x = g.element([2], [7])
    assert x.torsion == (3,)
    assert (x + x).torsion == (2,)
    assert (-x).torsion == (1,)
    assert (x - x).is_zero()


def test_combine_examples(Z, Z2):
    w = OmegaData((Z.element([1]), Z.element([2])))
    assert combine((0, 0), w) == Z.element([0])
    assert combine((2, 1), w) == Z.element([4])
    w2 = OmegaData((Z2.element([1, 0]), Z2.element([0, 1])))
    assert combine((1, 1), w2) == Z2.element([1, 1])
    with pytest.raises(ValueError):
        combine((1,), w)


@given(
    st.lists(st.integers(0, 6), min_size=2, max_size=2),
    st.lists(st.integers(0, 6), min_size=2, max_size=2),
)
def test_combine_additive(a, b):
    g = GroupDescriptor("discrete", free_rank=1, torsion=(3,))
    w = OmegaData((g.element([2], [1]), g.element([-1], [2])))
    lhs = combine([x + y for x, y in zip(a, b)], w)
    assert lhs == combine(a, w) + combine(b, w)


def test_compare_real_examples(real_line):
    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    assert compare_real(2 * one, 2 * one) is Comparison.EQUAL
    assert compare_real(3 * rt2, 4 * one) is Comparison.GREATER
    assert compare_real(rt2, one) is Comparison.GREATER
    assert compare_real(one, rt2) is Comparison.LESS


def test_compare_real_precision_error():
    fuzzy = GroupDescriptor(
        "real_line",
        basis=(
            BasisSymbol("1", Fraction(1), Fraction(1)),
            BasisSymbol("a", Fraction(0), Fraction(2)),
        ),
    )
    x = fuzzy.real_element([0, 1])
    y = fuzzy.real_element([1, 0])
    with pytest.raises(PrecisionError):
        compare_real(x, y)


def test_compare_real_with_refiner():
    fuzzy = GroupDescriptor(
        "real_line",
        basis=(
            BasisSymbol("1", Fraction(1), Fraction(1)),
            BasisSymbol("a", Fraction(0), Fraction(2)),
        ),
    )
    # The "user knows" a = 3/2: bisect toward it on request.
    def refine(lo, hi):
        mid = (lo + hi) / 2
        return (mid, hi) if mid <= Fraction(3, 2) else (lo, mid)

    cmp = Comparator(depth=16, refiners=(("a", refine),))
    x = fuzzy.real_element([0, 1])
    y = fuzzy.real_element([1, 0])
    assert cmp.compare(x, y) is Comparison.GREATER
    assert cmp.compare(y, x) is Comparison.LESS


def test_comparator_orders_triples(real_line):
    cmp = Comparator()
    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    elems = [3 * one, 2 * rt2, one + rt2, real_line.zero()]
    ordered = cmp.sorted(elems)
    for a, b in zip(ordered, ordered[1:]):
        assert cmp.compare(a, b) is not Comparison.GREATER
    # antisymmetry and transitivity on resolvable values
    assert cmp.lt(one + rt2, 2 * rt2)
    assert cmp.lt(2 * rt2, 3 * one)
    assert cmp.lt(one + rt2, 3 * one)


def test_round_trip_serialization(Z, real_line):
    g = GroupDescriptor("discrete", free_rank=2, torsion=(2, 5))
    assert descriptor_from_json(descriptor_to_json(g)) == g
    assert descriptor_from_json(descriptor_to_json(real_line)) == real_line
    x = g.element([3, -4], [1, 4])
    assert element_from_json(g, element_to_json(x)) == x
    r = real_line.real_element([Fraction(3, 4), Fraction(-2)])
    assert element_from_json(real_line, element_to_json(r)) == r
    w = OmegaData((x, g.zero(), -x))
    assert omega_from_json(g, omega_to_json(w)) == w
    winf = OmegaData((x,), infinite=True)
    assert omega_from_json(g, omega_to_json(winf)) == winf


def test_omega_validation(Z):
    with pytest.raises(ValueError):
        OmegaData((Z.element([1]),))  # finite alphabets need n >= 2
    OmegaData((Z.element([1]),), infinite=True)
    with pytest.raises(ValueError):
        OmegaData(())
    g2 = GroupDescriptor("discrete", free_rank=2)
    with pytest.raises(ValueError):
        OmegaData((Z.element([1]), g2.element([1, 2])))


def test_finite_enumeration():
    g = GroupDescriptor("discrete", torsion=(2, 3))
    elems = list(g.iter_elements())
    assert len(elems) == 6 == g.order()
    assert len(set(elems)) == 6


def test_torsion_order():
    g = GroupDescriptor("discrete", torsion=(4, 6))
    assert g.element([], [2, 3]).torsion_order() == 2
    assert g.element([], [1, 1]).torsion_order() == 12
    assert g.zero().torsion_order() == 1

from fractions import Fraction

import pytest

from quasifree import (
    GroupDescriptor,
    OmegaData,
    PreconditionError,
    parse_element,
    partition_data,
    scaling_element,
)
from quasifree.scalars import GaussianRational


def om(group, *entries):
    d = group.free_rank
    return OmegaData(tuple(group.element(e[:d], e[d:]) for e in entries))


def test_partition_data_example(Z):
    omega = om(Z, [1], [-1])
    data = partition_data(omega, [Z.element([0])], Z.element([1]))
    words = [w for _, w in data.pairs]
    assert words == [(1, 2), (2,)]
    values = [f for f, _ in data.pairs]
    assert values[0].value_at(Z.element([0])) == GaussianRational.of(1)
    assert values[1].value_at(Z.element([1])) == GaussianRational.of(Fraction(1, 4))


def test_partition_preconditions(Z):
    omega = om(Z, [1], [-1])
    with pytest.raises(PreconditionError):
        partition_data(omega, [Z.element([1])], Z.element([2]))  # 0 missing
    with pytest.raises(PreconditionError):
        partition_data(omega, [Z.element([0])], Z.element([0]))  # outside in X
    with pytest.raises(PreconditionError):
        partition_data(om(Z, [1], [2]), [Z.element([0])], Z.element([1]))


def test_scaling_element_integers(Z, ctx_pm):
    omega = ctx_pm.omega
    x, report = scaling_element(omega, [Z.element([0])], Z.element([1]), ctx_pm)
    e = lambda s: parse_element(ctx_pm, s)
    assert x == e("S[1,2]·chi{0} + (1/2)·S[2]·chi{1}")
    assert report.left_support == e("chi{0} + (1/4)·chi{1}")
    assert report.right_support == e(
        "S[1,2]·chi{0}·S*[1,2] + (1/4)·S[2]·chi{1}·S*[2]"
    )
    assert all(report.checks.values())


def test_scaling_element_mod2():
    g = GroupDescriptor("discrete", torsion=(2,))
    omega = om(g, [1], [1])
    x, report = scaling_element(omega, [g.zero()], g.element([], [1]))
    assert all(report.checks.values())
    # identities hold exactly
    left, right = report.left_support, report.right_support
    assert left * right == right
    assert left != right


def test_scaling_larger_x(Z):
    omega = om(Z, [1], [-1])
    x, report = scaling_element(
        omega, [Z.element([0]), Z.element([-1]), Z.element([2])], Z.element([5])
    )
    assert all(report.checks.values())


def test_scaling_mixed_rank_group():
    g = GroupDescriptor("discrete", free_rank=1, torsion=(2,))
    omega = OmegaData(
        (g.element([1], [1]), g.element([-1], [0]), g.element([0], [1]))
    )
    from quasifree import closure_covers_group

    assert closure_covers_group(omega).verdict
    x, report = scaling_element(omega, [g.zero()], g.element([1], [0]))
    assert all(report.checks.values())

import random

import pytest

from quasifree import (
    FeatureError,
    GroupDescriptor,
    OmegaData,
    af_criterion,
    classify,
    closure_covers_group,
    infinite_projection_witness,
    simplicity,
    verify_verdict,
)


def om(group, *entries):
    d = group.free_rank
    return OmegaData(tuple(group.element(e[:d], e[d:]) for e in entries))


def test_af_criterion_examples(Z, real_line):
    assert af_criterion(om(Z, [1], [2]))[0] is True
    assert af_criterion(om(Z, [1], [-1]))[0] is False
    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    assert af_criterion(OmegaData((one, rt2)))[0] is True


def test_simplicity_examples(Z, Z2):
    assert simplicity(om(Z, [2], [3]))[0] is True
    assert simplicity(om(Z2, [1, 0], [0, 1]))[0] is False
    assert simplicity(om(Z, [1], [-1]))[0] is True


def test_classify_discrete(Z):
    v = classify(om(Z, [1], [2]))
    assert (v.simple, v.purely_infinite, v.af_embeddable, v.af_itself) == (
        True, False, "yes", True,
    )
    assert v.stably_finite == "yes"
    assert verify_verdict(om(Z, [1], [2]), v)

    v = classify(om(Z, [1], [-1]))
    assert (v.simple, v.purely_infinite, v.af_embeddable, v.af_itself) == (
        True, True, "no", False,
    )
    assert v.stably_finite == "no"
    assert verify_verdict(om(Z, [1], [-1]), v)


def test_classify_non_simple(Z2):
    v = classify(om(Z2, [1, 0], [0, 1]))
    assert v.simple is False
    assert v.purely_infinite is None
    assert v.af_embeddable == "yes"


def test_classify_real(real_line):
    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    v = classify(OmegaData((one, rt2)))
    assert (v.simple, v.purely_infinite, v.af_embeddable) == (True, False, "yes")
    v = classify(OmegaData((one, -rt2)))
    assert (v.simple, v.purely_infinite, v.af_embeddable) == (True, True, "no")
    v = classify(OmegaData((real_line.zero(), one)))
    assert v.af_embeddable == "open"
    assert v.stably_finite == "yes"
    assert v.purely_infinite is None
    # rank-1 mixed signs: not simple, infinite projections exist
    v = classify(OmegaData((one, -one)))
    assert v.simple is False
    assert v.stably_finite == "no"
    assert v.af_embeddable == "no"


def test_classify_infinite_alphabet(Z):
    w = OmegaData((Z.element([1]), Z.element([-1])), infinite=True)
    v = classify(w)
    assert v.simple is True and v.purely_infinite is True
    assert v.af_embeddable == "no" and v.af_itself is None
    w = OmegaData((Z.element([2]), Z.element([3])), infinite=True)
    v = classify(w)
    assert v.simple is False and v.purely_infinite is None
    assert v.af_embeddable == "yes" and v.stably_finite == "yes"
    # a single listed weight is allowed with the repetition rule
    w = OmegaData((Z.element([1]),), infinite=True)
    v = classify(w)
    assert v.af_embeddable == "yes"


def test_infinite_projection_witness_examples(Z):
    got = infinite_projection_witness(om(Z, [1], [-1]))
    assert got.word == (1, 2)
    assert all(got.checks.values())
    assert infinite_projection_witness(om(Z, [1], [2])) is None
    g2 = GroupDescriptor("discrete", torsion=(2,))
    got = infinite_projection_witness(om(g2, [1], [1]))
    assert got.word == (1, 1)
    assert all(got.checks.values())


def test_infinite_projection_witness_real_rejected(real_line):
    one = real_line.real_element([1, 0])
    with pytest.raises(FeatureError):
        infinite_projection_witness(OmegaData((one, -one)))


def test_criterion_iff_no_witness_on_samples(Z):
    rng = random.Random(2)
    groups = [
        Z,
        GroupDescriptor("discrete", free_rank=2),
        GroupDescriptor("discrete", torsion=(4,)),
        GroupDescriptor("discrete", free_rank=1, torsion=(2,)),
    ]
    for _ in range(40):
        g = rng.choice(groups)
        n = rng.choice((2, 3))
        weights = []
        for _ in range(n):
            free = [rng.randint(-3, 3) for _ in range(g.free_rank)]
            tors = [rng.randint(0, m - 1) for m in g.torsion]
            weights.append(g.element(free, tors))
        omega = OmegaData(tuple(weights))
        cond = af_criterion(omega)[0]
        witness = infinite_projection_witness(omega)
        assert cond == (witness is None)


def test_purely_infinite_monotone_under_extension(Z):
    rng = random.Random(8)
    for _ in range(30):
        n = rng.choice((2, 3))
        omega = OmegaData(
            tuple(Z.element([rng.randint(-3, 3)]) for _ in range(n))
        )
        v = classify(omega)
        if v.purely_infinite is not True:
            continue
        bigger = omega.extended(Z.element([rng.randint(-3, 3)]))
        assert classify(bigger).purely_infinite is True


def test_verify_verdict_on_samples(Z, real_line):
    rng = random.Random(77)
    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    samples = [
        om(Z, [1], [2]),
        om(Z, [1], [-1]),
        OmegaData((one, rt2)),
        OmegaData((one, -rt2)),
    ]
    for _ in range(8):
        samples.append(
            OmegaData(tuple(Z.element([rng.randint(-3, 3)]) for _ in range(2)))
        )
    for omega in samples:
        assert verify_verdict(omega, classify(omega))


def test_trivial_group_is_purely_infinite():
    g = GroupDescriptor("discrete")  # the one-element group
    omega = OmegaData((g.zero(), g.zero()))
    v = classify(omega)
    assert v.simple is True and v.purely_infinite is True
    cert = closure_covers_group(omega)
    assert cert.verdict is True

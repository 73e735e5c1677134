import pytest
from hypothesis import given, strategies as st

from quasifree import (
    ConstructionError,
    OmegaData,
    ResourceLimitError,
    counts_to_word,
    enumerate_words,
    omega_of,
    orthogonal_family,
    prefix_relation,
    render_word,
    word_counts,
)
from quasifree.words import LEFT_DIVIDES, ORTHOGONAL, RIGHT_DIVIDES, parse_word

words = st.lists(st.integers(1, 3), max_size=5).map(tuple)


def test_prefix_relation_examples():
    r = prefix_relation((1,), (1, 2))
    assert r.kind == LEFT_DIVIDES and r.remainder == (2,)
    assert prefix_relation((1, 2), (2,)).kind == ORTHOGONAL
    r = prefix_relation((1, 2), (1, 2))
    assert r.kind == LEFT_DIVIDES and r.remainder == ()
    r = prefix_relation((1, 2, 1), (1, 2))
    assert r.kind == RIGHT_DIVIDES and r.remainder == (1,)


@given(words, words)
def test_prefix_relation_concat(mu, rho):
    r = prefix_relation(mu, mu + rho)
    assert r.kind == LEFT_DIVIDES and r.remainder == rho


def test_omega_of_examples(Z, Z2):
    w = OmegaData((Z.element([1]), Z.element([2])))
    assert omega_of((), w) == Z.element([0])
    assert omega_of((1, 2, 2), w) == Z.element([5])
    w2 = OmegaData((Z2.element([1, 0]), Z2.element([0, 1])))
    assert omega_of((2, 1), w2) == Z2.element([1, 1])
    with pytest.raises(ValueError):
        omega_of((3,), w)


@given(words, words)
def test_omega_additive(mu, nu):
    from quasifree import GroupDescriptor

    g = GroupDescriptor("discrete", free_rank=1, torsion=(4,))
    w = OmegaData(
        (g.element([1], [1]), g.element([-2], [3]), g.element([0], [2]))
    )
    assert omega_of(mu + nu, w) == omega_of(mu, w) + omega_of(nu, w)


def test_enumerate_words():
    assert enumerate_words(2, 0) == [()]
    assert enumerate_words(2, 1) == [(), (1,), (2,)]
    assert len(enumerate_words(2, 2)) == 7
    ws = enumerate_words(3, 3)
    assert len(ws) == 1 + 3 + 9 + 27
    assert ws == sorted(ws, key=lambda w: (len(w), w))
    with pytest.raises(ResourceLimitError):
        enumerate_words(10, 10, cap=1000)


def test_word_rendering():
    assert render_word((1, 2, 2)) == "[1,2,2]"
    assert render_word(()) == "[]"
    assert parse_word("[1,2,2]") == (1, 2, 2)
    assert parse_word("[]") == ()


def test_counts_round_trip():
    assert counts_to_word((2, 0, 1)) == (1, 1, 3)
    assert word_counts((1, 1, 3), 3) == (2, 0, 1)


def test_orthogonal_family_examples(Z, omega_pm):
    fam = orthogonal_family(omega_pm, 2, [Z.element([0])])
    assert fam == [(1, 2), (2, 1)]
    w = OmegaData((Z.element([1]), Z.element([2])))
    assert orthogonal_family(w, 1, [Z.element([1])]) == [(1,)]


def test_orthogonal_family_mod3():
    from quasifree import GroupDescriptor

    g = GroupDescriptor("discrete", torsion=(3,))
    w = OmegaData((g.element([], [1]), g.element([], [1])))
    fam = orthogonal_family(w, 2, [g.zero()])
    assert len(fam) == 2
    for word in fam:
        assert omega_of(word, w) == g.zero()
    assert prefix_relation(fam[0], fam[1]).kind == ORTHOGONAL


def test_orthogonal_family_failure(Z):
    w = OmegaData((Z.element([2]), Z.element([2])))
    with pytest.raises(ConstructionError):
        orthogonal_family(w, 2, [Z.element([1])])


def test_orthogonal_family_real_interval(real_line):
    from quasifree import Interval, OmegaData

    one = real_line.real_element([1, 0])
    rt2 = real_line.real_element([0, 1])
    w = OmegaData((one, rt2))
    target = Interval(real_line.real_element([2, 0]), real_line.real_element([4, 0]))
    fam = orthogonal_family(w, 2, target)
    assert len(fam) == 2

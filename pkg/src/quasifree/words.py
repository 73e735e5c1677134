"""Words over the generator alphabet: evaluation, prefix calculus, enumeration,
and construction of mutually orthogonal families with prescribed weight values.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import ceil, log

from .errors import ConstructionError, ResourceLimitError
from .groups import Comparator, Comparison, GroupElement, OmegaData, combine

Word = tuple[int, ...]
EMPTY: Word = ()

DEFAULT_ENUM_CAP = 10**6

LEFT_DIVIDES = "left_divides"
RIGHT_DIVIDES = "right_divides"
ORTHOGONAL = "orthogonal"


@dataclass(frozen=True)
class PrefixRelation:
    """Outcome of the S_mu* S_nu calculus: S_mu* S_nu = S_rem, S_rem*, or 0."""

    kind: str
    remainder: Word = EMPTY

    @property
    def is_orthogonal(self) -> bool:
        return self.kind == ORTHOGONAL


def prefix_relation(mu: Word, nu: Word) -> PrefixRelation:
    if len(mu) <= len(nu):
        if nu[: len(mu)] == mu:
            return PrefixRelation(LEFT_DIVIDES, nu[len(mu):])
    else:
        if mu[: len(nu)] == nu:
            return PrefixRelation(RIGHT_DIVIDES, mu[len(nu):])
    return PrefixRelation(ORTHOGONAL)


def check_letters(word: Word, omega: OmegaData):
    for letter in word:
        if letter < 1 or letter > omega.n:
            raise ValueError(f"letter {letter} outside alphabet of size {omega.n}")


def omega_of(word: Word, omega: OmegaData) -> GroupElement:
    check_letters(word, omega)
    total = omega.group.zero()
    for letter in word:
        total = total + omega.weights[letter - 1]
    return total


def word_counts(word: Word, n: int) -> tuple[int, ...]:
    counts = [0] * n
    for letter in word:
        counts[letter - 1] += 1
    return tuple(counts)


def counts_to_word(counts) -> Word:
    """Realize a count vector as the word with letters in index order."""
    word: list[int] = []
    for i, c in enumerate(counts):
        word.extend([i + 1] * int(c))
    return tuple(word)


def enumerate_words(n: int, max_len: int, cap: int = DEFAULT_ENUM_CAP) -> list[Word]:
    """All words of length <= max_len in length-then-lexicographic order."""
    if n < 1 or max_len < 0:
        raise ValueError("need an alphabet of size >= 1 and max_len >= 0")
    total = sum(n**k for k in range(max_len + 1))
    if total > cap:
        raise ResourceLimitError(
            f"{total} words exceed the enumeration cap {cap}",
            module="word_combinatorics",
        )
    out: list[Word] = []
    for k in range(max_len + 1):
        out.extend(product(range(1, n + 1), repeat=k))
    return out


def render_word(word: Word) -> str:
    return "[" + ",".join(str(i) for i in word) + "]"


def parse_word(text: str) -> Word:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not a word literal: {text!r}")
    inner = text[1:-1].strip()
    if not inner:
        return EMPTY
    return tuple(int(p) for p in inner.split(","))


def _stems(n: int, count: int) -> list[Word]:
    # The `count` lexicographically first words of the least sufficient length.
    if count == 1:
        return [EMPTY]
    length = max(1, ceil(log(count) / log(n)))
    while n**length < count:
        length += 1
    while length > 1 and n ** (length - 1) >= count:
        length -= 1
    stems: list[Word] = []
    for word in product(range(1, n + 1), repeat=length):
        stems.append(word)
        if len(stems) == count:
            break
    return stems


def orthogonal_family(
    omega: OmegaData,
    count: int,
    targets,
    comparator: Comparator | None = None,
    search_cap: int = 4096,
) -> list[Word]:
    """`count` pairwise orthogonal words whose weight values hit the target.

    Targets: a sequence of group elements (exact values, searched in order)
    or a half-open interval (lo, hi) on the real line.  Construction: take
    distinct equal-length stems, then append a correction suffix found by
    membership search; both postconditions are re-checked before returning.
    """
    from .functions import Interval
    from .semigroup import member

    if count < 1:
        raise ValueError("count must be >= 1")
    stems = _stems(omega.n, count)
    comparator = comparator or Comparator()
    words: list[Word] = []
    for stem in stems:
        base = omega_of(stem, omega)
        suffix = None
        if isinstance(targets, Interval):
            suffix = _interval_suffix(omega, targets, base, comparator, search_cap)
        else:
            for target in targets:
                witness = member(target - base, omega)
                if witness is not None:
                    suffix = counts_to_word(witness.counts)
                    break
        if suffix is None:
            raise ConstructionError(
                "no correction suffix found for a stem",
                module="word_combinatorics",
                query={"stem": render_word(stem), "targets": str(targets)},
            )
        words.append(stem + suffix)
    _recheck_family(omega, words, targets, comparator)
    return words


def _interval_suffix(omega, interval, base, comparator, cap):
    # Bounded breadth-first search over count vectors; exact interval test.
    n = omega.n
    queue = [(0,) * n]
    seen = 0
    while queue and seen < cap:
        next_queue = []
        for counts in queue:
            seen += 1
            value = base + combine(counts, omega)
            if (
                comparator.compare(value, interval.lo) is not Comparison.LESS
                and comparator.lt(value, interval.hi)
            ):
                return counts_to_word(counts)
            for i in range(n):
                bumped = counts[:i] + (counts[i] + 1,) + counts[i + 1:]
                next_queue.append(bumped)
        queue = next_queue
    return None


def _recheck_family(omega, words, targets, comparator):
    from .functions import Interval

    for i, a in enumerate(words):
        for b in words[i + 1:]:
            if not prefix_relation(a, b).is_orthogonal:
                raise ConstructionError(
                    f"constructed words {render_word(a)}, {render_word(b)} "
                    "are not orthogonal",
                    module="word_combinatorics",
                )
    for w in words:
        value = omega_of(w, omega)
        if isinstance(targets, Interval):
            ok = (
                comparator.compare(value, targets.lo) is not Comparison.LESS
                and comparator.lt(value, targets.hi)
            )
        else:
            ok = any(value == t for t in targets)
        if not ok:
            raise ConstructionError(
                f"weight value of {render_word(w)} missed the target",
                module="word_combinatorics",
            )

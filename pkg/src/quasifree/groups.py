"""Exact models of the dual group: descriptors, elements, weights.

Two families are supported: finitely generated discrete groups
Z^d x Z/m_1 x ... x Z/m_t, and a symbolic real line spanned by finitely
many named constants that are declared Q-linearly independent and enclosed
in user-supplied rational intervals.  Equality on the real line is decided
purely from coordinates; only sign questions touch the enclosures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Callable, Iterator, Mapping

from .errors import FeatureError, PrecisionError

DISCRETE = "discrete"
REAL_LINE = "real_line"

DEFAULT_PRECISION_DEPTH = 32


def parse_fraction(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text))


def fraction_str(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class BasisSymbol:
    """A named real constant with a rational interval enclosure lo <= value <= hi."""

    name: str
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure for basis symbol {self.name!r}")


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    free_rank: int = 0
    torsion: tuple[int, ...] = ()
    basis: tuple[BasisSymbol, ...] = ()

    def __post_init__(self):
        if self.kind == DISCRETE:
            if self.free_rank < 0:
                raise ValueError("free_rank must be nonnegative")
            if any(m < 2 for m in self.torsion):
                raise ValueError("torsion moduli must be >= 2")
        elif self.kind == REAL_LINE:
            if not self.basis:
                raise ValueError("real_line descriptor needs a nonempty basis")
        else:
            raise FeatureError(
                f"unsupported group kind {self.kind!r}", module="gamma_core"
            )

    @property
    def is_finite(self) -> bool:
        return self.kind == DISCRETE and self.free_rank == 0

    def order(self) -> int | None:
        if not self.is_finite:
            return None
        n = 1
        for m in self.torsion:
            n *= m
        return n

    def zero(self) -> "GroupElement":
        if self.kind == DISCRETE:
            return GroupElement(
                self, (0,) * self.free_rank, (0,) * len(self.torsion), ()
            )
        return GroupElement(self, (), (), (Fraction(0),) * len(self.basis))

    def element(self, free=(), torsion=()) -> "GroupElement":
        if self.kind != DISCRETE:
            raise ValueError("element(free, torsion) applies to discrete groups")
        free = tuple(int(x) for x in free)
        if len(free) != self.free_rank:
            raise ValueError("free part has wrong length")
        torsion = tuple(int(x) for x in torsion)
        if len(torsion) != len(self.torsion):
            raise ValueError("torsion part has wrong length")
        torsion = tuple(t % m for t, m in zip(torsion, self.torsion))
        return GroupElement(self, free, torsion, ())

    def real_element(self, coords) -> "GroupElement":
        if self.kind != REAL_LINE:
            raise ValueError("real_element(coords) applies to the real line")
        coords = tuple(parse_fraction(c) for c in coords)
        if len(coords) != len(self.basis):
            raise ValueError("coordinate vector has wrong length")
        return GroupElement(self, (), (), coords)

    def iter_elements(self) -> Iterator["GroupElement"]:
        """All elements of a finite group, in lexicographic residue order."""
        if not self.is_finite:
            raise ValueError("iter_elements requires a finite group")
        for residues in product(*(range(m) for m in self.torsion)):
            yield GroupElement(self, (), residues, ())


@dataclass(frozen=True)
class GroupElement:
    group: GroupDescriptor
    free: tuple[int, ...]
    torsion: tuple[int, ...]
    coords: tuple[Fraction, ...]

    def _check_same(self, other: "GroupElement"):
        if self.group != other.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_same(other)
        if self.group.kind == DISCRETE:
            free = tuple(a + b for a, b in zip(self.free, other.free))
            tors = tuple(
                (a + b) % m
                for a, b, m in zip(self.torsion, other.torsion, self.group.torsion)
            )
            return GroupElement(self.group, free, tors, ())
        coords = tuple(a + b for a, b in zip(self.coords, other.coords))
        return GroupElement(self.group, (), (), coords)

    def __neg__(self) -> "GroupElement":
        if self.group.kind == DISCRETE:
            free = tuple(-a for a in self.free)
            tors = tuple((-a) % m for a, m in zip(self.torsion, self.group.torsion))
            return GroupElement(self.group, free, tors, ())
        return GroupElement(self.group, (), (), tuple(-a for a in self.coords))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def __mul__(self, n: int) -> "GroupElement":
        if not isinstance(n, int):
            return NotImplemented
        if self.group.kind == DISCRETE:
            free = tuple(n * a for a in self.free)
            tors = tuple((n * a) % m for a, m in zip(self.torsion, self.group.torsion))
            return GroupElement(self.group, free, tors, ())
        return GroupElement(self.group, (), (), tuple(n * a for a in self.coords))

    __rmul__ = __mul__

    def scaled(self, q: Fraction) -> "GroupElement":
        """Rational scaling; meaningful on the real line only."""
        if self.group.kind != REAL_LINE:
            raise ValueError("rational scaling applies to the real line")
        q = parse_fraction(q)
        return GroupElement(self.group, (), (), tuple(q * a for a in self.coords))

    def is_zero(self) -> bool:
        return (
            all(a == 0 for a in self.free)
            and all(a == 0 for a in self.torsion)
            and all(a == 0 for a in self.coords)
        )

    def torsion_order(self) -> int:
        """Least k >= 1 with k*x = 0; requires a pure-torsion element."""
        if self.group.kind != DISCRETE or any(self.free):
            raise ValueError("torsion_order requires a pure-torsion element")
        k = 1
        for a, m in zip(self.torsion, self.group.torsion):
            k = k * (m // gcd(a, m)) // gcd(k, m // gcd(a, m))
        return k

    def sort_key(self):
        """Deterministic syntactic key; not the real-line order."""
        return (self.free, self.torsion, self.coords)

    def __str__(self) -> str:
        return render_element(self)


class Comparison(enum.IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


Refiner = Callable[[Fraction, Fraction], tuple[Fraction, Fraction]]


def compare_real(
    g: GroupElement,
    h: GroupElement,
    depth: int = DEFAULT_PRECISION_DEPTH,
    refiners: Mapping[str, Refiner] | None = None,
) -> Comparison:
    """Exact order on the symbolic real line.

    Equality is decided from coordinates alone (the basis is declared
    Q-linearly independent).  Otherwise the sign of g - h is bracketed by
    interval arithmetic over the basis enclosures; when a sign is undecided
    the per-symbol refiners, if any, are asked for tighter enclosures, up
    to `depth` rounds.  A provably nonzero value that remains undecided
    raises PrecisionError - the comparison never guesses.
    """
    if g.group != h.group or g.group.kind != REAL_LINE:
        raise ValueError("compare_real requires two elements of one real line")
    diff = tuple(a - b for a, b in zip(g.coords, h.coords))
    if all(c == 0 for c in diff):
        return Comparison.EQUAL
    basis = g.group.basis
    enclosures = {i: (s.lo, s.hi) for i, s in enumerate(basis) if diff[i] != 0}
    for _ in range(depth + 1):
        lo_total = Fraction(0)
        hi_total = Fraction(0)
        for i, (lo, hi) in enclosures.items():
            c = diff[i]
            lo_total += min(c * lo, c * hi)
            hi_total += max(c * lo, c * hi)
        if lo_total > 0:
            return Comparison.GREATER
        if hi_total < 0:
            return Comparison.LESS
        progressed = False
        for i in list(enclosures):
            refine = (refiners or {}).get(basis[i].name)
            if refine is None:
                continue
            lo, hi = enclosures[i]
            nlo, nhi = refine(lo, hi)
            if nlo < lo or nhi > hi or nlo > nhi:
                raise ValueError(
                    f"refiner for {basis[i].name!r} returned a non-subinterval"
                )
            if nhi - nlo < hi - lo:
                progressed = True
            enclosures[i] = (nlo, nhi)
        if not progressed:
            break
    raise PrecisionError(
        "enclosures too coarse to separate a provably nonzero value",
        module="gamma_core",
        query={"difference": element_to_json(g - h)},
    )


@dataclass(frozen=True)
class Comparator:
    """Bundles the precision budget and refiners for real-line comparisons."""

    depth: int = DEFAULT_PRECISION_DEPTH
    refiners: tuple = ()  # tuple of (symbol name, refiner) pairs

    def _refiner_map(self):
        return dict(self.refiners) if self.refiners else None

    def compare(self, g: GroupElement, h: GroupElement) -> Comparison:
        return compare_real(g, h, self.depth, self._refiner_map())

    def sign(self, g: GroupElement) -> Comparison:
        return self.compare(g, g.group.zero())

    def lt(self, g, h) -> bool:
        return self.compare(g, h) is Comparison.LESS

    def le(self, g, h) -> bool:
        return self.compare(g, h) is not Comparison.GREATER

    def min(self, g, h):
        return g if self.le(g, h) else h

    def max(self, g, h):
        return h if self.le(g, h) else g

    def sorted(self, elements):
        import functools

        return sorted(
            elements, key=functools.cmp_to_key(lambda a, b: int(self.compare(a, b)))
        )


DEFAULT_COMPARATOR = Comparator()


@dataclass(frozen=True)
class OmegaData:
    """The weight list defining a quasi-free action.

    In finite mode the alphabet has exactly n = len(weights) letters.  In
    infinite mode the listed weights recur with infinite multiplicity; all
    letter-indexed operations quantify over the listed family.
    """

    weights: tuple[GroupElement, ...]
    infinite: bool = False

    def __post_init__(self):
        if not self.weights:
            raise ValueError("weight list must be nonempty")
        group = self.weights[0].group
        if any(w.group != group for w in self.weights):
            raise ValueError("all weights must belong to one group")
        if not self.infinite and len(self.weights) < 2:
            raise ValueError("finite alphabet needs n >= 2 weights")

    @property
    def group(self) -> GroupDescriptor:
        return self.weights[0].group

    @property
    def n(self) -> int:
        return len(self.weights)

    def extended(self, extra: GroupElement) -> "OmegaData":
        return OmegaData(self.weights + (extra,), self.infinite)


def combine(counts, omega: OmegaData) -> GroupElement:
    """Evaluate sum_i counts[i] * weight_i exactly in the group."""
    counts = tuple(counts)
    if len(counts) != omega.n:
        raise ValueError(
            f"count vector has length {len(counts)}, expected {omega.n}"
        )
    total = omega.group.zero()
    for c, w in zip(counts, omega.weights):
        if c:
            total = total + int(c) * w
    return total


# -- serialization -----------------------------------------------------------


def descriptor_to_json(g: GroupDescriptor) -> dict:
    if g.kind == DISCRETE:
        return {"kind": DISCRETE, "free_rank": g.free_rank, "torsion": list(g.torsion)}
    return {
        "kind": REAL_LINE,
        "basis": [
            {"name": s.name, "lo": fraction_str(s.lo), "hi": fraction_str(s.hi)}
            for s in g.basis
        ],
    }


def descriptor_from_json(data: dict) -> GroupDescriptor:
    kind = data.get("kind")
    if kind == DISCRETE:
        return GroupDescriptor(
            DISCRETE,
            free_rank=int(data.get("free_rank", 0)),
            torsion=tuple(int(m) for m in data.get("torsion", [])),
        )
    if kind == REAL_LINE:
        basis = tuple(
            BasisSymbol(b["name"], parse_fraction(b["lo"]), parse_fraction(b["hi"]))
            for b in data["basis"]
        )
        return GroupDescriptor(REAL_LINE, basis=basis)
    raise FeatureError(f"unsupported group kind {kind!r}", module="gamma_core")


def element_to_json(x: GroupElement):
    if x.group.kind == DISCRETE:
        return list(x.free) + list(x.torsion)
    return [fraction_str(c) for c in x.coords]


def element_from_json(group: GroupDescriptor, data) -> GroupElement:
    if group.kind == DISCRETE:
        d = group.free_rank
        entries = list(data)
        if len(entries) != d + len(group.torsion):
            raise ValueError("element array has wrong length")
        return group.element(entries[:d], entries[d:])
    return group.real_element(data)


def render_element(x: GroupElement) -> str:
    """Compact point syntax used inside chi{...} labels."""
    if x.group.kind == DISCRETE:
        entries = list(x.free) + list(x.torsion)
    else:
        entries = [fraction_str(c) for c in x.coords]
    if len(entries) == 1:
        return str(entries[0])
    return "(" + ",".join(str(e) for e in entries) + ")"


def omega_to_json(omega: OmegaData) -> dict:
    return {
        "weights": [element_to_json(w) for w in omega.weights],
        "alphabet": "infinite_repetition" if omega.infinite else "finite",
    }


def omega_from_json(group: GroupDescriptor, data: dict) -> OmegaData:
    weights = tuple(element_from_json(group, w) for w in data["weights"])
    infinite = data.get("alphabet", "finite") == "infinite_repetition"
    return OmegaData(weights, infinite)

"""Exactly represented compactly supported functions on the dual group.

Discrete groups: finitely supported maps point -> Gaussian rational.
Real line: step functions on disjoint half-open intervals [lo, hi) whose
endpoints are symbolic group elements, kept in a canonical merged form so
that equality of functions is literal equality of representations.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .groups import (
    DISCRETE,
    REAL_LINE,
    Comparator,
    Comparison,
    GroupDescriptor,
    GroupElement,
    render_element,
)
from .scalars import GaussianRational, ONE, ZERO


@dataclass(frozen=True)
class Interval:
    """Half-open interval [lo, hi) with symbolic real endpoints."""

    lo: GroupElement
    hi: GroupElement

    def shifted(self, gamma: GroupElement) -> "Interval":
        return Interval(self.lo - gamma, self.hi - gamma)


class FiniteFunction:
    """Immutable by convention; all operations return fresh instances."""

    __slots__ = ("group", "points", "pieces")

    def __init__(self, group: GroupDescriptor, points=None, pieces=None):
        self.group = group
        self.points = points  # dict[GroupElement, GaussianRational] | None
        self.pieces = pieces  # tuple[(Interval, GaussianRational), ...] | None

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(group: GroupDescriptor) -> "FiniteFunction":
        if group.kind == DISCRETE:
            return FiniteFunction(group, points={})
        return FiniteFunction(group, pieces=())

    @staticmethod
    def from_points(group: GroupDescriptor, mapping) -> "FiniteFunction":
        if group.kind != DISCRETE:
            raise ValueError("point support requires a discrete group")
        pts = {}
        for key, value in mapping.items():
            value = GaussianRational.of(value)
            if not value.is_zero():
                pts[key] = value
        return FiniteFunction(group, points=pts)

    @staticmethod
    def char_points(group: GroupDescriptor, points) -> "FiniteFunction":
        return FiniteFunction.from_points(group, {p: ONE for p in points})

    @staticmethod
    def from_pieces(group, raw_pieces, comparator: Comparator) -> "FiniteFunction":
        """Canonicalize a list of (Interval, value); intervals must not overlap."""
        if group.kind != REAL_LINE:
            raise ValueError("interval support requires the real line")
        pieces = []
        for interval, value in raw_pieces:
            value = GaussianRational.of(value)
            if value.is_zero():
                continue
            order = comparator.compare(interval.lo, interval.hi)
            if order is Comparison.EQUAL:
                continue
            if order is Comparison.GREATER:
                raise ValueError("interval endpoints out of order")
            pieces.append((interval, value))
        pieces.sort(
            key=functools.cmp_to_key(
                lambda a, b: int(comparator.compare(a[0].lo, b[0].lo))
            )
        )
        return FiniteFunction(group, pieces=_merge_sorted(pieces, comparator))

    @staticmethod
    def char_interval(group, interval: Interval, comparator: Comparator):
        return FiniteFunction.from_pieces(group, [(interval, ONE)], comparator)

    # -- structure -----------------------------------------------------------

    @property
    def is_discrete(self) -> bool:
        return self.points is not None

    def is_zero(self) -> bool:
        return not self.points if self.is_discrete else not self.pieces

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteFunction):
            return NotImplemented
        if self.group != other.group:
            return False
        if self.is_discrete:
            return self.points == other.points
        return self.pieces == other.pieces

    __hash__ = None

    def support_points(self):
        if not self.is_discrete:
            raise ValueError("point support applies to discrete groups")
        return set(self.points)

    def value_at(self, point: GroupElement, comparator: Comparator | None = None):
        if self.is_discrete:
            return self.points.get(point, ZERO)
        comparator = comparator or Comparator()
        return _value_on(self.pieces, point, comparator)

    # -- arithmetic ----------------------------------------------------------

    def add(self, other: "FiniteFunction", comparator=None) -> "FiniteFunction":
        return self._pointwise(other, lambda a, b: a + b, comparator)

    def sub(self, other: "FiniteFunction", comparator=None) -> "FiniteFunction":
        return self._pointwise(other, lambda a, b: a - b, comparator)

    def mul(self, other: "FiniteFunction", comparator=None) -> "FiniteFunction":
        return self._pointwise(other, lambda a, b: a * b, comparator)

    def scale(self, scalar) -> "FiniteFunction":
        scalar = GaussianRational.of(scalar)
        if scalar.is_zero():
            return FiniteFunction.zero(self.group)
        if self.is_discrete:
            return FiniteFunction(
                self.group,
                points={k: v * scalar for k, v in self.points.items()},
            )
        return FiniteFunction(
            self.group,
            pieces=tuple((iv, v * scalar) for iv, v in self.pieces),
        )

    def conjugate(self) -> "FiniteFunction":
        if self.is_discrete:
            return FiniteFunction(
                self.group, points={k: v.conjugate() for k, v in self.points.items()}
            )
        return FiniteFunction(
            self.group, pieces=tuple((iv, v.conjugate()) for iv, v in self.pieces)
        )

    def shift(self, gamma: GroupElement, comparator=None) -> "FiniteFunction":
        """The translate sigma_gamma f with (sigma_gamma f)(x) = f(x + gamma);
        the support moves to supp f - gamma."""
        if self.is_discrete:
            return FiniteFunction(
                self.group, points={k - gamma: v for k, v in self.points.items()}
            )
        # Shifting preserves ordering and disjointness; canonical form survives.
        return FiniteFunction(
            self.group,
            pieces=tuple((iv.shifted(gamma), v) for iv, v in self.pieces),
        )

    def sqrt(self) -> "FiniteFunction":
        """Pointwise exact square root; every value must be a rational square."""
        if self.is_discrete:
            return FiniteFunction(
                self.group, points={k: v.sqrt() for k, v in self.points.items()}
            )
        return FiniteFunction(
            self.group, pieces=tuple((iv, v.sqrt()) for iv, v in self.pieces)
        )

    def is_characteristic(self) -> bool:
        """All stored values equal 1 (so the function is a projection)."""
        values = (
            self.points.values() if self.is_discrete else (v for _, v in self.pieces)
        )
        return all(v == ONE for v in values)

    def _pointwise(self, other, op, comparator) -> "FiniteFunction":
        if self.group != other.group:
            raise ValueError("functions live on different groups")
        if self.is_discrete:
            out = {}
            for k in set(self.points) | set(other.points):
                v = op(self.points.get(k, ZERO), other.points.get(k, ZERO))
                if not v.is_zero():
                    out[k] = v
            return FiniteFunction(self.group, points=out)
        comparator = comparator or Comparator()
        pieces = []
        for lo, hi in _endpoint_grid(self.pieces, other.pieces, comparator):
            v = op(
                _value_on(self.pieces, lo, comparator),
                _value_on(other.pieces, lo, comparator),
            )
            if not v.is_zero():
                pieces.append((Interval(lo, hi), v))
        return FiniteFunction(self.group, pieces=_merge_sorted(pieces, comparator))

    def __repr__(self):
        if self.is_discrete:
            body = ", ".join(
                f"{render_element(k)}: {v}"
                for k, v in sorted(self.points.items(), key=lambda kv: kv[0].sort_key())
            )
        else:
            body = ", ".join(
                f"[{render_element(iv.lo)},{render_element(iv.hi)}): {v}"
                for iv, v in self.pieces
            )
        return f"FiniteFunction({{{body}}})"


def _merge_sorted(pieces, comparator):
    """Merge adjacent equal-valued pieces; verify disjointness."""
    merged = []
    for interval, value in pieces:
        if merged:
            prev_iv, prev_val = merged[-1]
            order = comparator.compare(prev_iv.hi, interval.lo)
            if order is Comparison.GREATER:
                raise ValueError("overlapping intervals in step function")
            if order is Comparison.EQUAL and prev_val == value:
                merged[-1] = (Interval(prev_iv.lo, interval.hi), value)
                continue
        merged.append((interval, value))
    return tuple(merged)


def _endpoint_grid(pieces_a, pieces_b, comparator):
    """Disjoint atoms refining the endpoints of both step functions."""
    endpoints = []
    for pieces in (pieces_a, pieces_b):
        for iv, _ in pieces:
            endpoints.extend((iv.lo, iv.hi))
    unique = []
    for p in endpoints:
        if all(p != q for q in unique):
            unique.append(p)
    unique = comparator.sorted(unique)
    return [(unique[i], unique[i + 1]) for i in range(len(unique) - 1)]


def _value_on(pieces, point, comparator):
    for iv, value in pieces:
        if (
            comparator.compare(point, iv.lo) is not Comparison.LESS
            and comparator.lt(point, iv.hi)
        ):
            return value
    return ZERO

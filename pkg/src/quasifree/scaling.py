"""Construction of scaling elements for discrete groups with full closure.

Given a finite set X containing 0 and a point outside it, the constructor
produces pairwise orthogonal words whose weight values cancel the points,
pairs them with characteristic functions (the outside point weighted 1/4 so
the total misses {0, 1}), and assembles x = sum_k S_{mu_k} f_k^(1/2).  The
scaling identities (x*x)(xx*) = xx* and x*x != xx* are then checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, Context
from .errors import PreconditionError
from .functions import FiniteFunction
from .groups import DISCRETE, GroupElement, OmegaData
from .semigroup import closure_covers_group
from .words import orthogonal_family, omega_of, prefix_relation, render_word

MODULE = "scaling_constructor"

OUTSIDE_VALUE = Fraction(1, 4)  # square of 1/2; keeps scalars Gaussian-rational


@dataclass(frozen=True)
class PartitionData:
    """Pairs (f_k, mu_k) satisfying, exactly:
    (i) the words are pairwise orthogonal;
    (ii) the f_k sum to 1 on X;
    (iii) the sum misses {0, 1} at the outside point;
    (iv) supp f_k + weight(mu_k) is contained in X for every k.
    """

    x_set: tuple[GroupElement, ...]
    outside: GroupElement
    pairs: tuple  # of (FiniteFunction, Word)


def _check_preconditions(omega: OmegaData, x_set, outside):
    if omega.group.kind != DISCRETE:
        raise PreconditionError(
            "scaling construction requires a discrete group", module=MODULE
        )
    if omega.group.zero() not in x_set:
        raise PreconditionError("X must contain 0", module=MODULE)
    if outside in x_set:
        raise PreconditionError("the outside point must avoid X", module=MODULE)
    cert = closure_covers_group(omega)
    if not cert.verdict:
        raise PreconditionError(
            "the weight semigroup must cover the whole group",
            module=MODULE,
            query=cert.to_json(),
        )


def partition_data(omega: OmegaData, x_set, outside: GroupElement) -> PartitionData:
    """One pair per point of X (value 1) plus the outside point (value 1/4);
    the word attached to a point has weight value equal to its negative."""
    x_points = []
    for p in x_set:
        if p not in x_points:
            x_points.append(p)
    x_points.sort(key=lambda p: p.sort_key())
    _check_preconditions(omega, x_points, outside)
    points = x_points + [outside]
    group = omega.group
    words = []
    for k, point in enumerate(points):
        # Orthogonality comes from distinct equal-length stems; rebuild the
        # family one target at a time so each word hits its own point.
        family = orthogonal_family(omega, len(points), [-point])
        words.append(family[k])
    pairs = []
    for point, word in zip(points, words):
        value = 1 if point != outside else OUTSIDE_VALUE
        f = FiniteFunction.from_points(group, {point: value})
        pairs.append((f, word))
    data = PartitionData(tuple(x_points), outside, tuple(pairs))
    _verify_partition(omega, data)
    return data


def _verify_partition(omega: OmegaData, data: PartitionData):
    group = omega.group
    pairs = data.pairs
    for i, (_, a) in enumerate(pairs):
        for _, b in list(pairs)[i + 1:]:
            if not prefix_relation(a, b).is_orthogonal:
                raise PreconditionError(
                    f"words {render_word(a)} and {render_word(b)} not orthogonal",
                    module=MODULE,
                )
    total = FiniteFunction.zero(group)
    for f, _ in pairs:
        total = total.add(f)
    from .scalars import ONE

    for point in data.x_set:
        if total.value_at(point) != ONE:
            raise PreconditionError(
                "partition does not sum to 1 on X", module=MODULE
            )
    outside_value = total.value_at(data.outside)
    if outside_value.im != 0 or outside_value.re in (0, 1):
        raise PreconditionError(
            "outside value must miss {0, 1}", module=MODULE
        )
    for f, w in pairs:
        shifted_support = {
            p + omega_of(w, omega) for p in f.support_points()
        }
        if not shifted_support <= set(data.x_set):
            raise PreconditionError(
                f"support condition fails for word {render_word(w)}",
                module=MODULE,
            )


@dataclass
class ScalingReport:
    element: AlgebraElement
    left_support: AlgebraElement    # x*x
    right_support: AlgebraElement   # xx*
    checks: dict

    def to_json(self) -> dict:
        from .expr import render_element

        return {
            "element": render_element(self.element),
            "x_star_x": render_element(self.left_support),
            "x_x_star": render_element(self.right_support),
            "checks": self.checks,
        }


def scaling_element(omega: OmegaData, x_set, outside: GroupElement,
                    ctx: Context | None = None):
    """Assemble and verify a scaling element from the partition data.

    All function values are squares of rationals by construction, so the
    square roots stay exact.
    """
    data = partition_data(omega, x_set, outside)
    ctx = ctx or Context(omega)
    x = AlgebraElement.zero(ctx)
    for f, w in data.pairs:
        x = x + AlgebraElement.monomial(ctx, w, f.sqrt(), ())
    left = x.adjoint() * x          # sum of the f_k
    right = x * x.adjoint()
    expected_left = AlgebraElement.zero(ctx)
    for f, _ in data.pairs:
        expected_left = expected_left + AlgebraElement.from_function(ctx, f)
    checks = {
        "x_star_x_is_partition_sum": left == expected_left,
        "scaling_identity": left * right == right,
        "supports_differ": left != right,
    }
    report = ScalingReport(x, left, right, checks)
    if not all(checks.values()):
        from .errors import InternalCheckError

        raise InternalCheckError(
            "scaling identities failed", module=MODULE, query=report.to_json()
        )
    return x, report

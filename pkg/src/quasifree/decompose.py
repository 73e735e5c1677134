"""Finite-dimensional decomposition of the algebra generated by a finite
region family: the shift bound, the seed projection, the surviving summand
projections, their tiling identities, and the matrix-unit report.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import (
    AlgebraElement,
    Context,
    is_projection,
    mul_word_left,
    mul_word_star_left,
    rho_k,
    word_conjugate,
)
from .classify import af_criterion
from .errors import (
    ConstructionError,
    InternalCheckError,
    PreconditionError,
    ResourceLimitError,
)
from .functions import FiniteFunction, Interval
from .groups import (
    DISCRETE,
    Comparator,
    Comparison,
    GroupDescriptor,
    GroupElement,
    OmegaData,
)
from .semigroup import zero_word_exists
from .words import enumerate_words, render_word

MODULE = "af_builder"

DEFAULT_NODE_CAP = 10**6


@dataclass(frozen=True)
class RegionFamily:
    """A finite family of base regions together with the minimal projections
    of the algebra they generate (grouped by membership pattern) and its unit."""

    group: GroupDescriptor
    regions: tuple
    minimal: tuple          # p_1 .. p_L, pairwise disjoint characteristic functions
    unit: FiniteFunction    # p = p_1 + ... + p_L

    @property
    def size(self) -> int:
        return len(self.minimal)


def region_family(group: GroupDescriptor, regions,
                  comparator: Comparator | None = None) -> RegionFamily:
    """Build the region algebra data from explicit points (discrete) or
    half-open intervals (real line)."""
    comparator = comparator or Comparator()
    if not regions:
        raise PreconditionError("need at least one region", module=MODULE)
    if group.kind == DISCRETE:
        points = []
        for p in regions:
            if not isinstance(p, GroupElement):
                raise ValueError("discrete regions are group elements (points)")
            if p not in points:
                points.append(p)
        points.sort(key=lambda p: p.sort_key())
        minimal = tuple(FiniteFunction.char_points(group, [p]) for p in points)
        unit = FiniteFunction.char_points(group, points)
        return RegionFamily(group, tuple(points), minimal, unit)
    # Real line: refine the intervals into atoms and group atoms that share a
    # membership pattern; the generated algebra cannot separate those.
    intervals = list(regions)
    endpoints = []
    for iv in intervals:
        if comparator.compare(iv.lo, iv.hi) is not Comparison.LESS:
            raise ValueError("empty or reversed interval region")
        endpoints.extend((iv.lo, iv.hi))
    unique = []
    for p in endpoints:
        if all(p != q for q in unique):
            unique.append(p)
    unique = comparator.sorted(unique)
    patterns: dict[tuple, list] = {}
    for lo, hi in zip(unique, unique[1:]):
        pattern = tuple(
            comparator.compare(lo, iv.lo) is not Comparison.LESS
            and comparator.lt(lo, iv.hi)
            for iv in intervals
        )
        if any(pattern):
            patterns.setdefault(pattern, []).append(Interval(lo, hi))
    minimal = tuple(
        FiniteFunction.from_pieces(group, [(iv, 1) for iv in atoms], comparator)
        for _, atoms in sorted(patterns.items())
    )
    unit = FiniteFunction.zero(group)
    for m in minimal:
        unit = unit.add(m, comparator)
    return RegionFamily(group, tuple(intervals), minimal, unit)


def _difference_set(family: RegionFamily, comparator: Comparator):
    if family.group.kind == DISCRETE:
        points = family.regions
        return {a - b for a in points for b in points}
    # Differences of half-open intervals are open intervals (lo-hi', hi-lo').
    diffs = []
    for a in family.regions:
        for b in family.regions:
            diffs.append((a.lo - b.hi, a.hi - b.lo))
    return diffs


def _value_in_open_diff(value, diffs, comparator) -> bool:
    for lo, hi in diffs:
        if comparator.compare(value, lo) is Comparison.GREATER and comparator.lt(
            value, hi
        ):
            return True
    return False


def shift_bound(family: RegionFamily, omega: OmegaData,
                comparator: Comparator | None = None,
                node_cap: int = DEFAULT_NODE_CAP) -> int:
    """The least K with no word of length > K taking its weight value in the
    difference set of the region support.

    Requires the embeddability criterion; otherwise arbitrarily long words
    return to the difference set and no bound exists.
    """
    comparator = comparator or Comparator()
    cond, reports = af_criterion(omega, comparator)
    if not cond:
        witness = None
        if omega.group.kind == DISCRETE:
            relation = zero_word_exists(omega)
            witness = list(relation.counts) if relation else None
        raise ConstructionError(
            "no shift bound: some inverse weight lies in the closure",
            module=MODULE,
            query={"zero_word": witness, "reports": reports},
        )
    diffs = _difference_set(family, comparator)
    n = omega.n
    best = 0
    visited = 0
    if omega.group.kind == DISCRETE:
        from .semigroup import member

        member_cache: dict[GroupElement, bool] = {}

        def reachable(target: GroupElement) -> bool:
            if target not in member_cache:
                member_cache[target] = member(target, omega) is not None
            return member_cache[target]

        def completable(value: GroupElement) -> bool:
            return any(reachable(d - value) for d in diffs)

        def qualifies(value: GroupElement) -> bool:
            return value in diffs
    else:
        signs = [int(comparator.sign(w)) for w in omega.weights]
        positive = all(s > 0 for s in signs)
        bounds = [hi for _, hi in diffs] if positive else [lo for lo, _ in diffs]

        def completable(value: GroupElement) -> bool:
            # Same-signed weights move monotonically; completion is possible
            # only while some difference piece is still ahead of the value.
            if positive:
                return any(comparator.lt(value, hi) for hi in bounds)
            return any(comparator.lt(lo, value) for lo in bounds)

        def qualifies(value: GroupElement) -> bool:
            return _value_in_open_diff(value, diffs, comparator)

    def dfs(first_letter: int, counts: list[int], value: GroupElement, total: int):
        nonlocal best, visited
        visited += 1
        if visited > node_cap:
            raise ResourceLimitError(
                f"shift bound search exceeded {node_cap} nodes", module=MODULE
            )
        if total >= 1 and qualifies(value):
            best = max(best, total)
        for i in range(first_letter, n):
            counts[i] += 1
            child = value + omega.weights[i]
            if completable(child):
                dfs(i, counts, child, total + 1)
            counts[i] -= 1

    dfs(0, [0] * n, omega.group.zero(), 0)
    return best


def seed_projection(family: RegionFamily, ctx: Context, K: int) -> AlgebraElement:
    """q = (prod_{k=1..K} (1 - rho_k(p))) p, expanded exactly."""
    p_elt = AlgebraElement.from_function(ctx, family.unit)
    q = p_elt
    for k in range(K, 0, -1):
        q = q - rho_k(p_elt, k) * q
    if not is_projection(q):
        raise InternalCheckError("seed element is not a projection", module=MODULE)
    if q * p_elt != q:
        raise InternalCheckError("seed projection not dominated by the unit",
                                 module=MODULE)
    for k in range(1, K + 1):
        if not (q * rho_k(p_elt, k)).is_zero():
            raise InternalCheckError(
                f"seed projection meets the level-{k} translate of the unit",
                module=MODULE,
            )
    return q


def summand_split(family: RegionFamily, ctx: Context, q: AlgebraElement, K: int,
                  node_cap: int = DEFAULT_NODE_CAP):
    """Enumerate the label maps tau : {words of length <= K} -> {0..L} whose
    cut-down of q survives, with early pruning on zero partial products.

    Returns (taus, projections) where taus[j] maps each word to its label and
    projections[j] is the corresponding nonzero projection q_tau.
    """
    cmp = ctx.comparator
    words = enumerate_words(ctx.omega.n, K)
    shifted: list[list] = []
    for w in words:
        gamma = ctx.weight_of(w)
        row = [family.unit.shift(gamma, cmp)]  # label 0 uses 1 - this entry
        row.extend(m.shift(gamma, cmp) for m in family.minimal)
        shifted.append(row)
    taus: list[dict] = []
    projections: list[AlgebraElement] = []
    visited = 0

    def cut(x: AlgebraElement, depth: int, label: int) -> AlgebraElement:
        scaled = x * AlgebraElement.from_function(ctx, shifted[depth][label])
        return x - scaled if label == 0 else scaled

    def descend(depth: int, x: AlgebraElement, labels: list[int]):
        nonlocal visited
        visited += 1
        if visited > node_cap:
            raise ResourceLimitError(
                f"label enumeration exceeded {node_cap} nodes", module=MODULE
            )
        if depth == len(words):
            taus.append({w: l for w, l in zip(words, labels)})
            projections.append(x)
            return
        for label in range(family.size + 1):
            y = cut(x, depth, label)
            if not y.is_zero():
                descend(depth + 1, y, labels + [label])

    descend(0, q, [])
    total = AlgebraElement.zero(ctx)
    for proj in projections:
        total = total + proj
    if total != q:
        raise InternalCheckError("summand projections do not sum to the seed",
                                 module=MODULE)
    for j, a in enumerate(projections):
        if not is_projection(a):
            raise InternalCheckError(f"summand {j} is not a projection",
                                     module=MODULE)
        for b in projections[j + 1:]:
            if not (a * b).is_zero():
                raise InternalCheckError("summand projections are not orthogonal",
                                         module=MODULE)
    return taus, projections


def verify_tiling(family: RegionFamily, ctx: Context, q: AlgebraElement, K: int,
                  taus, projections) -> dict:
    """Exact self-checks of the tiling identities.

    - q S_w q = 0 for every nonempty word with |w| <= K+1;
    - the translates of q over words of length <= K cover the unit:
      sum_w S_w q S_w* p = p;
    - the labelled cut-downs are orthogonal, sum to q, and satisfy the
      label-reading identity S_w q_tau S_w* p_l = [tau(w) = l] S_w q_tau S_w*.
    """
    cmp = ctx.comparator
    words = enumerate_words(ctx.omega.n, K)
    p_elt = AlgebraElement.from_function(ctx, family.unit)
    report = {"orthogonality_checks": 0, "cover_check": False,
              "label_checks": 0}
    for w in enumerate_words(ctx.omega.n, K + 1):
        if not w:
            continue
        if not (q * mul_word_left(w, q)).is_zero():
            raise InternalCheckError(
                f"translate overlap at word {render_word(w)}", module=MODULE
            )
        report["orthogonality_checks"] += 1
    cover = AlgebraElement.zero(ctx)
    for w in words:
        cover = cover + word_conjugate(q, w)
    if cover * p_elt != p_elt:
        raise InternalCheckError("translates of the seed fail to cover the unit",
                                 module=MODULE)
    report["cover_check"] = True
    for tau, proj in zip(taus, projections):
        for w in words:
            conj = word_conjugate(proj, w)
            for l in range(1, family.size + 1):
                expected = conj if tau[w] == l else AlgebraElement.zero(ctx)
                got = conj * AlgebraElement.from_function(ctx, family.minimal[l - 1])
                if got != expected:
                    raise InternalCheckError(
                        f"label identity failed at word {render_word(w)}, "
                        f"label {l}",
                        module=MODULE,
                    )
                report["label_checks"] += 1
    return report


@dataclass
class DecompositionReport:
    shift_bound: int
    words: list
    taus: list
    seed: AlgebraElement
    summands: list
    relation_checks: int
    recovery_checks: int
    tiling: dict
    log: list = field(default_factory=list)

    @property
    def summand_count(self) -> int:
        return len(self.summands)

    def dot(self) -> str:
        from .expr import render_element

        lines = ["graph summands {"]
        for j, proj in enumerate(self.summands):
            label = render_element(proj).replace('"', r"\"")
            lines.append(f'  t{j} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines)

    def to_json(self) -> dict:
        from .expr import render_element

        return {
            "shift_bound": self.shift_bound,
            "words": [render_word(w) for w in self.words],
            "summand_count": self.summand_count,
            "taus": [
                {render_word(w): l for w, l in tau.items()} for tau in self.taus
            ],
            "seed": render_element(self.seed),
            "summands": [render_element(x) for x in self.summands],
            "relation_checks": self.relation_checks,
            "recovery_checks": self.recovery_checks,
            "tiling": self.tiling,
            "log": self.log,
        }


def matrix_unit_report(family: RegionFamily, ctx: Context,
                       truncation: int | None = None,
                       node_cap: int = DEFAULT_NODE_CAP) -> DecompositionReport:
    """Build everything and verify the matrix-unit relations up to the
    truncation length (default K+1).

    The relation is checked in its collision-core form
    q_tau1 (S_mu* S_nu) q_tau2 = [mu = nu][tau1 = tau2] q_tau1 for all words
    mu, nu up to the truncation; outer letters act formally on the keys, so
    this core is exactly the content of the matrix-unit identity.  Generator
    recovery p_l = sum over tau(w) = l of S_w q_tau S_w* is also exact.
    """
    omega = ctx.omega
    K = shift_bound(family, omega, ctx.comparator, node_cap)
    if truncation is None:
        truncation = K + 1
    if truncation < K:
        raise PreconditionError("truncation must be at least the shift bound",
                                module=MODULE)
    q = seed_projection(family, ctx, K)
    taus, projections = summand_split(family, ctx, q, K, node_cap)
    tiling = verify_tiling(family, ctx, q, K, taus, projections)
    log = [
        f"shift bound K = {K}",
        f"summands |J| = {len(projections)}",
    ]
    check_words = enumerate_words(omega.n, truncation)
    relation_checks = 0
    for j1, q1 in enumerate(projections):
        for j2, q2 in enumerate(projections):
            for mu in check_words:
                for nu in check_words:
                    middle = mul_word_star_left(mu, mul_word_left(nu, q2))
                    got = q1 * middle
                    expected = (
                        q1 if (mu == nu and j1 == j2)
                        else AlgebraElement.zero(ctx)
                    )
                    if got != expected:
                        raise InternalCheckError(
                            "matrix unit relation failed at "
                            f"tau{j1}, tau{j2}, {render_word(mu)}, {render_word(nu)}",
                            module=MODULE,
                        )
                    relation_checks += 1
    log.append(f"matrix unit relation checks: {relation_checks}")
    words = enumerate_words(omega.n, K)
    recovery_checks = 0
    for l in range(1, family.size + 1):
        total = AlgebraElement.zero(ctx)
        for tau, proj in zip(taus, projections):
            for w in words:
                if tau[w] == l:
                    total = total + word_conjugate(proj, w)
        if total != AlgebraElement.from_function(ctx, family.minimal[l - 1]):
            raise InternalCheckError(
                f"generator recovery failed for minimal projection {l}",
                module=MODULE,
            )
        recovery_checks += 1
    log.append(f"generator recoveries: {recovery_checks}")
    return DecompositionReport(
        shift_bound=K,
        words=words,
        taus=taus,
        seed=q,
        summands=projections,
        relation_checks=relation_checks,
        recovery_checks=recovery_checks,
        tiling=tiling,
        log=log,
    )

"""Exact canonical-form arithmetic in the dense span of S_mu f S_nu* terms.

The canonical form keeps every function in the middle slot: commuting a
function past generator letters uses f S_mu = S_mu sigma_{w_mu} f, and
adjacent S_nu* S_mu factors resolve through the prefix calculus.  Equality
of elements is literal equality of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import FeatureError, ResourceLimitError
from .functions import FiniteFunction, Interval
from .groups import Comparator, GroupDescriptor, GroupElement, OmegaData
from .scalars import GaussianRational, ONE as SCALAR_ONE
from .words import Word, EMPTY, omega_of, prefix_relation, LEFT_DIVIDES, RIGHT_DIVIDES

DEFAULT_MAX_TERMS = 10**6


@dataclass(frozen=True)
class Context:
    """Shared read-only data for algebra computations."""

    omega: OmegaData
    max_terms: int = DEFAULT_MAX_TERMS
    comparator: Comparator = field(default_factory=Comparator)

    @property
    def group(self) -> GroupDescriptor:
        return self.omega.group

    def weight_of(self, word: Word) -> GroupElement:
        return omega_of(word, self.omega)


@dataclass(frozen=True)
class Gen:
    """Formal factor S_i."""

    index: int


@dataclass(frozen=True)
class GenStar:
    """Formal factor S_i*."""

    index: int


class AlgebraElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: Context, terms: dict):
        self.ctx = ctx
        self.terms = {key: f for key, f in terms.items() if not f.is_zero()}
        if len(self.terms) > ctx.max_terms:
            raise ResourceLimitError(
                f"element grew past {ctx.max_terms} terms", module="star_algebra"
            )

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(ctx: Context) -> "AlgebraElement":
        return AlgebraElement(ctx, {})

    @staticmethod
    def from_function(ctx: Context, f: FiniteFunction) -> "AlgebraElement":
        return AlgebraElement(ctx, {(EMPTY, EMPTY): f})

    @staticmethod
    def monomial(ctx: Context, mu: Word, f: FiniteFunction, nu: Word):
        return AlgebraElement(ctx, {(tuple(mu), tuple(nu)): f})

    # -- linear structure ----------------------------------------------------

    def _accumulate(self, out: dict, key, f: FiniteFunction):
        if key in out:
            g = out[key].add(f, self.ctx.comparator)
            if g.is_zero():
                del out[key]
            else:
                out[key] = g
        elif not f.is_zero():
            out[key] = f

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        out = dict(self.terms)
        for key, f in other.terms.items():
            self._accumulate(out, key, f)
        return AlgebraElement(self.ctx, out)

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-SCALAR_ONE)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def scale(self, scalar) -> "AlgebraElement":
        scalar = GaussianRational.of(scalar)
        if scalar.is_zero():
            return AlgebraElement.zero(self.ctx)
        return AlgebraElement(
            self.ctx, {key: f.scale(scalar) for key, f in self.terms.items()}
        )

    def _check_compatible(self, other: "AlgebraElement"):
        if self.ctx.omega != other.ctx.omega:
            raise ValueError("elements built over different weight data")

    # -- multiplicative structure ---------------------------------------------

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        """Bilinear extension of the term product

        (S_mu f S_nu*)(S_alpha g S_beta*) =
            S_(mu rho) (sigma_{w_rho} f) g S_beta*   when alpha = nu rho,
            S_mu f (sigma_{w_rho} g) S_(beta rho)*   when nu = alpha rho,
            0                                         otherwise.
        """
        self._check_compatible(other)
        cmp = self.ctx.comparator
        out: dict = {}
        for (mu, nu), f in self.terms.items():
            for (alpha, beta), g in other.terms.items():
                rel = prefix_relation(nu, alpha)
                if rel.kind == LEFT_DIVIDES:
                    rho = rel.remainder
                    if rho:
                        h = f.shift(self.ctx.weight_of(rho), cmp).mul(g, cmp)
                        key = (mu + rho, beta)
                    else:
                        h = f.mul(g, cmp)
                        key = (mu, beta)
                elif rel.kind == RIGHT_DIVIDES:
                    rho = rel.remainder
                    h = f.mul(g.shift(self.ctx.weight_of(rho), cmp), cmp)
                    key = (mu, beta + rho)
                else:
                    continue
                self._accumulate(out, key, h)
        return AlgebraElement(self.ctx, out)

    def adjoint(self) -> "AlgebraElement":
        return AlgebraElement(
            self.ctx,
            {(nu, mu): f.conjugate() for (mu, nu), f in self.terms.items()},
        )

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.ctx.omega == other.ctx.omega and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        from .expr import render_element

        return f"<{render_element(self)}>"


def is_projection(x: AlgebraElement) -> bool:
    return x == x.adjoint() and x == x * x


def is_partial_isometry(x: AlgebraElement) -> bool:
    return x * x.adjoint() * x == x


def gauge_expectation(x: AlgebraElement) -> AlgebraElement:
    """Keep exactly the terms with |mu| = |nu| (the circle-average projection)."""
    return AlgebraElement(
        x.ctx,
        {key: f for key, f in x.terms.items() if len(key[0]) == len(key[1])},
    )


def shift_element(x: AlgebraElement, gamma: GroupElement) -> AlgebraElement:
    """Apply sigma_gamma to every middle function (entrywise translation)."""
    cmp = x.ctx.comparator
    return AlgebraElement(
        x.ctx, {key: f.shift(gamma, cmp) for key, f in x.terms.items()}
    )


def rho_k(x: AlgebraElement, k: int) -> AlgebraElement:
    """The conjugation sum over all words of length k:
    rho_k(x) = sum_{|w|=k} S_w x S_w*."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return x
    n = x.ctx.omega.n
    if n**k * max(len(x.terms), 1) > x.ctx.max_terms:
        raise ResourceLimitError(
            f"rho_{k} expansion exceeds {x.ctx.max_terms} terms",
            module="star_algebra",
        )
    from itertools import product

    out: dict = {}
    for w in product(range(1, n + 1), repeat=k):
        for (mu, nu), f in x.terms.items():
            out[(w + mu, w + nu)] = f
    return AlgebraElement(x.ctx, out)


def word_conjugate(x: AlgebraElement, w: Word) -> AlgebraElement:
    """S_w x S_w* (keys gain the prefix w; functions are untouched)."""
    w = tuple(w)
    return AlgebraElement(
        x.ctx, {(w + mu, w + nu): f for (mu, nu), f in x.terms.items()}
    )


def balanced_expand(x: AlgebraElement, level: int) -> AlgebraElement:
    """Rewrite every balanced term below the level through the completeness
    relation sum_i S_i S_i* = 1, so balanced terms all sit at |mu| = |nu| =
    level.  Only finite alphabets carry the relation; unbalanced terms are
    kept as they are."""
    if x.ctx.omega.infinite:
        raise FeatureError(
            "the completeness relation is unavailable with an infinite alphabet",
            module="star_algebra",
        )
    from itertools import product

    n = x.ctx.omega.n
    cmp = x.ctx.comparator
    out: dict = {}
    zero = AlgebraElement.zero(x.ctx)
    for (mu, nu), f in x.terms.items():
        if len(mu) == len(nu) and len(mu) < level:
            gap = level - len(mu)
            if n**gap * max(len(x.terms), 1) > x.ctx.max_terms:
                raise ResourceLimitError(
                    "balanced expansion exceeds the term cap", module="star_algebra"
                )
            for w in product(range(1, n + 1), repeat=gap):
                zero._accumulate(
                    out, (mu + w, nu + w), f.shift(x.ctx.weight_of(w), cmp)
                )
        else:
            zero._accumulate(out, (mu, nu), f)
    return AlgebraElement(x.ctx, out)


# -- multiplier-algebra word sums ---------------------------------------------


class MultiplierWordSum:
    """Finite sum of constant-coefficient S_mu S_nu* terms (multiplier picture)."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = {
            key: GaussianRational.of(c)
            for key, c in terms.items()
            if not GaussianRational.of(c).is_zero()
        }

    @staticmethod
    def identity() -> "MultiplierWordSum":
        return MultiplierWordSum({(EMPTY, EMPTY): SCALAR_ONE})

    def adjoint(self) -> "MultiplierWordSum":
        return MultiplierWordSum(
            {(nu, mu): c.conjugate() for (mu, nu), c in self.terms.items()}
        )

    def __mul__(self, other: "MultiplierWordSum") -> "MultiplierWordSum":
        out: dict = {}
        for (mu, nu), c in self.terms.items():
            for (alpha, beta), d in other.terms.items():
                rel = prefix_relation(nu, alpha)
                if rel.kind == LEFT_DIVIDES:
                    key = (mu + rel.remainder, beta)
                elif rel.kind == RIGHT_DIVIDES:
                    key = (mu, beta + rel.remainder)
                else:
                    continue
                out[key] = out.get(key, GaussianRational()) + c * d
        return MultiplierWordSum(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiplierWordSum):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def expanded(self, n: int, level: int) -> "MultiplierWordSum":
        """Expand through sum_i S_i S_i* = 1 until every term in each degree
        class |mu| - |nu| has |nu| = level (finite alphabets only)."""
        from itertools import product

        out: dict = {}
        for (mu, nu), c in self.terms.items():
            gap = level - len(nu)
            if gap < 0:
                raise ValueError("expansion level below an existing term")
            for w in product(range(1, n + 1), repeat=gap):
                key = (mu + w, nu + w)
                out[key] = out.get(key, GaussianRational()) + c
        return MultiplierWordSum(out)

    def equals_in_algebra(self, other: "MultiplierWordSum", n: int,
                          infinite: bool = False) -> bool:
        """Equality modulo the completeness relation (literal when infinite)."""
        if infinite:
            return self == other
        by_degree: dict[int, int] = {}
        for ws in (self, other):
            for (mu, nu) in ws.terms:
                d = len(mu) - len(nu)
                by_degree[d] = max(by_degree.get(d, 0), len(nu))
        for d, level in by_degree.items():
            mine = MultiplierWordSum(
                {k: c for k, c in self.terms.items() if len(k[0]) - len(k[1]) == d}
            )
            theirs = MultiplierWordSum(
                {k: c for k, c in other.terms.items() if len(k[0]) - len(k[1]) == d}
            )
            if mine.expanded(n, level) != theirs.expanded(n, level):
                return False
        return True

    def is_isometry(self, n: int, infinite: bool = False) -> bool:
        return (self.adjoint() * self).equals_in_algebra(
            MultiplierWordSum.identity(), n, infinite
        )


def _wordsum_times_element(u: MultiplierWordSum, x: AlgebraElement) -> AlgebraElement:
    cmp = x.ctx.comparator
    out: dict = {}
    zero = AlgebraElement.zero(x.ctx)
    for (a, b), c in u.terms.items():
        for (mu, nu), f in x.terms.items():
            rel = prefix_relation(b, mu)
            if rel.kind == LEFT_DIVIDES:          # mu = b rho
                key = (a + rel.remainder, nu)
                h = f.scale(c)
            elif rel.kind == RIGHT_DIVIDES:       # b = mu rho
                rho = rel.remainder
                key = (a, nu + rho)
                h = f.shift(x.ctx.weight_of(rho), cmp).scale(c)
            else:
                continue
            zero._accumulate(out, key, h)
    return AlgebraElement(x.ctx, out)


def _element_times_wordsum(x: AlgebraElement, u: MultiplierWordSum) -> AlgebraElement:
    cmp = x.ctx.comparator
    out: dict = {}
    zero = AlgebraElement.zero(x.ctx)
    for (mu, nu), f in x.terms.items():
        for (a, b), c in u.terms.items():
            rel = prefix_relation(nu, a)
            if rel.kind == LEFT_DIVIDES:          # a = nu rho
                rho = rel.remainder
                key = (mu + rho, b)
                h = f.shift(x.ctx.weight_of(rho), cmp).scale(c)
            elif rel.kind == RIGHT_DIVIDES:       # nu = a rho
                key = (mu, b + rel.remainder)
                h = f.scale(c)
            else:
                continue
            zero._accumulate(out, key, h)
    return AlgebraElement(x.ctx, out)


def multiplier_conjugate(u: MultiplierWordSum, x: AlgebraElement) -> AlgebraElement:
    """u* x u computed entirely at the word-calculus level."""
    return _wordsum_times_element(u.adjoint(), _element_times_wordsum(x, u))


def mul_word_left(w: Word, x: AlgebraElement) -> AlgebraElement:
    """S_w . x"""
    return _wordsum_times_element(MultiplierWordSum({(tuple(w), EMPTY): 1}), x)


def mul_word_star_left(w: Word, x: AlgebraElement) -> AlgebraElement:
    """S_w* . x"""
    return _wordsum_times_element(MultiplierWordSum({(EMPTY, tuple(w)): 1}), x)


def mul_word_right(x: AlgebraElement, w: Word) -> AlgebraElement:
    """x . S_w"""
    return _element_times_wordsum(x, MultiplierWordSum({(tuple(w), EMPTY): 1}))


# -- normalization of formal factor strings ------------------------------------


def normalize(ctx: Context, raw_terms) -> AlgebraElement:
    """Canonicalize a formal sum of factor strings.

    Each raw term is (scalar, factors) with factors drawn from Gen, GenStar,
    FiniteFunction and scalar-likes.  The empty sum yields the zero element.
    A nonzero function-free term lies in the multiplier picture, not in the
    span; for a finite group the constant function is materialized, anywhere
    else this is a feature error.
    """
    zero = AlgebraElement.zero(ctx)
    total = zero
    for scalar, factors in raw_terms:
        term = _normalize_term(ctx, scalar, factors)
        if term is not None:
            total = total + term
    return total


class _ConstantOne:
    """Middle-slot sentinel for the constant function 1."""


_ONE_SENTINEL = _ConstantOne()


def _normalize_term(ctx: Context, scalar, factors) -> AlgebraElement | None:
    cmp = ctx.comparator
    coeff = GaussianRational.of(scalar)
    mu: list[int] = []
    reversed_nu: list[int] = []
    middle = _ONE_SENTINEL
    for factor in factors:
        if coeff.is_zero():
            return None
        if isinstance(factor, Gen):
            i = factor.index
            if i < 1 or i > ctx.omega.n:
                raise ValueError(f"generator index {i} outside the alphabet")
            if reversed_nu:
                if reversed_nu[-1] == i:
                    reversed_nu.pop()
                else:
                    return None  # orthogonal letters annihilate the term
            else:
                mu.append(i)
                if not isinstance(middle, _ConstantOne):
                    middle = middle.shift(ctx.weight_of((i,)), cmp)
        elif isinstance(factor, GenStar):
            i = factor.index
            if i < 1 or i > ctx.omega.n:
                raise ValueError(f"generator index {i} outside the alphabet")
            reversed_nu.append(i)
        elif isinstance(factor, FiniteFunction):
            shifted = factor.shift(
                ctx.weight_of(tuple(reversed(reversed_nu))), cmp
            ) if reversed_nu else factor
            if isinstance(middle, _ConstantOne):
                middle = shifted
            else:
                middle = middle.mul(shifted, cmp)
        else:
            coeff = coeff * GaussianRational.of(factor)
    if coeff.is_zero():
        return None
    if isinstance(middle, _ConstantOne):
        middle = _materialize_one(ctx)
    middle = middle.scale(coeff)
    if middle.is_zero():
        return None
    nu = tuple(reversed(reversed_nu))
    return AlgebraElement.monomial(ctx, tuple(mu), middle, nu)


def _materialize_one(ctx: Context) -> FiniteFunction:
    group = ctx.group
    if group.is_finite:
        return FiniteFunction.char_points(group, group.iter_elements())
    raise FeatureError(
        "a function-free product lies in the multiplier algebra, "
        "not in the function span",
        module="star_algebra",
    )


# -- randomized elements (shared by the verify suite and the tests) -----------


def random_element(
    ctx: Context,
    rng,
    max_word_len: int = 3,
    radius: int = 5,
    n_terms: int = 2,
) -> AlgebraElement:
    """A small random element; discrete groups get point supports, the real
    line gets short random intervals."""
    group = ctx.group
    out = AlgebraElement.zero(ctx)
    for _ in range(n_terms):
        mu = _random_word(ctx, rng, max_word_len)
        nu = _random_word(ctx, rng, max_word_len)
        f = _random_function(ctx, rng, radius)
        out = out + AlgebraElement.monomial(ctx, mu, f, nu)
    return out


def _random_word(ctx, rng, max_len) -> Word:
    length = rng.randint(0, max_len)
    return tuple(rng.randint(1, ctx.omega.n) for _ in range(length))


def _random_function(ctx, rng, radius) -> FiniteFunction:
    from .groups import DISCRETE

    group = ctx.group
    values = [
        GaussianRational(Fraction(rng.randint(-2, 2), rng.choice((1, 2)))),
        GaussianRational(Fraction(0), Fraction(rng.randint(-1, 1))),
        GaussianRational(Fraction(1)),
    ]
    if group.kind == DISCRETE:
        pts = {}
        for _ in range(rng.randint(1, 2)):
            free = tuple(rng.randint(-radius, radius) for _ in range(group.free_rank))
            tors = tuple(rng.randint(0, m - 1) for m in group.torsion)
            pts[group.element(free, tors)] = rng.choice(values)
        return FiniteFunction.from_points(group, pts)
    lo_coeff = Fraction(rng.randint(-radius, radius), rng.choice((1, 2)))
    width = Fraction(rng.randint(1, radius))
    m = len(group.basis)
    lo = group.real_element([lo_coeff] + [Fraction(0)] * (m - 1))
    hi = group.real_element([lo_coeff + width] + [Fraction(0)] * (m - 1))
    return FiniteFunction.from_pieces(
        group, [(Interval(lo, hi), rng.choice(values))], ctx.comparator
    )

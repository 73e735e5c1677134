"""The element expression grammar: parser and canonical renderer.

    element := term (('+'|'-') term)*
    term    := factor (('*'|'.')? factor)*        ('.' is the middle dot)
    factor  := '-' factor | rational | 'i' | 'S[' ints ']' | 'S*[' ints ']'
             | 'chi{' points '}' | 'chi[' endpoint ',' endpoint ')'
             | '(' element ')'

Discrete points are integers or integer tuples (free part then torsion
residues); real endpoints are rationals or rational tuples over the declared
basis.  Rendering always produces a string this parser maps back to the same
canonical element.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraElement, Context, Gen, GenStar, normalize
from .functions import FiniteFunction, Interval
from .groups import DISCRETE, GroupElement, render_element as render_point
from .scalars import GaussianRational, I_UNIT

_TOKEN = re.compile(
    r"\s*(?:(?P<sstar>S\*\[)|(?P<s>S\[)|(?P<chiset>chi\{)|(?P<chiiv>chi\[)"
    r"|(?P<num>\d+)|(?P<name>i)|(?P<punct>[()\[\]{},+\-*/·]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot tokenize {text[pos:]!r}")
        pos = m.end()
        kind = m.lastgroup
        value = m.group(kind)
        tokens.append((kind, value))
    return tokens


class _Parser:
    def __init__(self, ctx: Context, tokens):
        self.ctx = ctx
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, expected=None):
        kind, value = self.peek()
        if kind is None:
            raise ValueError("unexpected end of expression")
        if expected is not None and value != expected:
            raise ValueError(f"expected {expected!r}, found {value!r}")
        self.pos += 1
        return kind, value

    # Terms are lists of (scalar, [factors]); sums concatenate, products
    # distribute pairwise.

    def parse(self):
        terms = self.expression()
        if self.pos != len(self.tokens):
            raise ValueError("trailing input after expression")
        return terms

    def expression(self):
        terms = self.term()
        while True:
            kind, value = self.peek()
            if value == "+":
                self.take()
                terms = terms + self.term()
            elif value == "-":
                self.take()
                terms = terms + _scale_terms(self.term(), GaussianRational.of(-1))
            else:
                return terms

    def term(self):
        terms = self.factor()
        while True:
            kind, value = self.peek()
            if value in ("*", "·"):
                self.take()
                terms = _multiply_terms(terms, self.factor())
            elif kind in ("sstar", "s", "chiset", "chiiv", "num", "name") or value == "(":
                terms = _multiply_terms(terms, self.factor())
            else:
                return terms

    def factor(self):
        kind, value = self.peek()
        if value == "-":
            self.take()
            return _scale_terms(self.factor(), GaussianRational.of(-1))
        if value == "(":
            self.take()
            inner = self.expression()
            self.take(")")
            return inner
        if kind == "num":
            return [(GaussianRational.of(self.rational()), [])]
        if kind == "name":
            self.take()
            return [(I_UNIT, [])]
        if kind == "s":
            self.take()
            letters = self.int_list("]")
            return [(GaussianRational.of(1), [Gen(i) for i in letters])]
        if kind == "sstar":
            self.take()
            letters = self.int_list("]")
            # S_(i1..ik)* = S_ik* ... S_i1*
            return [(GaussianRational.of(1), [GenStar(i) for i in reversed(letters)])]
        if kind == "chiset":
            self.take()
            points = []
            while True:
                points.append(self.point())
                k, v = self.take()
                if v == "}":
                    break
                if v != ",":
                    raise ValueError(f"expected ',' or '}}' in chi, found {v!r}")
            f = FiniteFunction.char_points(self.ctx.group, points)
            return [(GaussianRational.of(1), [f])]
        if kind == "chiiv":
            self.take()
            lo = self.endpoint()
            self.take(",")
            hi = self.endpoint()
            self.take(")")
            f = FiniteFunction.char_interval(
                self.ctx.group, Interval(lo, hi), self.ctx.comparator
            )
            return [(GaussianRational.of(1), [f])]
        raise ValueError(f"unexpected token {value!r}")

    def int_list(self, closer):
        out = []
        kind, value = self.peek()
        if value == closer:
            self.take()
            return out
        while True:
            out.append(self.signed_int())
            k, v = self.take()
            if v == closer:
                return out
            if v != ",":
                raise ValueError(f"expected ',' or {closer!r}, found {v!r}")

    def signed_int(self) -> int:
        sign = 1
        kind, value = self.peek()
        if value == "-":
            self.take()
            sign = -1
        kind, value = self.take()
        if kind != "num":
            raise ValueError(f"expected an integer, found {value!r}")
        return sign * int(value)

    def rational(self) -> Fraction:
        sign = 1
        kind, value = self.peek()
        if value == "-":
            self.take()
            sign = -1
        kind, value = self.take()
        if kind != "num":
            raise ValueError(f"expected a number, found {value!r}")
        num = int(value)
        kind, value = self.peek()
        if value == "/":
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise ValueError("expected a denominator")
            return Fraction(sign * num, int(value))
        return Fraction(sign * num)

    def point(self) -> GroupElement:
        group = self.ctx.group
        kind, value = self.peek()
        if value == "(":
            self.take()
            entries = []
            while True:
                entries.append(
                    self.signed_int() if group.kind == DISCRETE else self.rational()
                )
                k, v = self.take()
                if v == ")":
                    break
                if v != ",":
                    raise ValueError("expected ',' or ')' in a point tuple")
        else:
            entries = [
                self.signed_int() if group.kind == DISCRETE else self.rational()
            ]
        if group.kind == DISCRETE:
            d = group.free_rank
            if len(entries) != d + len(group.torsion):
                raise ValueError("point has the wrong number of entries")
            return group.element(entries[:d], entries[d:])
        if len(entries) != len(group.basis):
            raise ValueError("endpoint has the wrong number of coordinates")
        return group.real_element(entries)

    endpoint = point


def _scale_terms(terms, scalar):
    return [(s * scalar, f) for s, f in terms]


def _multiply_terms(left, right):
    return [(ls * rs, lf + rf) for ls, lf in left for rs, rf in right]


def parse_element(ctx: Context, text: str) -> AlgebraElement:
    tokens = _tokenize(text)
    if not tokens:
        return AlgebraElement.zero(ctx)
    terms = _Parser(ctx, tokens).parse()
    return normalize(ctx, terms)


# -- rendering -----------------------------------------------------------------


def _word_factor(prefix: str, word) -> str | None:
    if not word:
        return None
    return f"{prefix}[" + ",".join(str(i) for i in word) + "]"


def _scalar_prefixes(value: GaussianRational) -> list[tuple[str | None, bool]]:
    """(rendered rational coefficient or None for 1, needs-i flag) pieces."""
    out = []
    if value.re != 0:
        out.append((None if value.re == 1 else f"({value.re})", False))
    if value.im != 0:
        out.append((None if value.im == 1 else f"({value.im})", True))
    return out


def render_element(x: AlgebraElement) -> str:
    """Canonical rendering; parse_element maps it back to the same element."""
    if x.is_zero():
        return "0"
    group = x.ctx.group
    pieces = []
    for (mu, nu) in sorted(
        x.terms, key=lambda key: ((len(key[0]), key[0]), (len(key[1]), key[1]))
    ):
        f = x.terms[(mu, nu)]
        if f.is_discrete:
            supports = sorted(f.points.items(), key=lambda kv: kv[0].sort_key())
            for point, value in supports:
                chi = "chi{" + render_point(point) + "}"
                pieces.extend(_format_term(value, mu, nu, chi))
        else:
            for interval, value in f.pieces:
                chi = (
                    "chi["
                    + render_point(interval.lo)
                    + ","
                    + render_point(interval.hi)
                    + ")"
                )
                pieces.extend(_format_term(value, mu, nu, chi))
    return " + ".join(pieces)


def _format_term(value, mu, nu, chi: str) -> list[str]:
    out = []
    for coeff, needs_i in _scalar_prefixes(value):
        factors = []
        if coeff is not None:
            factors.append(coeff)
        if needs_i:
            factors.append("i")
        word = _word_factor("S", mu)
        if word:
            factors.append(word)
        factors.append(chi)
        star = _word_factor("S*", nu)
        if star:
            factors.append(star)
        out.append("·".join(factors))
    return out

"""Classification verdicts with machine-checkable certificates.

Maps weight data to verdicts: simplicity, pure infiniteness, AF-embeddability
(yes / no / open), stable finiteness, and - for discrete groups - whether the
crossed product is itself AF.  Every claim is backed by a certificate that
re-verifies through the originating decision procedure, and the classifier
asserts the simple-case dichotomy on every call.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import AlgebraElement, Context
from .errors import FeatureError, InternalCheckError
from .functions import FiniteFunction
from .groups import DISCRETE, Comparator, OmegaData
from .semigroup import (
    ClosureCertificate,
    closure_covers_group,
    inverse_in_closure,
    member,
    zero_word_exists,
)
from .words import Word, counts_to_word, render_word

MODULE = "classifier"

YES = "yes"
NO = "no"
OPEN = "open"


@dataclass(frozen=True)
class Certificate:
    claim: str
    witness: object

    def to_json(self):
        return {"claim": self.claim, "witness": self.witness}


@dataclass
class Verdict:
    simple: bool
    purely_infinite: bool | None
    af_embeddable: str
    af_itself: bool | None
    stably_finite: str
    certificates: list[Certificate] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "simple": self.simple,
            "purely_infinite": self.purely_infinite,
            "af_embeddable": self.af_embeddable,
            "af_itself": self.af_itself,
            "stably_finite": self.stably_finite,
            "certificates": [c.to_json() for c in self.certificates],
        }


def af_criterion(omega: OmegaData, comparator: Comparator | None = None):
    """True when no generator weight has its inverse in the weight-semigroup
    closure; this is the embeddability criterion.  Returns (flag, per-index
    report)."""
    reports = []
    flag = True
    for i in range(1, omega.n + 1):
        inside = inverse_in_closure(omega, i, comparator)
        entry = {"index": i, "inverse_in_closure": inside}
        if inside and omega.group.kind == DISCRETE:
            witness = member(-omega.weights[i - 1], omega)
            entry["witness_counts"] = list(witness.counts)
        reports.append(entry)
        flag = flag and not inside
    return flag, reports


def simplicity(omega: OmegaData, comparator: Comparator | None = None):
    """Simplicity for the finite-alphabet algebra: for every index i the
    closed semigroup generated by the weights together with -w_i must be the
    whole group.  Returns (flag, per-index closure certificates)."""
    certs: list[ClosureCertificate] = []
    flag = True
    for i in range(omega.n):
        extended = omega.extended(-omega.weights[i])
        cert = closure_covers_group(extended, comparator)
        certs.append(cert)
        flag = flag and cert.verdict
    return flag, certs


@dataclass
class InfiniteProjectionWitness:
    """u = S_mu chi_{0} with a nonempty zero-weight word mu; the report holds
    the three exact identities that make chi_{0} an infinite projection."""

    word: Word
    partial_isometry: AlgebraElement
    checks: dict

    def to_json(self):
        from .expr import render_element

        return {
            "word": render_word(self.word),
            "element": render_element(self.partial_isometry),
            "checks": self.checks,
        }


def infinite_projection_witness(
    omega: OmegaData, ctx: Context | None = None
) -> InfiniteProjectionWitness | None:
    """Construct and verify the infinite projection present exactly when the
    embeddability criterion fails (discrete groups only)."""
    if omega.group.kind != DISCRETE:
        raise FeatureError(
            "infinite projection witnesses are built for discrete groups only",
            module=MODULE,
        )
    relation = zero_word_exists(omega)
    if relation is None:
        return None
    ctx = ctx or Context(omega)
    word = counts_to_word(relation.counts)
    chi = FiniteFunction.char_points(omega.group, [omega.group.zero()])
    u = AlgebraElement.monomial(ctx, word, chi, ())
    chi_elt = AlgebraElement.from_function(ctx, chi)
    uu_star = u * u.adjoint()
    checks = {
        "u_star_u_equals_chi": u.adjoint() * u == chi_elt,
        "chi_dominates_range": chi_elt * uu_star == uu_star,
        "range_is_proper": uu_star != chi_elt,
    }
    if not all(checks.values()):
        raise InternalCheckError(
            "infinite projection identities failed", module=MODULE, query=checks
        )
    return InfiniteProjectionWitness(word, u, checks)


def classify(omega: OmegaData, comparator: Comparator | None = None) -> Verdict:
    """Full verdict for the crossed product defined by the weight data.

    Finite alphabets follow the simplicity criterion, the pure-infiniteness
    closure criterion, the embeddability criterion, and - for discrete
    groups - the four-way equivalence making the criterion decide AF-ness
    and stable finiteness outright.  Infinite alphabets (listed weights with
    infinite repetition) use: simple iff the closure is everything iff simple
    and purely infinite.  The real-line case with a zero weight among
    otherwise same-signed weights is reported as open (stably finite).
    """
    comparator = comparator or Comparator()
    group = omega.group
    closure_cert = closure_covers_group(omega, comparator)
    cond, cond_reports = af_criterion(omega, comparator)
    certificates = [
        Certificate("closure_equals_group", closure_cert.to_json()),
        Certificate("no_inverse_in_closure", cond_reports),
    ]

    if omega.infinite:
        simple = closure_cert.verdict
    else:
        simple, simp_certs = simplicity(omega, comparator)
        certificates.append(
            Certificate(
                "extended_closures", [c.to_json() for c in simp_certs]
            )
        )
        if closure_cert.verdict and not simple:
            raise InternalCheckError(
                "full closure must imply simplicity", module=MODULE
            )

    purely_infinite = closure_cert.verdict if simple else None

    if simple and not (closure_cert.verdict ^ cond):
        raise InternalCheckError(
            "dichotomy violated: a simple instance must satisfy exactly one "
            "of closure-full / embeddability criterion",
            module=MODULE,
            query={"closure": closure_cert.verdict, "criterion": cond},
        )

    if cond:
        af_embeddable = YES
        stably_finite = YES
    elif group.kind == DISCRETE:
        af_embeddable = NO
        stably_finite = NO
    else:
        signs = [int(comparator.sign(w)) for w in omega.weights]
        mixed = any(s > 0 for s in signs) and any(s < 0 for s in signs)
        if mixed:
            af_embeddable = NO
            stably_finite = NO
        else:
            # Some weight is zero and the rest share a sign: open question.
            af_embeddable = OPEN
            stably_finite = YES

    af_itself = None
    if group.kind == DISCRETE and not omega.infinite:
        af_itself = cond

    if group.kind == DISCRETE and not cond:
        witness = infinite_projection_witness(omega)
        certificates.append(
            Certificate("infinite_projection", witness.to_json())
        )

    verdict = Verdict(
        simple=simple,
        purely_infinite=purely_infinite,
        af_embeddable=af_embeddable,
        af_itself=af_itself,
        stably_finite=stably_finite,
        certificates=certificates,
    )
    _check_verdict_invariants(verdict)
    return verdict


def _check_verdict_invariants(v: Verdict):
    if v.purely_infinite and not v.simple:
        raise InternalCheckError("purely infinite requires simple", module=MODULE)
    if v.af_itself and v.af_embeddable != YES:
        raise InternalCheckError("AF implies AF-embeddable", module=MODULE)
    if v.purely_infinite and v.af_embeddable == YES:
        raise InternalCheckError(
            "purely infinite excludes AF-embeddable", module=MODULE
        )
    if v.simple and v.purely_infinite is not None:
        exactly_one = (v.purely_infinite is True) ^ (v.af_embeddable == YES)
        if not exactly_one:
            raise InternalCheckError(
                "simple instances satisfy exactly one of purely infinite / "
                "AF-embeddable",
                module=MODULE,
            )


def verify_verdict(omega: OmegaData, verdict: Verdict,
                   comparator: Comparator | None = None) -> bool:
    """Re-verify every certificate through its originating module."""
    comparator = comparator or Comparator()
    for cert in verdict.certificates:
        if cert.claim == "closure_equals_group":
            fresh = closure_covers_group(omega, comparator)
            if fresh.to_json() != cert.witness:
                return False
            if fresh.counterexample is not None:
                if member(fresh.counterexample, omega) is not None:
                    return False
        elif cert.claim == "no_inverse_in_closure":
            for entry in cert.witness:
                again = inverse_in_closure(omega, entry["index"], comparator)
                if again != entry["inverse_in_closure"]:
                    return False
        elif cert.claim == "extended_closures":
            _, certs = simplicity(omega, comparator)
            if [c.to_json() for c in certs] != cert.witness:
                return False
        elif cert.claim == "infinite_projection":
            witness = infinite_projection_witness(omega)
            if witness is None or not all(witness.checks.values()):
                return False
    return True

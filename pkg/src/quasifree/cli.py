"""Batch command-line interface.

Subcommands: classify | decompose | scaling | verify | eval.  Problem data
arrives as a JSON spec file; results are canonical JSON (sorted keys, exact
rational strings), so identical inputs produce byte-identical output.  Exit
codes: 0 success, 2 precondition/feature errors, 3 resource caps, 4
precision errors.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .algebra import (
    Context,
    MultiplierWordSum,
    balanced_expand,
    gauge_expectation,
    multiplier_conjugate,
    random_element,
    rho_k,
    shift_element,
)
from .classify import classify
from .decompose import matrix_unit_report, region_family
from .errors import ToolkitError, exit_code_for
from .expr import parse_element, render_element
from .functions import Interval
from .groups import (
    DISCRETE,
    Comparator,
    OmegaData,
    descriptor_from_json,
    element_from_json,
)
from .scaling import scaling_element
from .semigroup import member, zero_word_exists

MODULE = "cli_frontend"


def _load_spec(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _build_problem(spec: dict, args) -> tuple[OmegaData, Context]:
    group = descriptor_from_json(spec["group"])
    algebra = spec.get("algebra", {"kind": "O_n"})
    infinite = algebra.get("kind") in ("O_infinity", "O_inf", "O_infty")
    weights = tuple(element_from_json(group, w) for w in spec["omega"])
    omega = OmegaData(weights, infinite)
    if not infinite:
        declared = algebra.get("n")
        if declared is not None and declared != omega.n:
            raise ValueError(
                f"algebra declares n={declared} but {omega.n} weights are listed"
            )
    depth = args.precision_depth
    if depth is None:
        depth = spec.get("precision_depth", 32)
    max_terms = args.max_terms
    if max_terms is None:
        max_terms = spec.get("max_terms", 10**6)
    comparator = Comparator(depth=depth)
    ctx = Context(omega, max_terms=max_terms, comparator=comparator)
    return omega, ctx


def _parse_regions(spec: dict, ctx: Context):
    group = ctx.group
    raw = spec.get("regions")
    if not raw:
        raise ValueError("the spec carries no regions")
    if group.kind == DISCRETE:
        return [element_from_json(group, _as_entry_list(r, group)) for r in raw]
    out = []
    for r in raw:
        lo = element_from_json(group, _as_entry_list(r["lo"], group))
        hi = element_from_json(group, _as_entry_list(r["hi"], group))
        out.append(Interval(lo, hi))
    return out


def _as_entry_list(value, group):
    if isinstance(value, list):
        return value
    return [value]


def cmd_classify(spec, args):
    omega, ctx = _build_problem(spec, args)
    verdict = classify(omega, ctx.comparator)
    return verdict.to_json(), None


def cmd_decompose(spec, args):
    omega, ctx = _build_problem(spec, args)
    family = region_family(ctx.group, _parse_regions(spec, ctx), ctx.comparator)
    truncation = args.truncation
    if truncation is None:
        truncation = spec.get("truncation")
    report = matrix_unit_report(family, ctx, truncation)
    payload = report.to_json()
    dot = report.dot()
    payload["dot"] = dot
    return payload, dot


def cmd_scaling(spec, args):
    omega, ctx = _build_problem(spec, args)
    raw_x = spec.get("x_set")
    if args.x_set is not None:
        raw_x = json.loads(args.x_set)
    raw_g = spec.get("gamma0")
    if args.gamma0 is not None:
        raw_g = json.loads(args.gamma0)
    if raw_x is None or raw_g is None:
        raise ValueError("scaling needs x_set and gamma0")
    group = ctx.group
    x_set = [element_from_json(group, _as_entry_list(p, group)) for p in raw_x]
    gamma0 = element_from_json(group, _as_entry_list(raw_g, group))
    _, report = scaling_element(omega, x_set, gamma0, ctx)
    return report.to_json(), None


def cmd_eval(spec, args):
    omega, ctx = _build_problem(spec, args)
    text = args.expression or spec.get("expression")
    if not text:
        raise ValueError("eval needs an expression")
    element = parse_element(ctx, text)
    return {"canonical": render_element(element)}, None


def cmd_verify(spec, args):
    """Seeded property suite over the spec's weight data."""
    omega, ctx = _build_problem(spec, args)
    rng = random.Random(args.seed)
    runs = spec.get("verify_runs", 50)
    checks = []

    failures = 0
    for _ in range(runs):
        x = random_element(ctx, rng)
        y = random_element(ctx, rng)
        z = random_element(ctx, rng)
        if (x * y) * z != x * (y * z):
            failures += 1
        if (x * y).adjoint() != y.adjoint() * x.adjoint():
            failures += 1
        ex = gauge_expectation(x)
        if gauge_expectation(ex) != ex or gauge_expectation(x.adjoint()) != ex.adjoint():
            failures += 1
        if rho_k(x, 1) * rho_k(y, 1) != rho_k(x * y, 1):
            failures += 1
    checks.append({"name": "star_algebra_laws", "runs": runs, "failures": failures})

    failures = 0
    if not omega.infinite:
        k = 1
        inner = (1,) * k + (2,)
        u = MultiplierWordSum(
            {(w + inner, w): 1 for w in _all_words(omega.n, k)}
        )
        gamma = ctx.weight_of(inner)
        for _ in range(runs):
            y = random_element(ctx, rng, max_word_len=k)
            expected = balanced_expand(
                shift_element(gauge_expectation(y), gamma), k
            )
            if multiplier_conjugate(u, y) != expected:
                failures += 1
        checks.append(
            {"name": "compression_identity", "runs": runs, "failures": failures}
        )

    failures = 0
    relation = zero_word_exists(omega)
    if relation is not None:
        from .groups import combine

        if not combine(relation.counts, omega).is_zero():
            failures += 1
    if omega.group.kind == DISCRETE:
        for w in omega.weights:
            witness = member(w, omega)
            if witness is None:
                failures += 1
    checks.append({"name": "semigroup_soundness", "failures": failures})

    verdict = classify(omega, ctx.comparator)
    checks.append({"name": "classifier_consistency", "verdict": verdict.to_json()})

    passed = all(c.get("failures", 0) == 0 for c in checks)
    return {"checks": checks, "pass": passed}, None


def _all_words(n: int, k: int):
    from itertools import product

    return [w for w in product(range(1, n + 1), repeat=k)]


COMMANDS = {
    "classify": cmd_classify,
    "decompose": cmd_decompose,
    "scaling": cmd_scaling,
    "verify": cmd_verify,
    "eval": cmd_eval,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasifree",
        description="Exact classification and construction for crossed products "
        "of Cuntz algebras by quasi-free abelian actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--spec", required=True, help="JSON problem spec file")
        p.add_argument("--out", help="write the JSON result here")
        p.add_argument("--dot", help="write the DOT diagram here (decompose)")
        p.add_argument("--truncation", type=int, default=None)
        p.add_argument("--max-terms", type=int, default=None, dest="max_terms")
        p.add_argument(
            "--precision-depth", type=int, default=None, dest="precision_depth"
        )
        p.add_argument("--seed", type=int, default=0)
        if name == "scaling":
            p.add_argument("--x-set", default=None, dest="x_set")
            p.add_argument("--gamma0", default=None)
        if name == "eval":
            p.add_argument("expression", nargs="?", default=None)
    return parser


def _emit(payload: dict, path: str | None):
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = _load_spec(args.spec)
        payload, dot = COMMANDS[args.command](spec, args)
    except ToolkitError as exc:
        _emit({"error": exc.payload()}, getattr(args, "out", None))
        return exit_code_for(exc)
    except ValueError as exc:
        _emit({"error": {"kind": "ValueError", "message": str(exc)}},
              getattr(args, "out", None))
        return 2
    _emit(payload, args.out)
    if dot is not None and args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(dot + "\n")
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

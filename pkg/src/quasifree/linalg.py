"""Exact rational and integer linear algebra used by the decision procedures.

Rational feasibility (nonnegative solutions of A x = b) is decided by a
phase-1 simplex with Bland's rule over Fractions, so termination and
exactness are unconditional.  Integer systems are solved through the Smith
normal form; the decomposition itself is delegated to sympy.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from sympy import Matrix as _SymMatrix
from sympy import ZZ as _ZZ
from sympy.matrices.normalforms import smith_normal_decomp as _smith_normal_decomp

Vec = tuple[Fraction, ...]


def frac_vec(entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy) and pivot columns."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def feasible_nonneg(A: list[list[Fraction]], b: list[Fraction]):
    """Some x >= 0 with A x = b, or None.  Phase-1 simplex, Bland's rule."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0:
        return [Fraction(0)] * n
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-x for x in row]
            rhs = -rhs
        tab.append(row + [Fraction(int(i == j)) for j in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    width = n + m
    # Objective: minimize the sum of artificials; obj[j] > 0 marks an
    # improving column, obj[-1] is the current artificial mass.
    obj = [Fraction(0)] * (width + 1)
    for row in tab:
        for j in range(width + 1):
            obj[j] += row[j]
    for j in range(n, width):
        obj[j] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][width] / tab[i][enter]
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leave]
                ):
                    best = ratio
                    leave = i
        if leave is None:
            return None  # unbounded phase-1 cannot happen; defensive
        pv = tab[leave][enter]
        tab[leave] = [x / pv for x in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * c for a, c in zip(tab[i], tab[leave])]
        f = obj[enter]
        if f != 0:
            obj = [a - f * c for a, c in zip(obj, tab[leave])]
        basis[leave] = enter
    if obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            x[var] = tab[i][width]
    return x


def cone_witness(generators: list[Vec], target: Vec):
    """Nonnegative rational lambda with sum lambda_i g_i = target, or None."""
    if not generators:
        return [] if all(t == 0 for t in target) else None
    dim = len(generators[0])
    if dim == 0:
        return [Fraction(0)] * len(generators)
    A = [[g[r] for g in generators] for r in range(dim)]
    return feasible_nonneg(A, list(target))


def in_cone(generators: list[Vec], target: Vec) -> bool:
    return cone_witness(generators, target) is not None


def positive_functional(vectors: list[Vec]):
    """phi with phi . v >= 1 for every v, or None (exists iff the cone of
    the v's is pointed and omits zero generators, by Gordan duality)."""
    if not vectors:
        return []
    dim = len(vectors[0])
    # phi = u - w with u, w >= 0; slack s_v >= 0 per vector.
    nvec = len(vectors)
    A = []
    for k, v in enumerate(vectors):
        row = list(v) + [-x for x in v]
        row += [Fraction(-int(k == j)) for j in range(nvec)]
        A.append(row)
    sol = feasible_nonneg(A, [Fraction(1)] * nvec)
    if sol is None:
        return None
    return [sol[i] - sol[dim + i] for i in range(dim)]


def clear_denominators(values) -> list[int]:
    """Scale a rational vector by the lcm of denominators to integers."""
    values = [Fraction(v) for v in values]
    lcm = 1
    for v in values:
        d = v.denominator
        lcm = lcm * d // gcd(lcm, d)
    return [int(v * lcm) for v in values]


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def smith_decomp(rows: list[list[int]]):
    """(D, S, T) with D = S rows T diagonal, S and T unimodular."""
    m = _SymMatrix(rows)
    d, s, t = _smith_normal_decomp(m, domain=_ZZ)
    to_list = lambda M: [[int(M[i, j]) for j in range(M.cols)] for i in range(M.rows)]
    return to_list(d), to_list(s), to_list(t)


def unimodular_inverse(rows: list[list[int]]) -> list[list[int]]:
    inv = _SymMatrix(rows).inv()
    return [[int(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def solve_integer(A: list[list[int]], b: list[int]):
    """Some integer x with A x = b, or None.  A is m x n with m, n >= 0."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return [] if all(v == 0 for v in b) else None
    if m == 0:
        return [0] * n
    D, S, T = smith_decomp(A)
    y = [sum(S[i][j] * b[j] for j in range(m)) for i in range(m)]
    z = [0] * n
    for i in range(min(m, n)):
        d = D[i][i]
        if d != 0:
            if y[i] % d != 0:
                return None
            z[i] = y[i] // d
        elif y[i] != 0:
            return None
    for i in range(min(m, n), m):
        if y[i] != 0:
            return None
    x = [sum(T[i][j] * z[j] for j in range(n)) for i in range(n)]
    for i in range(m):
        if sum(A[i][j] * x[j] for j in range(n)) != b[i]:
            return None  # defensive; should be unreachable
    return x


def invariant_factors(A: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form, padded with zeros to min(m, n)."""
    m = len(A)
    n = len(A[0]) if m else 0
    if m == 0 or n == 0:
        return []
    D, _, _ = smith_decomp(A)
    return [D[i][i] for i in range(min(m, n))]

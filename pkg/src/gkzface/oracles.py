"""Brute-force reference implementations used to cross-check the fast paths.

These deliberately avoid the code they check: facet normals come from
rational nullspaces instead of Hermite forms, cone membership from a
direct linear program over the coefficients, semigroup membership from a
memoized subtract-a-column search.  They are exponential and meant for
desk-scale verification only.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .intlinalg import as_int_matrix, mat_vec, shape
from .linineq import rational_lp_feasible


def _rational_nullspace(rows: Sequence[Sequence[int]], dim: int):
    """Basis of {x : r . x = 0 for all rows r}, by Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(dim):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [x * inv for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * dim
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def _primitive_int(vec) -> tuple[int, ...]:
    denom = 1
    for q in vec:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    ints = [int(q * denom) for q in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g:
        ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return tuple(ints)


def facet_oracle(matrix) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (facet columns, primitive support function) pairs, brute force.

    Tries every column subset: one-dimensional rational nullspaces give
    candidate normals, kept when sign-consistent on all columns.
    """
    m = as_int_matrix(matrix)
    d, n = shape(m)
    cols = [tuple(row[j] for row in m) for j in range(n)]
    found = {}
    for size in range(0, n + 1):
        for subset in itertools.combinations(range(n), size):
            basis = _rational_nullspace([cols[j] for j in subset], d)
            if len(basis) != 1:
                continue
            h = _primitive_int(basis[0])
            values = [sum(c * x for c, x in zip(h, col)) for col in cols]
            if all(v >= 0 for v in values):
                pass
            elif all(v <= 0 for v in values):
                h = tuple(-c for c in h)
                values = [-v for v in values]
            else:
                continue
            zset = tuple(j for j in range(n) if values[j] == 0)
            found[h] = zset
    return sorted((cols_, h) for h, cols_ in found.items())


def in_cone(matrix, point) -> bool:
    """Exact test whether the point is a nonnegative combination of columns."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    constraints = [
        (tuple(1 if j == k else 0 for j in range(n)), ">=", 0) for k in range(n)
    ]
    for i in range(d):
        row = tuple(m[i][j] for j in range(n))
        constraints.append((row, ">=", point[i]))
        constraints.append((row, "<=", point[i]))
    return rational_lp_feasible(constraints, n) is not None


def positive_grading(matrix) -> Optional[tuple[int, ...]]:
    """An integer functional taking value >= 1 on every nonzero column."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    cols = [tuple(row[j] for row in m) for j in range(n) if any(row[j] for row in m)]
    pt = rational_lp_feasible([(c, ">=", 1) for c in cols], d)
    if pt is None:
        return None
    denom = 1
    for q in pt:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    return tuple(int(q * denom) for q in pt)


def member_search(matrix, point, grading=None, _memo=None) -> bool:
    """Semigroup membership by memoized subtract-a-column search."""
    m = as_int_matrix(matrix)
    if grading is None:
        grading = positive_grading(m)
        if grading is None:
            raise ValueError("needs a pointed cone")
    d, n = shape(m)
    cols = [tuple(row[j] for row in m) for j in range(n) if any(row[j] for row in m)]
    memo = {} if _memo is None else _memo

    def rec(x):
        if not any(x):
            return True
        deg = sum(g * v for g, v in zip(grading, x))
        if deg < 0:
            return False
        if x in memo:
            return memo[x]
        memo[x] = False
        for c in cols:
            if rec(tuple(a - b for a, b in zip(x, c))):
                memo[x] = True
                break
        return memo[x]

    return rec(tuple(int(v) for v in point))


def normality_box_oracle(matrix, factor: int = 3):
    """Saturation check by box enumeration.

    Enumerates integer points with coordinates up to factor * max entry,
    keeps those inside the cone, and tests each for semigroup membership.
    Returns (verdict, witness or None).
    """
    m = as_int_matrix(matrix)
    d, n = shape(m)
    bound = factor * max(abs(x) for row in m for x in row)
    grading = positive_grading(m)
    if grading is None:
        raise ValueError("needs a pointed cone")
    memo = {}
    for point in itertools.product(range(-bound, bound + 1), repeat=d):
        if not in_cone(m, point):
            continue
        if not member_search(m, point, grading, memo):
            return False, point
    return True, None


def member_box_oracle(v, matrix, bound: int = 6) -> Optional[tuple[int, ...]]:
    """Brute-force solve of M z = v over the integer box [-bound, bound]^n."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    for z in itertools.product(range(-bound, bound + 1), repeat=n):
        if mat_vec(m, z) == tuple(v):
            return z
    return None


def feasible_2d_oracle(constraints) -> bool:
    """Complete feasibility test for closed 2-variable systems.

    Adds a Cramer-bound box (any feasible system has a basic feasible
    point inside it), then tests every pairwise boundary intersection.
    """
    sys2 = []
    for coeffs, rel, bound in constraints:
        c = [Fraction(x) for x in coeffs]
        b = Fraction(bound)
        if rel in ("<=", "le"):
            c = [-x for x in c]
            b = -b
        sys2.append((c, b))
    big = 1
    for c, b in sys2:
        big = max(big, *(abs(x) for x in c), abs(b))
    r = 4 * big * big + 1
    box = [
        ([Fraction(1), Fraction(0)], Fraction(-r)),
        ([Fraction(-1), Fraction(0)], Fraction(-r)),
        ([Fraction(0), Fraction(1)], Fraction(-r)),
        ([Fraction(0), Fraction(-1)], Fraction(-r)),
    ]
    full = sys2 + box
    candidates = [(Fraction(0), Fraction(0))]
    for (c1, b1), (c2, b2) in itertools.combinations(full, 2):
        det = c1[0] * c2[1] - c1[1] * c2[0]
        if det == 0:
            continue
        x = (b1 * c2[1] - b2 * c1[1]) / det
        y = (c1[0] * b2 - c2[0] * b1) / det
        candidates.append((x, y))
    for x, y in candidates:
        if all(c[0] * x + c[1] * y >= b for c, b in full):
            return True
    return False


def kernel_box_binomials(matrix, bound: int = 3):
    """All kernel vectors with entries in [-bound, bound], as (plus, minus)."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    out = []
    for u in itertools.product(range(-bound, bound + 1), repeat=n):
        if not any(u):
            continue
        if any(mat_vec(m, u)):
            continue
        plus = tuple(x if x > 0 else 0 for x in u)
        minus = tuple(-x if x < 0 else 0 for x in u)
        out.append((plus, minus))
    return out

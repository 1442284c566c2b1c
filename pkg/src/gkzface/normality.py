"""Saturation test for the column semigroup, with certificates.

The verdict asks whether every lattice point of the cone is a sum of
columns.  It suffices to test the lattice points of the half-open
parallelepipeds spanned by full-rank column subsets: together with the
columns those generate all lattice points of the cone, and each lies in
the box |x_i| < rank * max entry.  Membership itself is a memoized
subtract-a-column search pruned by the facet inequalities.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .errors import NotPointed, ScaleLimit
from .faces import cone_facet_normals, is_pointed
from .intlinalg import (
    IntMatrix,
    IntVector,
    as_int_matrix,
    kernel_lattice,
    mat_vec,
    member_of_image_lattice,
    shape,
    snf,
    solve_rational,
    transpose,
)

DEFAULT_DEGREE_FACTOR = 10
DEFAULT_MAX_POINTS = 400_000


@dataclass(frozen=True)
class NormalityCertificate:
    """Outcome of the saturation test.

    When the verdict is False, witness is a lattice point of the cone that
    is not a sum of columns.  When True, hilbert_basis lists the minimal
    generators of the full point monoid, each of which was verified to be
    a column sum.  degree_bound is the sound cap on generator degrees
    under the facet-sum grading.
    """

    verdict: bool
    hilbert_basis: Optional[tuple[IntVector, ...]] = None
    witness: Optional[IntVector] = None
    degree_bound: int = 0


def _span_saturated_frame(matrix: IntMatrix):
    """Re-express columns on a basis of (Q-span of columns) cap Z^d.

    Returns (working matrix, basis rows).  Working columns then live in a
    full-rank frame whose ambient lattice is exactly the saturated span
    lattice, so saturation questions about Z^d reduce to it.
    """
    d, n = shape(matrix)
    cols = [tuple(row[j] for row in matrix) for j in range(n)]
    vanishing = kernel_lattice(as_int_matrix(cols))
    if not vanishing:
        basis = tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))
        return matrix, basis
    sat_basis = kernel_lattice(as_int_matrix(vanishing))
    bt = transpose(as_int_matrix(sat_basis))
    out = []
    for col in cols:
        sol = solve_rational(bt, col)
        assert sol is not None and all(x.is_integer for x in sol)
        out.append(tuple(x.as_int() for x in sol))
    return transpose(as_int_matrix(out)), sat_basis


def is_normal(
    matrix,
    degree_cap_factor: int = DEFAULT_DEGREE_FACTOR,
    max_points: int = DEFAULT_MAX_POINTS,
) -> NormalityCertificate:
    """Decide whether the semigroup of the columns is saturated in Z^d."""
    m = as_int_matrix(matrix)
    if (
        degree_cap_factor == DEFAULT_DEGREE_FACTOR
        and max_points == DEFAULT_MAX_POINTS
    ):
        return _is_normal_cached(m)
    return _is_normal(m, degree_cap_factor, max_points)


@lru_cache(maxsize=2048)
def _is_normal_cached(m: IntMatrix) -> NormalityCertificate:
    return _is_normal(m, DEFAULT_DEGREE_FACTOR, DEFAULT_MAX_POINTS)


class _Monoid:
    """Column monoid of a full-rank pointed frame, with membership DP."""

    def __init__(self, work: IntMatrix):
        self.r, self.n = shape(work)
        self.cols = sorted(
            {tuple(row[j] for row in work) for j in range(self.n)}
        )
        self.normals = cone_facet_normals(work)
        self.memo: dict[IntVector, bool] = {(0,) * self.r: True}

    def in_cone(self, x) -> bool:
        return all(
            sum(h[i] * v for i, v in enumerate(x)) >= 0 for h in self.normals
        )

    def member(self, x: IntVector) -> bool:
        # iterative DFS; recursion depth would scale with the degree
        stack = [x]
        while stack:
            cur = stack[-1]
            if cur in self.memo:
                stack.pop()
                continue
            if not self.in_cone(cur):
                self.memo[cur] = False
                stack.pop()
                continue
            unresolved = []
            verdict = False
            for c in self.cols:
                child = tuple(a - b for a, b in zip(cur, c))
                known = self.memo.get(child)
                if known is True:
                    verdict = True
                    break
                if known is None:
                    unresolved.append(child)
            if verdict:
                self.memo[cur] = True
                stack.pop()
            elif unresolved:
                stack.extend(unresolved)
            else:
                self.memo[cur] = False
                stack.pop()
        return self.memo[x]


def _parallelepiped_points(sigma: IntMatrix, cap: int):
    """Lattice points of {sigma.t : 0 <= t_i < 1} for invertible sigma."""
    r, _ = shape(sigma)
    s, u, _v = snf(sigma)
    diag = [s[i][i] for i in range(r)]
    det = 1
    for x in diag:
        det *= x
    if det == 0:
        return None
    if det > cap:
        raise ScaleLimit(f"parallelepiped with {det} lattice points exceeds cap")
    hinv_rows = _unimodular_inverse(u)
    points = []
    for k in itertools.product(*(range(x) for x in diag)):
        rep = mat_vec(hinv_rows, k)
        t = solve_rational(sigma, rep)
        shift = tuple(math.floor(x.re) for x in t)
        box = tuple(
            ri - sum(sigma[i][j] * shift[j] for j in range(r))
            for i, ri in enumerate(rep)
        )
        points.append(box)
    return points


def _unimodular_inverse(u: IntMatrix) -> IntMatrix:
    from .intlinalg import hnf, identity

    h, w = hnf(u)
    assert h == identity(len(u))
    return w


def _is_normal(m: IntMatrix, degree_cap_factor: int, max_points: int) -> NormalityCertificate:
    d, n = shape(m)
    nonzero = [j for j in range(n) if any(row[j] for row in m)]
    if not nonzero:
        return NormalityCertificate(verdict=True, hilbert_basis=())
    if not is_pointed(m):
        raise NotPointed("saturation test needs a pointed cone")

    work, basis = _span_saturated_frame(
        as_int_matrix([[row[j] for j in nonzero] for row in m])
    )
    r, _ = shape(work)
    monoid = _Monoid(work)
    cols = monoid.cols

    grading = tuple(sum(h[i] for h in monoid.normals) for i in range(r))

    def deg(x) -> int:
        return sum(g * v for g, v in zip(grading, x))

    degs = [deg(c) for c in cols]
    assert all(dg > 0 for dg in degs), "grading must be positive on columns"
    maxdeg = max(degs)
    bound = r * maxdeg
    if bound > degree_cap_factor * maxdeg:
        raise ScaleLimit(
            f"degree bound {bound} exceeds cap {degree_cap_factor * maxdeg}"
        )

    def to_ambient(v: IntVector) -> IntVector:
        return tuple(sum(x * b[i] for x, b in zip(v, basis)) for i in range(d))

    candidates = set()
    budget = max_points
    for subset in itertools.combinations(range(len(cols)), r):
        sigma = transpose(as_int_matrix([cols[j] for j in subset]))
        points = _parallelepiped_points(sigma, budget)
        if points is None:
            continue
        candidates.update(p for p in points if any(p))
        if len(candidates) > max_points:
            raise ScaleLimit(f"more than {max_points} candidate points")

    ordered = sorted(candidates, key=lambda p: (deg(p), p))
    for p in ordered:
        if not monoid.member(p):
            return NormalityCertificate(
                verdict=False, witness=to_ambient(p), degree_bound=bound
            )

    pool = sorted(set(cols) | candidates, key=lambda p: (deg(p), p))
    hilbert = []
    for c in pool:
        reducible = False
        for u in pool:
            if deg(u) >= deg(c):
                break
            rest = tuple(a - b for a, b in zip(c, u))
            if any(rest) and monoid.in_cone(rest):
                reducible = True
                break
        if not reducible:
            hilbert.append(c)
    return NormalityCertificate(
        verdict=True,
        hilbert_basis=tuple(to_ambient(h) for h in hilbert),
        degree_bound=bound,
    )


def semigroup_member(matrix, point) -> bool:
    """Is the point a nonnegative integer combination of the columns?

    Memoized subtract-a-column search pruned by the facet inequalities of
    the cone; needs a pointed cone to terminate.
    """
    m = as_int_matrix(matrix)
    d, n = shape(m)
    v = tuple(int(x) for x in point)
    if len(v) != d:
        raise ValueError("point dimension mismatch")
    if not any(v):
        return True
    nonzero = [j for j in range(n) if any(row[j] for row in m)]
    if not nonzero:
        return False
    if not is_pointed(m):
        raise NotPointed("membership search needs a pointed cone")
    sub = as_int_matrix([[row[j] for j in nonzero] for row in m])
    work, basis = _span_saturated_frame(sub)
    bt = transpose(as_int_matrix(basis))
    sol = solve_rational(bt, v)
    if sol is None or any(not x.is_integer for x in sol):
        return False
    target = tuple(x.as_int() for x in sol)
    return _Monoid(work).member(target)

"""Exact linear inequality solving by Fourier-Motzkin elimination.

Dimensions in this package stay tiny (at most the row count of the input
matrix), so elimination is both simple and fast enough, and every bound it
produces is an exact rational.  Constraints are closed: coeffs . x >= rhs.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional, Sequence

from .errors import ScaleLimit

Constraint = tuple[tuple[int, ...], int]  # (coefficients, rhs) meaning c.x >= rhs


def normalize(coeffs, rel, bound) -> Constraint:
    """Bring a (coeffs, relation, bound) triple to canonical c.x >= b form."""
    cs = [Fraction(c) for c in coeffs]
    b = Fraction(bound)
    if rel in ("<=", "le"):
        cs = [-c for c in cs]
        b = -b
    elif rel not in (">=", "ge"):
        raise ValueError(f"unsupported relation {rel!r}")
    denom = 1
    for c in cs + [b]:
        denom = denom * c.denominator // gcd(denom, c.denominator)
    ints = [int(c * denom) for c in cs]
    rhs = b * denom
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g:
        ints = [c // g for c in ints]
        rhs = rhs / g
    # keep the rhs rational but store exactly; tighten to an integer ceiling
    # only when enumerating integers, not here
    return tuple(ints), rhs


def _combine(pos: Constraint, neg: Constraint, k: int) -> Constraint:
    """Positive combination of a lower and an upper constraint killing x_k."""
    cp, bp = pos
    cn, bn = neg
    a, b = cp[k], -cn[k]
    coeffs = tuple(b * x + a * y for x, y in zip(cp, cn))
    rhs = b * bp + a * bn
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g:
        coeffs = tuple(c // g for c in coeffs)
        rhs = Fraction(rhs, g)
    return coeffs, Fraction(rhs)


def _eliminate(system: list[Constraint], k: int) -> Optional[list[Constraint]]:
    """Project out variable k.  Returns None on a detected contradiction."""
    zeros, lowers, uppers = [], [], []
    for c in system:
        ck = c[0][k]
        if ck > 0:
            lowers.append(c)
        elif ck < 0:
            uppers.append(c)
        else:
            zeros.append(c)
    out = {}
    for c in zeros:
        out[c[0]] = max(out.get(c[0], c[1]), c[1])
    for p in lowers:
        for n in uppers:
            coeffs, rhs = _combine(p, n, k)
            if not any(coeffs):
                if rhs > 0:
                    return None
                continue
            out[coeffs] = max(out.get(coeffs, rhs), rhs)
    result = []
    for coeffs, rhs in out.items():
        if not any(coeffs):
            if rhs > 0:
                return None
            continue
        result.append((coeffs, rhs))
    return result


class Projection:
    """Fourier-Motzkin elimination chain for one system of constraints.

    chain[k] holds constraints mentioning only x_0 .. x_{k-1}; chain[dim] is
    the input.  A None entry marks a contradiction found during elimination.
    """

    def __init__(self, constraints: Sequence[Constraint], dim: int):
        self.dim = dim
        system = []
        feasible = True
        for coeffs, rhs in constraints:
            if len(coeffs) != dim:
                raise ValueError("constraint dimension mismatch")
            if not any(coeffs):
                if rhs > 0:
                    feasible = False
                continue
            system.append((tuple(coeffs), Fraction(rhs)))
        self.chain: list[Optional[list[Constraint]]] = [None] * (dim + 1)
        self.chain[dim] = system if feasible else None
        for k in range(dim - 1, -1, -1):
            prev = self.chain[k + 1]
            self.chain[k] = None if prev is None else _eliminate(prev, k)

    @property
    def is_feasible(self) -> bool:
        return self.chain[0] is not None

    def bounds(self, k: int, prefix: Sequence[Fraction]):
        """Exact interval for x_k given values of x_0 .. x_{k-1}.

        Returns (lo, hi) where either end may be None for unbounded.
        """
        lo, hi = None, None
        for coeffs, rhs in self.chain[k + 1]:
            ck = coeffs[k]
            if ck == 0:
                continue
            rest = rhs - sum(c * x for c, x in zip(coeffs[:k], prefix))
            val = Fraction(rest, ck)
            if ck > 0:
                lo = val if lo is None else max(lo, val)
            else:
                hi = val if hi is None else min(hi, val)
        return lo, hi

    def point(self) -> Optional[tuple[Fraction, ...]]:
        """A canonical feasible rational point, or None."""
        if not self.is_feasible:
            return None
        x: list[Fraction] = []
        for k in range(self.dim):
            lo, hi = self.bounds(k, x)
            if lo is not None:
                x.append(lo)
            elif hi is not None:
                x.append(hi)
            else:
                x.append(Fraction(0))
        return tuple(x)

    def integer_points(self, max_points: Optional[int] = None) -> Iterator[tuple[int, ...]]:
        """All integer points, lexicographically.  The body must be bounded."""
        if not self.is_feasible:
            return
        count = 0
        stack: list[tuple[list[int], int, int]] = []
        lo, hi = self._int_bounds(0, ())
        if lo is None:
            return
        stack.append(([], lo, hi))
        while stack:
            prefix, cur, hi = stack.pop()
            if cur > hi:
                continue
            stack.append((prefix, cur + 1, hi))
            point = prefix + [cur]
            if len(point) == self.dim:
                count += 1
                if max_points is not None and count > max_points:
                    raise ScaleLimit(
                        f"more than {max_points} lattice points in enumeration"
                    )
                yield tuple(point)
            else:
                lo2, hi2 = self._int_bounds(len(point), point)
                if lo2 is not None:
                    stack.append((point, lo2, hi2))

    def _int_bounds(self, k: int, prefix) -> tuple[Optional[int], Optional[int]]:
        lo, hi = self.bounds(k, [Fraction(p) for p in prefix])
        if lo is None or hi is None:
            raise ValueError("enumeration region is unbounded")
        lo_i = math.ceil(lo)
        hi_i = math.floor(hi)
        if lo_i > hi_i:
            return None, None
        return lo_i, hi_i


def rational_lp_feasible(constraints, dim: int) -> Optional[tuple[Fraction, ...]]:
    """A rational point satisfying every (coeffs, rel, bound) constraint, or None.

    Relations are ">=" or "<="; arithmetic is exact throughout.
    """
    normalized = [normalize(c, r, b) for c, r, b in constraints]
    return Projection(normalized, dim).point()


def integral_feasible_point(constraints, dim: int) -> Optional[tuple[int, ...]]:
    """Like rational_lp_feasible but scales the answer to an integer vector.

    Only valid when every constraint is sign-preserved under positive
    scaling of x, i.e. bounds are used as targets like c.x >= 1.
    """
    pt = rational_lp_feasible(constraints, dim)
    if pt is None:
        return None
    denom = 1
    for q in pt:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    return tuple(int(q * denom) for q in pt)

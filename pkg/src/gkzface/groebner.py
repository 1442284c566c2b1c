"""Small Buchberger engine over the rationals.

Monomials are exponent tuples; polynomials are monomial -> coefficient
dicts.  Two orders are provided: graded reverse lexicographic, and the
block order eliminating the first variable (compare its exponent first,
break ties by grevlex on the rest) used for ideal saturation with an
auxiliary variable.  Hard caps on S-pair count and wall time convert
runaway instances into a ScaleLimit error instead of an apparent hang.
"""

from __future__ import annotations

import time
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Optional

from .errors import ScaleLimit

Monomial = tuple[int, ...]
Poly = dict[Monomial, Fraction]

DEFAULT_MAX_SPAIRS = 10_000
DEFAULT_TIME_CAP = 30.0


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def elim_first_key(m: Monomial):
    return (m[0], grevlex_key(m[1:]))


def leading_monomial(p: Poly, key) -> Monomial:
    return max(p, key=key)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def poly_sub_scaled(p: Poly, c: Fraction, m: Monomial, q: Poly) -> Poly:
    """p - c * x^m * q."""
    out = dict(p)
    for mono, coef in q.items():
        key = mono_mul(mono, m)
        val = out.get(key, Fraction(0)) - c * coef
        if val:
            out[key] = val
        else:
            out.pop(key, None)
    return out


def reduce_poly(p: Poly, basis: Iterable[Poly], key) -> Poly:
    """Full normal form of p modulo the basis."""
    basis = list(basis)
    lms = [(leading_monomial(g, key), g) for g in basis if g]
    remainder: Poly = {}
    work = dict(p)
    while work:
        lm = leading_monomial(work, key)
        lc = work[lm]
        for glm, g in lms:
            if mono_divides(glm, lm):
                factor = mono_div(lm, glm)
                work = poly_sub_scaled(work, lc / g[glm], factor, g)
                break
        else:
            remainder[lm] = lc
            del work[lm]
    return remainder


def monic(p: Poly, key) -> Poly:
    if not p:
        return p
    lc = p[leading_monomial(p, key)]
    return {m: c / lc for m, c in p.items()}


def buchberger(
    gens: list[Poly],
    key: Callable,
    max_spairs: int = DEFAULT_MAX_SPAIRS,
    time_cap: float = DEFAULT_TIME_CAP,
) -> list[Poly]:
    """A reduced Groebner basis of the ideal of the generators."""
    start = time.monotonic()
    basis = [monic(g, key) for g in gens if g]
    pairs = list(combinations(range(len(basis)), 2))
    processed = 0
    while pairs:
        pairs.sort(
            key=lambda ij: grevlex_key(
                mono_lcm(
                    leading_monomial(basis[ij[0]], key),
                    leading_monomial(basis[ij[1]], key),
                )
            ),
            reverse=True,
        )
        i, j = pairs.pop()
        processed += 1
        if processed > max_spairs:
            raise ScaleLimit(f"more than {max_spairs} S-pairs processed")
        if time.monotonic() - start > time_cap:
            raise ScaleLimit(f"Groebner time cap of {time_cap}s exceeded")
        f, g = basis[i], basis[j]
        lf, lg = leading_monomial(f, key), leading_monomial(g, key)
        lcm = mono_lcm(lf, lg)
        if lcm == mono_mul(lf, lg):  # coprime leading monomials
            continue
        s = poly_sub_scaled(
            {mono_mul(m, mono_div(lcm, lf)): c for m, c in f.items()},
            Fraction(1),
            mono_div(lcm, lg),
            g,
        )
        s = reduce_poly(s, basis, key)
        if s:
            s = monic(s, key)
            basis.append(s)
            pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
    return _reduce_basis(basis, key)


def _reduce_basis(basis: list[Poly], key) -> list[Poly]:
    # minimalize: drop generators whose lead is divisible by another lead
    basis = [g for g in basis if g]
    lead = [leading_monomial(g, key) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        if any(
            j != i
            and mono_divides(lead[j], lead[i])
            and (lead[j] != lead[i] or j < i)
            for j in range(len(basis))
        ):
            continue
        keep.append(g)
    # inter-reduce tails
    out = []
    for i, g in enumerate(keep):
        others = keep[:i] + keep[i + 1 :]
        out.append(monic(reduce_poly(g, others, key), key))
    out.sort(key=lambda g: key(leading_monomial(g, key)))
    return out


def ideal_contains(groebner_basis: list[Poly], p: Poly, key) -> bool:
    return not reduce_poly(p, groebner_basis, key)

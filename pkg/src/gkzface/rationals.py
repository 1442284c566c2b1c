"""Gaussian rationals: exact complex scalars with rational real and imaginary parts.

All parameter arithmetic in this package happens here.  Every predicate the
library decides ("is a nonnegative integer", "is a negative integer", "is not
an integer") is exact on this field, which is why parameters are restricted
to it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rat = Fraction


def format_rat(q: Fraction) -> str:
    """Canonical string form: "p" for integers, "p/q" with q > 0 otherwise."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"cannot parse rational from {s!r}")


@dataclass(frozen=True)
class GaussRat:
    """A complex number re + im*i with exact rational parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: "GaussRat") -> "GaussRat":
        other = as_gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other: "GaussRat") -> "GaussRat":
        other = as_gauss(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other) -> "GaussRat":
        return as_gauss(other) - self

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.re, -self.im)

    def __mul__(self, other) -> "GaussRat":
        other = as_gauss(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    @property
    def is_real(self) -> bool:
        return self.im == 0

    @property
    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    @property
    def is_nat(self) -> bool:
        return self.is_integer and self.re >= 0

    @property
    def is_negative_integer(self) -> bool:
        return self.is_integer and self.re < 0

    def as_int(self) -> int:
        if not self.is_integer:
            raise ValueError(f"{self} is not an integer")
        return int(self.re)

    def __str__(self) -> str:
        if self.im == 0:
            return format_rat(self.re)
        return f"{format_rat(self.re)}+{format_rat(self.im)}i"

    def to_json(self) -> dict:
        return {"re": format_rat(self.re), "im": format_rat(self.im)}


Scalar = Union[GaussRat, Fraction, int, str, dict]


def as_gauss(x: Scalar) -> GaussRat:
    """Coerce ints, Fractions, "p/q" strings, and {re, im} dicts to GaussRat."""
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(Fraction(x))
    if isinstance(x, str):
        return GaussRat(parse_rat(x))
    if isinstance(x, dict):
        return GaussRat(parse_rat(x.get("re", 0)), parse_rat(x.get("im", 0)))
    raise ValueError(f"cannot interpret {x!r} as a Gaussian rational")


def as_parameter(entries) -> tuple[GaussRat, ...]:
    return tuple(as_gauss(x) for x in entries)


def apply_functional(coeffs, vec) -> GaussRat:
    """Evaluate an integer linear functional on a Gaussian-rational vector."""
    if len(coeffs) != len(vec):
        raise ValueError("functional/vector length mismatch")
    total = GaussRat()
    for c, v in zip(coeffs, vec):
        total = total + as_gauss(v) * c
    return total

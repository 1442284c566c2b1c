"""GKZ presentation data and the face-level symbolic answers.

Emits Euler operators and binomial generators, computes the full toric
ideal by saturating the lattice ideal at the product of the variables,
and produces the restriction and projection of the system to a face
coordinate subspace as symbolic descriptors: a face system with a shifted
exterior-algebra factor, or zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import NotHomogeneous, NotNormal, PostconditionViolated
from .faces import face_data, face_quantities, is_homogeneous
from .groebner import (
    DEFAULT_MAX_SPAIRS,
    DEFAULT_TIME_CAP,
    buchberger,
    elim_first_key,
    grevlex_key,
    leading_monomial,
)
from .intlinalg import as_int_matrix, kernel_lattice, mat_vec, shape
from .normality import is_normal
from .params import (
    HClass,
    Parameter,
    _beta_working,
    _coset_witness_working,
    classify_value,
    dual_parameter,
    find_lambda,
)
from .rationals import GaussRat, as_parameter
from .supports import cofsupp, fsupp


@dataclass(frozen=True)
class EulerOperator:
    """E_i - beta_i, encoded by the matrix row and the parameter entry."""

    row_index: int
    coefficients: tuple[int, ...]
    beta: GaussRat

    def to_json(self):
        return {
            "row": self.row_index,
            "coefficients": list(self.coefficients),
            "beta": self.beta.to_json(),
        }


@dataclass(frozen=True)
class BinomialGenerator:
    """The binomial d^plus - d^minus; the supports are disjoint."""

    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def exponent_difference(self) -> tuple[int, ...]:
        return tuple(p - m for p, m in zip(self.plus, self.minus))

    def to_json(self):
        return {"plus": list(self.plus), "minus": list(self.minus)}


def euler_operators(matrix, beta) -> list[EulerOperator]:
    m = as_int_matrix(matrix)
    b = as_parameter(beta)
    if len(b) != len(m):
        raise ValueError("parameter length must equal the row count")
    return [
        EulerOperator(i, tuple(m[i]), b[i]) for i in range(len(m))
    ]


def _binomial_from_kernel_vector(u) -> BinomialGenerator:
    plus = tuple(x if x > 0 else 0 for x in u)
    minus = tuple(-x if x < 0 else 0 for x in u)
    return BinomialGenerator(plus, minus)


def lattice_ideal_generators(matrix) -> list[BinomialGenerator]:
    """Binomials from a basis of the integer kernel of the matrix."""
    m = as_int_matrix(matrix)
    return [
        _binomial_from_kernel_vector(u) for u in kernel_lattice(m)
    ]


def toric_ideal_generators(
    matrix,
    max_spairs: int = DEFAULT_MAX_SPAIRS,
    time_cap: float = DEFAULT_TIME_CAP,
) -> list[BinomialGenerator]:
    """Generators of the full toric ideal.

    Saturates the lattice ideal at the product of all variables with one
    auxiliary variable t: a Groebner basis of the generators together
    with t*prod(vars) - 1 under an order eliminating t is intersected
    with the polynomial ring in the original variables.
    """
    m = as_int_matrix(matrix)
    d, n = shape(m)
    base = lattice_ideal_generators(m)
    if not base:
        return []
    gens = []
    for b in base:
        p = {(0,) + b.plus: Fraction(1), (0,) + b.minus: Fraction(-1)}
        gens.append(p)
    sat = {(1,) + (1,) * n: Fraction(1), (0,) * (n + 1): Fraction(-1)}
    gens.append(sat)
    gb = buchberger(gens, elim_first_key, max_spairs=max_spairs, time_cap=time_cap)
    out = []
    for g in gb:
        if any(mono[0] for mono in g):
            continue
        out.append(_binomial_from_poly(g, n, m))
    return sorted(out, key=lambda b: grevlex_key(b.plus))


def _binomial_from_poly(g, n, m) -> BinomialGenerator:
    if len(g) != 2:
        raise PostconditionViolated(
            "saturation of a pure difference ideal must stay binomial"
        )
    (m1, c1), (m2, c2) = sorted(
        g.items(), key=lambda it: grevlex_key(it[0]), reverse=True
    )
    if c1 != 1 or c2 != -1:
        raise PostconditionViolated("binomial is not a pure difference")
    plus, minus = m1[1:], m2[1:]
    diff = tuple(p - q for p, q in zip(plus, minus))
    if any(mat_vec(m, diff)):
        raise PostconditionViolated(
            "binomial exponent difference is outside the kernel"
        )
    return BinomialGenerator(plus, minus)


@dataclass(frozen=True)
class ModuleDescriptor:
    """Face system M_F(lambda) with an exterior factor and shift, or zero."""

    zero: bool
    face_columns: tuple[int, ...] = ()
    parameter: Parameter = ()
    degrees: tuple[tuple[int, int], ...] = ()
    mode: str = "default"

    def to_json(self):
        out = {"zero": self.zero, "mode": self.mode}
        if not self.zero:
            out["face"] = list(self.face_columns)
            out["lambda"] = [x.to_json() for x in self.parameter]
            out["degrees"] = [list(d) for d in self.degrees]
        return out


def _facet_condition(fl, face, bw, kind: HClass) -> bool:
    return all(
        classify_value(fl.facets[i].value(bw)) is kind
        for i in face.containing_facets
    )


def _require_normal(fl, what):
    if not is_normal(fl.matrix).verdict:
        raise NotNormal(f"{what} requires a saturated column semigroup")


def projection(matrix, face_cols, beta, mode: str = "default") -> ModuleDescriptor:
    """Direct image of the system onto the face coordinate subspace.

    Nonzero exactly when beta is in CF + Z^d and every facet containing F
    takes a negative integer value; then the answer is the face system at
    an aligned representative, tensored with an exterior algebra of rank
    d_{A/F} shifted by n_{A/F} - d_{A/F}.
    """
    if mode not in ("default", "as-printed"):
        raise ValueError(f"unknown mode {mode!r}")
    fl = face_data(matrix)
    face = fl.face(face_cols)
    _require_normal(fl, "the projection formula")
    bw = _beta_working(fl, beta)
    if _coset_witness_working(fl, face, beta) is None:
        return ModuleDescriptor(zero=True, mode=mode)
    if not _facet_condition(fl, face, bw, HClass.NEG_INT):
        return ModuleDescriptor(zero=True, mode=mode)
    lam = find_lambda(matrix, face_cols, beta, on_conflict="nonnegative")
    e, n_off = face_quantities(matrix, face_cols)
    s = n_off - e
    degrees = tuple(sorted((-k - s, comb(e, k)) for k in range(e + 1)))
    return ModuleDescriptor(
        zero=False,
        face_columns=face.columns,
        parameter=lam,
        degrees=degrees,
        mode=mode,
    )


def restriction(matrix, face_cols, beta, mode: str = "default") -> ModuleDescriptor:
    """Inverse image of the system along the face coordinate inclusion.

    In the default mode, nonzero exactly when beta is in CF + Z^d and
    every facet containing F takes a nonnegative integer value (the sign
    condition dual to the projection, which is what makes at most one of
    the two nonzero on a proper face).  The as-printed mode instead reuses
    the negative-integer condition.  The nonzero answer is the face system
    at an aligned representative, tensored with an exterior algebra of
    rank d_{A/F} shifted by -n_{A/F}.
    """
    if mode not in ("default", "as-printed"):
        raise ValueError(f"unknown mode {mode!r}")
    fl = face_data(matrix)
    face = fl.face(face_cols)
    _require_normal(fl, "the restriction formula")
    bw = _beta_working(fl, beta)
    kind = HClass.NAT_INT if mode == "default" else HClass.NEG_INT
    if _coset_witness_working(fl, face, beta) is None:
        return ModuleDescriptor(zero=True, mode=mode)
    if not _facet_condition(fl, face, bw, kind):
        return ModuleDescriptor(zero=True, mode=mode)
    lam = find_lambda(matrix, face_cols, beta, on_conflict="negative")
    e, n_off = face_quantities(matrix, face_cols)
    degrees = tuple(sorted((n_off - k, comb(e, k)) for k in range(e + 1)))
    return ModuleDescriptor(
        zero=False,
        face_columns=face.columns,
        parameter=lam,
        degrees=degrees,
        mode=mode,
    )


def dual_system(matrix, beta) -> Parameter:
    """The parameter of the holonomic dual system.

    Needs a saturated semigroup and columns on an affine hyperplane; the
    produced parameter exchanges the fiber and cofiber supports, which is
    re-checked exactly before returning.
    """
    fl = face_data(matrix)
    _require_normal(fl, "the duality formula")
    if is_homogeneous(matrix) is None:
        raise NotHomogeneous(
            "duality needs all columns on an affine hyperplane"
        )
    bp = dual_parameter(matrix, beta)
    if set(fsupp(matrix, bp).faces) != set(cofsupp(matrix, beta).faces) or set(
        cofsupp(matrix, bp).faces
    ) != set(fsupp(matrix, beta).faces):
        raise PostconditionViolated(
            "dual parameter does not exchange the fiber and cofiber supports"
        )
    return bp

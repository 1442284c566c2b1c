"""Fiber and cofiber supports as sets of torus orbits, and the symbolic
shape of orbit-level restriction and projection.

An orbit is named by its face; a torus-stable open set is an upward-closed
set of faces.  Membership criteria: the orbit of F is in the fiber support
iff beta is in CF + Z^d and every facet containing F takes a negative
integer value on beta; the cofiber support uses nonnegative integers.
These criteria are asserted only for saturated column semigroups, which is
also what empties the exceptional parameter set here.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional, Sequence

from .errors import NotNormal, NotUpwardClosed
from .faces import Face, FaceLattice, face_data, face_quantities
from .normality import is_normal
from .params import (
    CosetClass,
    HClass,
    Parameter,
    _beta_working,
    _coset_witness_working,
    classify_value,
    coset_classes,
)


@dataclass(frozen=True)
class OrbitSet:
    """A set of faces, each given by its sorted column index tuple."""

    faces: tuple[tuple[int, ...], ...]

    def __contains__(self, cols) -> bool:
        return tuple(sorted(cols)) in set(self.faces)

    def __iter__(self):
        return iter(self.faces)

    def __len__(self):
        return len(self.faces)

    def to_json(self):
        return [list(c) for c in self.faces]


def _orbit_set(col_sets) -> OrbitSet:
    return OrbitSet(tuple(sorted({tuple(sorted(c)) for c in col_sets}, key=lambda c: (len(c), c))))


def _require_normal(fl: FaceLattice):
    if not is_normal(fl.matrix).verdict:
        raise NotNormal(
            "support criteria are only asserted for a saturated column"
            " semigroup"
        )


def _orbit_in_support(fl: FaceLattice, face: Face, beta, kind: HClass) -> bool:
    if _coset_witness_working(fl, face, beta) is None:
        return False
    bw = _beta_working(fl, beta)
    return all(
        classify_value(fl.facets[i].value(bw)) is kind
        for i in face.containing_facets
    )


def orbit_in_fsupp(matrix, face_cols, beta) -> bool:
    """Is the orbit of this face inside the fiber support?"""
    fl = face_data(matrix)
    _require_normal(fl)
    return _orbit_in_support(fl, fl.face(face_cols), beta, HClass.NEG_INT)


def orbit_in_cofsupp(matrix, face_cols, beta) -> bool:
    """Is the orbit of this face inside the cofiber support?"""
    fl = face_data(matrix)
    _require_normal(fl)
    return _orbit_in_support(fl, fl.face(face_cols), beta, HClass.NAT_INT)


def fsupp(matrix, beta) -> OrbitSet:
    """All faces whose orbit lies in the fiber support."""
    fl = face_data(matrix)
    _require_normal(fl)
    return _orbit_set(
        f.columns
        for f in fl.faces
        if _orbit_in_support(fl, f, beta, HClass.NEG_INT)
    )


def cofsupp(matrix, beta) -> OrbitSet:
    """All faces whose orbit lies in the cofiber support."""
    fl = face_data(matrix)
    _require_normal(fl)
    return _orbit_set(
        f.columns
        for f in fl.faces
        if _orbit_in_support(fl, f, beta, HClass.NAT_INT)
    )


def classify_mgm(matrix, beta) -> dict:
    """Mixed and dual mixed Gauss-Manin flags for the parameter.

    Both reduce to: the fiber and cofiber supports meet only in the dense
    orbit.  Saturation makes the semigroup ring Cohen-Macaulay, which
    collapses the complex-level and module-level supports and empties the
    exceptional set, so the two flags coincide here.
    """
    fl = face_data(matrix)
    _require_normal(fl)
    fs = fsupp(matrix, beta)
    cs = cofsupp(matrix, beta)
    top = fl.top.columns
    meet = set(fs.faces) & set(cs.faces)
    both = meet == {top}
    return {"MGM": both, "dual_MGM": both}


def check_upward_closed(fl: FaceLattice, col_sets) -> OrbitSet:
    """Validate a face set as upward closed; returns it normalized."""
    faces = []
    for cols in col_sets:
        faces.append(fl.face(cols))
    have = {f.columns for f in faces}
    for f in faces:
        for g in fl.faces:
            if set(f.columns) <= set(g.columns) and g.columns not in have:
                raise NotUpwardClosed(
                    f"face {list(g.columns)} contains {list(f.columns)}"
                    " but is missing from the open set"
                )
    return _orbit_set(have)


def preimage_open_set(matrix, face_cols, open_set) -> OrbitSet:
    """Trace of an upward-closed face set on the faces of one face."""
    fl = face_data(matrix)
    face = fl.face(face_cols)
    u = check_upward_closed(fl, open_set)
    members = set(u.faces)
    return _orbit_set(
        g.columns
        for g in fl.faces
        if set(g.columns) <= set(face.columns) and g.columns in members
    )


@dataclass(frozen=True)
class MgmDescriptor:
    """Shape of an orbit-level projection or restriction.

    degrees lists (cohomological degree, multiplicity) pairs; the
    multiplicities are binomial coefficients of the exterior rank, placed
    from -rank to 0 for projections and 0 to rank for dual restrictions.
    """

    zero: bool
    face_columns: tuple[int, ...] = ()
    classes: tuple[CosetClass, ...] = ()
    exterior_rank: int = 0
    shift: int = 0
    degrees: tuple[tuple[int, int], ...] = ()

    def to_json(self):
        if self.zero:
            return {"zero": True}
        return {
            "zero": False,
            "face": list(self.face_columns),
            "classes": [
                [x.to_json() for x in c.representative] for c in self.classes
            ],
            "exterior_rank": self.exterior_rank,
            "shift": self.shift,
            "degrees": [list(d) for d in self.degrees],
        }


def _mgm_descriptor(matrix, face_cols, open_set, beta, dual: bool) -> MgmDescriptor:
    fl = face_data(matrix)
    face = fl.face(face_cols)
    u = check_upward_closed(fl, open_set)
    if fl.top.columns not in set(u.faces):
        raise NotUpwardClosed("the open set must contain the dense orbit")
    if face.columns not in set(u.faces):
        return MgmDescriptor(zero=True)
    if _coset_witness_working(fl, face, beta) is None:
        return MgmDescriptor(zero=True)
    classes = tuple(coset_classes(matrix, face_cols, beta))
    e, _ = face_quantities(matrix, face_cols)
    if dual:
        degrees = tuple((e - k, comb(e, k)) for k in range(e + 1))
        shift = e
    else:
        degrees = tuple((-k, comb(e, k)) for k in range(e + 1))
        shift = 0
    return MgmDescriptor(
        zero=False,
        face_columns=face.columns,
        classes=classes,
        exterior_rank=e,
        shift=shift,
        degrees=tuple(sorted(degrees)),
    )


def mgm_project(matrix, face_cols, open_set, beta) -> MgmDescriptor:
    """Projection of the orbit-level object onto the face coordinates."""
    return _mgm_descriptor(matrix, face_cols, open_set, beta, dual=False)


def mgm_restrict_dual(matrix, face_cols, open_set, beta) -> MgmDescriptor:
    """Restriction of the dual orbit-level object to the face coordinates."""
    return _mgm_descriptor(matrix, face_cols, open_set, beta, dual=True)

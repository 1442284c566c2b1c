"""Face lattice, facets, and primitive integral support functions of a cone.

A face is stored as the set of *all* column indices lying on it, so face
containment, intersection, and the orbit bookkeeping downstream are plain
set operations.  When the column lattice is a proper sublattice of Z^d the
columns are first re-expressed in a basis of that lattice (recorded on the
lattice object), which is what makes the support functions primitive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import EmptyFace, NotAFace, NotFullRank
from .intlinalg import (
    IntMatrix,
    IntVector,
    as_int_matrix,
    columns,
    hnf,
    identity,
    kernel_lattice,
    mat_vec,
    shape,
    solve_rational,
    transpose,
)
from .linineq import rational_lp_feasible
from .rationals import GaussRat, apply_functional, as_gauss


@dataclass(frozen=True)
class SupportFn:
    """Integer linear functional h(x) = sum coeffs[j] * x_j."""

    coeffs: IntVector

    def value_int(self, vec: Sequence[int]) -> int:
        return sum(c * v for c, v in zip(self.coeffs, vec))

    def value(self, vec) -> GaussRat:
        return apply_functional(self.coeffs, vec)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class Face:
    """A face of the cone, as the maximal set of columns lying on it."""

    columns: tuple[int, ...]
    rank: int
    containing_facets: tuple[int, ...]

    @property
    def column_set(self) -> frozenset:
        return frozenset(self.columns)


def cone_facet_normals(matrix: IntMatrix) -> tuple[IntVector, ...]:
    """Facet normals of cone(columns), primitive in the ambient Z^rows.

    Enumerates column subsets of size rows-1; a subset spanning a hyperplane
    contributes its integer normal if that normal is sign-consistent on all
    columns.  Sorted for determinism.
    """
    d, n = shape(matrix)
    cols = [tuple(row[j] for row in matrix) for j in range(n)]
    found = {}
    for subset in itertools.combinations(range(n), d - 1):
        sub = as_int_matrix([cols[j] for j in subset]) if subset else ()
        kern = kernel_lattice(sub) if subset else identity(d)
        if len(kern) != 1:
            continue
        h = kern[0]
        values = [sum(c * x for c, x in zip(h, col)) for col in cols]
        if all(v >= 0 for v in values):
            pass
        elif all(v <= 0 for v in values):
            h = tuple(-c for c in h)
        else:
            continue
        found[h] = True
    return tuple(sorted(found))


class FaceLattice:
    """All face data of one integer matrix, computed once and cached.

    Attributes:
        original: the input matrix (d x n).
        matrix: the working matrix, re-expressed so its column lattice is
            the full integer lattice of its row count.
        basis: rows are the Z-basis of the original column lattice; the
            identity when no re-expression was needed.
        facets / facet_columns: primitive support functions and their zero
            column sets, sorted by coefficient tuple.
        faces: every face, sorted by (size, columns); the top face is last.
    """

    def __init__(self, matrix):
        self.original = as_int_matrix(matrix)
        d, n = shape(self.original)
        if d == 0 or n == 0:
            raise ValueError("matrix must have at least one row and column")
        self.d, self.n = d, n

        h, _ = hnf(transpose(self.original))
        basis_rows = tuple(row for row in h if any(row))
        self.rank = len(basis_rows)
        if self.rank < d:
            raise NotFullRank(
                f"columns span a rank-{self.rank} subspace of R^{d};"
                " re-express the matrix on a basis of that subspace first"
            )
        if basis_rows == identity(d):
            self.basis = identity(d)
            self.matrix = self.original
            self.reexpressed = False
        else:
            self.basis = basis_rows
            self.matrix = self._express_columns(basis_rows)
            self.reexpressed = True
        self.dw = self.rank

        normals = cone_facet_normals(self.matrix)
        self.facets: tuple[SupportFn, ...] = tuple(SupportFn(h) for h in normals)
        work_cols = [tuple(r[j] for r in self.matrix) for j in range(n)]
        self.facet_columns: tuple[tuple[int, ...], ...] = tuple(
            tuple(j for j in range(n) if f.value_int(work_cols[j]) == 0)
            for f in self.facets
        )
        self.faces = self._close_under_intersection()
        self._by_columns = {f.columns: f for f in self.faces}
        self._pointed: Optional[bool] = None

    def _express_columns(self, basis_rows) -> IntMatrix:
        out = []
        bt = transpose(as_int_matrix(basis_rows))
        for j in range(self.n):
            col = tuple(row[j] for row in self.original)
            sol = solve_rational(bt, col)
            if sol is None or any(not x.is_integer for x in sol):
                raise AssertionError("column not in its own lattice")
            out.append(tuple(x.as_int() for x in sol))
        return transpose(as_int_matrix(out))

    def _close_under_intersection(self) -> tuple[Face, ...]:
        top = frozenset(range(self.n))
        sets = {top} | {frozenset(c) for c in self.facet_columns}
        frontier = list(sets)
        while frontier:
            new = []
            for s in frontier:
                for t in list(sets):
                    st = s & t
                    if st not in sets:
                        sets.add(st)
                        new.append(st)
            frontier = new
        faces = []
        for s in sorted(sets, key=lambda s: (len(s), sorted(s))):
            cols = tuple(sorted(s))
            sub = as_int_matrix([self.working_column(j) for j in cols]) if cols else ()
            r = 0
            if cols:
                hh, _ = hnf(sub)
                r = sum(1 for row in hh if any(row))
            containing = tuple(
                i for i, fc in enumerate(self.facet_columns) if s <= set(fc)
            )
            faces.append(Face(cols, r, containing))
        return tuple(faces)

    # -- coordinates ---------------------------------------------------

    def working_column(self, j: int) -> IntVector:
        return tuple(row[j] for row in self.matrix)

    def to_working(self, vec) -> tuple[GaussRat, ...]:
        """Express an ambient parameter vector in working coordinates."""
        if self.reexpressed is False:
            return tuple(as_gauss(v) for v in vec)
        sol = solve_rational(transpose(self.basis), vec)
        if sol is None:
            raise AssertionError("full-rank basis must be solvable")
        return sol

    def from_working(self, vec) -> tuple:
        """Map a working-coordinates vector back to ambient coordinates."""
        if self.reexpressed is False:
            return tuple(vec)
        if all(isinstance(v, int) for v in vec):
            return tuple(
                sum(v * b[i] for v, b in zip(vec, self.basis)) for i in range(self.d)
            )
        out = []
        for i in range(self.d):
            total = GaussRat()
            for v, b in zip(vec, self.basis):
                total = total + apply_functional((b[i],), (v,))
            out.append(total)
        return tuple(out)

    # -- face access ----------------------------------------------------

    @property
    def top(self) -> Face:
        return self.faces[-1]

    def face(self, cols) -> Face:
        key = tuple(sorted(int(c) for c in cols))
        if any(c < 0 or c >= self.n for c in key):
            raise NotAFace(f"column index out of range in {key}")
        try:
            return self._by_columns[key]
        except KeyError:
            raise NotAFace(f"{list(key)} is not a face of the cone") from None

    def containing_facet_fns(self, face: Face):
        return [self.facets[i] for i in face.containing_facets]

    def is_pointed(self) -> bool:
        if self._pointed is None:
            cols = [self.working_column(j) for j in range(self.n)]
            constraints = [(c, ">=", 1) for c in cols if any(c)]
            self._pointed = rational_lp_feasible(constraints, self.dw) is not None
        return self._pointed


@lru_cache(maxsize=256)
def _face_data_cached(matrix: IntMatrix) -> FaceLattice:
    return FaceLattice(matrix)


def face_data(matrix) -> FaceLattice:
    return _face_data_cached(as_int_matrix(matrix))


def facets(matrix) -> list[tuple[Face, SupportFn]]:
    """All facets with their primitive integral support functions."""
    fl = face_data(matrix)
    out = []
    for i, fn in enumerate(fl.facets):
        out.append((fl.face(fl.facet_columns[i]), fn))
    return out


def face_lattice(matrix) -> list[Face]:
    return list(face_data(matrix).faces)


def is_pointed(matrix) -> bool:
    """True iff the cone of the columns contains no line."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    cols = [tuple(row[j] for row in m) for j in range(n)]
    constraints = [(c, ">=", 1) for c in cols if any(c)]
    return rational_lp_feasible(constraints, d) is not None


def is_homogeneous(matrix) -> Optional[tuple[Fraction, ...]]:
    """A rational c with <c, a_j> = 1 for every column a_j, or None."""
    m = as_int_matrix(matrix)
    d, n = shape(m)
    sol = solve_rational(transpose(m), [1] * n)
    if sol is None:
        return None
    return tuple(x.re for x in sol)


def face_quantities(matrix, face_cols) -> tuple[int, int]:
    """(codimension of the face span, number of columns off the face)."""
    fl = face_data(matrix)
    f = fl.face(face_cols)
    return fl.dw - f.rank, fl.n - len(f.columns)


@dataclass(frozen=True)
class FaceBasis:
    """A face expressed intrinsically on a basis of its own lattice ZF.

    basis: rows are the chosen Z-basis of ZF, in ambient coordinates;
        basis_working holds the same vectors in the working frame.
    local: the face columns written on that basis (full row rank, and its
        column lattice is all of Z^rank by construction).
    facet_support_fns / facet_local_columns / facet_ambient_columns: the
    facets of the face with primitive support functions on the basis.
    """

    face: Face
    basis: tuple
    basis_working: tuple[IntVector, ...]
    local: IntMatrix
    facet_support_fns: tuple[SupportFn, ...]
    facet_local_columns: tuple[tuple[int, ...], ...]
    facet_ambient_columns: tuple[tuple[int, ...], ...]

    def coords(self, working_vec) -> tuple[GaussRat, ...]:
        """Coordinates of a vector of CF on the basis (working frame)."""
        sol = solve_rational(transpose(as_int_matrix(self.basis_working)), working_vec)
        if sol is None:
            raise ValueError("vector is not in the span of the face")
        return sol


def face_basis(matrix, face_cols) -> FaceBasis:
    """Z-basis of ZF and the primitive support functions of F's facets."""
    fl = face_data(matrix)
    f = fl.face(face_cols)
    if not f.columns or f.rank == 0:
        raise EmptyFace("the face has no nonzero columns, so ZF is trivial")
    fcols = [fl.working_column(j) for j in f.columns]
    h, _ = hnf(as_int_matrix(fcols))
    basis_w = tuple(row for row in h if any(row))
    bt = transpose(as_int_matrix(basis_w))
    local_cols = []
    for col in fcols:
        sol = solve_rational(bt, col)
        if sol is None or any(not x.is_integer for x in sol):
            raise AssertionError("face column outside ZF")
        local_cols.append(tuple(x.as_int() for x in sol))
    local = transpose(as_int_matrix(local_cols))
    sub = face_data(local)
    fns = sub.facets
    local_facet_cols = sub.facet_columns
    ambient = tuple(
        tuple(f.columns[i] for i in loc) for loc in local_facet_cols
    )
    basis_ambient = tuple(fl.from_working(b) for b in basis_w)
    return FaceBasis(
        face=f,
        basis=basis_ambient,
        basis_working=basis_w,
        local=local,
        facet_support_fns=fns,
        facet_local_columns=local_facet_cols,
        facet_ambient_columns=ambient,
    )

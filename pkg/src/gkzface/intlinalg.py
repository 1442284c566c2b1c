"""Exact integer and rational linear algebra.

Matrices are immutable tuples of tuples of Python ints, so results are
hashable and safely shareable.  The Hermite form convention is fixed: row
style, pivots positive, entries above each pivot reduced into [0, pivot).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .rationals import GaussRat, as_gauss

IntMatrix = tuple[tuple[int, ...], ...]
IntVector = tuple[int, ...]


def as_int_matrix(rows) -> IntMatrix:
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix")
    return mat


def shape(m: IntMatrix) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: IntMatrix, v: Sequence[int]) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_add(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Sequence[int], v: Sequence[int]) -> IntVector:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(k: int, v: Sequence[int]) -> IntVector:
    return tuple(k * x for x in v)


def primitive(v: Sequence[int]) -> IntVector:
    """Divide by the gcd; sign fixed so the first nonzero entry is positive."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    w = [x // g for x in v]
    for x in w:
        if x != 0:
            if x < 0:
                w = [-y for y in w]
            break
    return tuple(w)


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form.

    Returns (H, U) with U unimodular, U*m = H, H in row echelon form with
    positive pivots and entries above each pivot reduced into [0, pivot).
    """
    rows, cols = shape(m)
    h = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    pivot_row = 0
    pivot_cols = []
    for col in range(cols):
        # find a row at or below pivot_row with a nonzero entry in col
        nz = [i for i in range(pivot_row, rows) if h[i][col] != 0]
        if not nz:
            continue
        # euclidean elimination within the column
        while len(nz) > 1:
            nz.sort(key=lambda i: abs(h[i][col]))
            i0 = nz[0]
            for i in nz[1:]:
                q = h[i][col] // h[i0][col]
                if q:
                    h[i] = [a - q * b for a, b in zip(h[i], h[i0])]
                    u[i] = [a - q * b for a, b in zip(u[i], u[i0])]
            nz = [i for i in nz if h[i][col] != 0]
        i0 = nz[0]
        if i0 != pivot_row:
            h[i0], h[pivot_row] = h[pivot_row], h[i0]
            u[i0], u[pivot_row] = u[pivot_row], u[i0]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-a for a in h[pivot_row]]
            u[pivot_row] = [-a for a in u[pivot_row]]
        p = h[pivot_row][col]
        for i in range(pivot_row):
            q = h[i][col] // p
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
                u[i] = [a - q * b for a, b in zip(u[i], u[pivot_row])]
        pivot_cols.append(col)
        pivot_row += 1
        if pivot_row == rows:
            break
    return tuple(map(tuple, h)), tuple(map(tuple, u))


def rank(m: IntMatrix) -> int:
    h, _ = hnf(m)
    return sum(1 for row in h if any(row))


def snf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with U*m*V = S diagonal,
    diagonal entries nonnegative and each dividing the next."""
    rows, cols = shape(m)
    s = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]
    v = [list(r) for r in identity(cols)]

    def row_op(i, j, q):
        s[i] = [a - q * b for a, b in zip(s[i], s[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):
        for r in s:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in s:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        # move a smallest-magnitude nonzero entry of the trailing block to (t, t)
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        if best[0] != t:
            swap_rows(t, best[0])
        if best[1] != t:
            swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
        # make the pivot divide every entry of the trailing block
        p = s[t][t]
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if s[i][j] % p:
                    row_op(t, i, -1)  # add row i to row t
                    fixed = False
                    break
            if not fixed:
                break
        if not fixed:
            continue
        if s[t][t] < 0:
            s[t] = [-a for a in s[t]]
            u[t] = [-a for a in u[t]]
        t += 1
    return tuple(map(tuple, s)), tuple(map(tuple, u)), tuple(map(tuple, v))


def kernel_lattice(m: IntMatrix) -> tuple[IntVector, ...]:
    """Basis of the saturated integer kernel {u : m*u = 0}.

    Rows of the unimodular transform attached to the Hermite form of m^T
    that hit zero rows form such a basis; saturation is automatic because
    they extend to a basis of Z^n.
    """
    rows, cols = shape(m)
    if cols == 0:
        return ()
    if rows == 0:
        return identity(cols)
    h, u = hnf(transpose(m))
    basis = [u[i] for i in range(cols) if not any(h[i])]
    if not basis:
        return ()
    # Hermite-reduce the basis itself so the output is canonical.
    hb, _ = hnf(as_int_matrix(basis))
    return tuple(row for row in hb if any(row))


def member_of_image_lattice(v: Sequence[int], m: IntMatrix) -> Optional[IntVector]:
    """An integer z with m*z = v, or None.  Decided through the Smith form."""
    rows, cols = shape(m)
    v = tuple(int(x) for x in v)
    if len(v) != rows:
        raise ValueError("vector length must equal the row count")
    if cols == 0:
        return () if not any(v) else None
    s, u, vt = snf(m)
    w = mat_vec(u, v)
    z_diag = []
    for i in range(cols):
        d = s[i][i] if i < rows else 0
        wi = w[i] if i < rows else 0
        if d == 0:
            if i < rows and wi != 0:
                return None
            z_diag.append(0)
        else:
            if wi % d:
                return None
            z_diag.append(wi // d)
    for i in range(cols, rows):
        if w[i] != 0:
            return None
    return mat_vec(vt, z_diag)


def in_lattice_span(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    """Is v an integer combination of the given vectors?"""
    if not basis:
        return not any(v)
    m = transpose(as_int_matrix(basis))
    return member_of_image_lattice(v, m) is not None


def solve_rational(m, rhs) -> Optional[tuple]:
    """One exact solution x of m*x = rhs over the Gaussian rationals, or None.

    Free variables are set to zero, so the output is deterministic.
    """
    rows = [[as_gauss(x) for x in row] for row in m]
    b = [as_gauss(x) for x in rhs]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [rows[i] + [b[i]] for i in range(nrows)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = _gauss_inverse(aug[r][c])
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    x = [GaussRat() for _ in range(ncols)]
    for i, c in enumerate(pivots):
        x[c] = aug[i][ncols]
    return tuple(x)


def _gauss_inverse(z: GaussRat) -> GaussRat:
    n = z.re * z.re + z.im * z.im
    if n == 0:
        raise ZeroDivisionError("inverse of zero")
    return GaussRat(z.re / n, -z.im / n)


def column(m: IntMatrix, j: int) -> IntVector:
    return tuple(row[j] for row in m)


def columns(m: IntMatrix, js) -> tuple[IntVector, ...]:
    return tuple(column(m, j) for j in js)

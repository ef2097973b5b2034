"""Exact reduced simplicial homology over Q and over prime fields.

Boundary matrices use the orientation induced by sorted vertex order: the
face obtained by deleting the vertex in position i carries sign (-1)^i.
Chain degree -1 is the span of the empty face, so homology is reduced and
the complex that contains only the empty face has one unit of homology in
degree -1.

Rank computations are exact everywhere: fraction-free integer elimination
over Q, bitset elimination over GF(2), and modular elimination over GF(p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p):
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Exact coefficient field: the rationals or GF(p)."""

    kind: str  # "Q" or "GF"
    p: int | None = None

    @classmethod
    def rationals(cls):
        return cls("Q")

    @classmethod
    def prime(cls, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls("GF", p)

    @classmethod
    def parse(cls, text):
        t = text.strip().lower()
        if t in ("q", "qq", "rational", "rationals"):
            return cls.rationals()
        if t.startswith("gf"):
            return cls.prime(int(t[2:]))
        raise ValueError(f"cannot parse field {text!r}")

    def __str__(self):
        return "Q" if self.kind == "Q" else f"GF({self.p})"


QQ = FieldSpec.rationals()
GF2 = FieldSpec.prime(2)


@dataclass
class BoundaryMatrix:
    """Signed incidence matrix of the boundary map on k-faces.

    columns[c] lists (row_index, sign) pairs; rows are the (k-1)-faces,
    with the single empty face as augmentation row when k = 0.
    """

    k: int
    rows: tuple
    cols: tuple
    columns: tuple
    field: FieldSpec

    @property
    def shape(self):
        return (len(self.rows), len(self.cols))


def boundary_matrix(c, k, field=QQ):
    if k < 0 or k > c.dim + 1:
        raise ValueError(f"boundary degree {k} out of range")
    cols = c.faces_of_dim(k)
    rows = c.faces_of_dim(k - 1)
    row_index = {f: i for i, f in enumerate(rows)}
    columns = []
    for f in cols:
        col = []
        for i in range(len(f)):
            sub = f[:i] + f[i + 1:]
            col.append((row_index[sub], -1 if i % 2 else 1))
        columns.append(tuple(col))
    return BoundaryMatrix(k, rows, cols, tuple(columns), field)


# -- exact rank --------------------------------------------------------------


def gf2_rank(columns):
    """Rank over GF(2) of columns given as row-bitmask integers."""
    pivots = {}
    rank = 0
    for col in columns:
        while col:
            low = col & -col
            other = pivots.get(low)
            if other is None:
                pivots[low] = col
                rank += 1
                break
            col ^= other
    return rank


def int_rank(rows):
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        for i in range(r + 1, nr):
            fi = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, nc):
                row_i[j] = (row_i[j] * pv - fi * row_r[j]) // prev
            row_i[c] = 0
        prev = pv
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


def gfp_rank(rows, p):
    m = [[x % p for x in r] for r in rows]
    if not m or not m[0]:
        return 0
    nr, nc = len(m), len(m[0])
    rank = 0
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        row_r = m[r]
        for i in range(r + 1, nr):
            fi = m[i][c]
            if fi:
                mult = fi * inv % p
                row_i = m[i]
                for j in range(c, nc):
                    row_i[j] = (row_i[j] - mult * row_r[j]) % p
        rank += 1
        r += 1
        if r == nr:
            break
    return rank


def _dense_rows(mat):
    nr = len(mat.rows)
    rows = [[0] * len(mat.cols) for _ in range(nr)]
    for ci, col in enumerate(mat.columns):
        for ri, sign in col:
            rows[ri][ci] = sign
    return rows


def rank_exact(mat):
    """Exact rank of a BoundaryMatrix over its field."""
    if not mat.rows or not mat.cols:
        return 0
    if mat.field.kind == "GF" and mat.field.p == 2:
        columns = []
        for col in mat.columns:
            v = 0
            for ri, _ in col:
                v |= 1 << ri
            columns.append(v)
        return gf2_rank(columns)
    rows = _dense_rows(mat)
    if mat.field.kind == "GF":
        return gfp_rank(rows, mat.field.p)
    return int_rank(rows)


# -- reduced Betti numbers ----------------------------------------------------


def reduced_betti(c, field=QQ):
    """Reduced Betti numbers {k: b_k} for k = -1 .. dim."""
    d = c.dim
    ranks = {d + 1: 0}
    for k in range(0, d + 1):
        ranks[k] = rank_exact(boundary_matrix(c, k, field))
    out = {-1: 1 - ranks.get(0, 0)}
    for k in range(0, d + 1):
        out[k] = len(c.faces_of_dim(k)) - ranks[k] - ranks[k + 1]
    return out


def top_homology_nonzero(c, field=QQ):
    """True iff the top cycle space is nonzero; in top dimension there are
    no boundaries, so this is exactly nonvanishing of top homology."""
    d = c.dim
    if d < 0:
        return False
    mat = boundary_matrix(c, d, field)
    return len(mat.cols) - rank_exact(mat) > 0


# -- kernels -----------------------------------------------------------------


def _kernel_q(rows, nc):
    m = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                fi = m[i][c]
                m[i] = [a - fi * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * nc
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


def _kernel_gfp(rows, nc, p):
    m = [[x % p for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, len(m)):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                fi = m[i][c]
                m[i] = [(a - fi * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * nc
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = (-m[ri][fc]) % p
        basis.append(v)
    return basis


def kernel_basis(mat):
    """Deterministic kernel basis (one vector per free column of the RREF)."""
    if not mat.cols:
        return []
    nc = len(mat.cols)
    if not mat.rows:
        if mat.field.kind == "GF":
            return [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]
        return [[Fraction(i == j) for j in range(nc)] for i in range(nc)]
    rows = _dense_rows(mat)
    if mat.field.kind == "GF":
        return _kernel_gfp(rows, nc, mat.field.p)
    return _kernel_q(rows, nc)


@dataclass
class CycleVector:
    """A cycle in the top chain group, as face -> nonzero coefficient."""

    coefficients: dict

    @property
    def support(self):
        return tuple(sorted(self.coefficients))


def top_cycle_space(c, field=QQ):
    """Basis of the cycle space in top dimension.

    Top-dimensional cycles are homology classes, there being no boundaries
    from one dimension up.
    """
    d = c.dim
    if d < 0:
        return []
    mat = boundary_matrix(c, d, field)
    basis = kernel_basis(mat)
    out = []
    for vec in basis:
        coeffs = {mat.cols[i]: x for i, x in enumerate(vec) if x}
        out.append(CycleVector(coeffs))
    return out

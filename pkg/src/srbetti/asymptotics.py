"""f-vector transfer under subdivision, exact eigen-machinery for the
limit polynomial, minimal top cycles and last-strand limit ratios.

Everything here is exact: the transfer matrix has integer entries, its
eigendecomposition is computed over the rationals, and all convergence
statements are checked by comparing exact rationals, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .complexes import (
    GateError,
    SimplicialComplex,
    cycle,
    simplex,
    stacked_attach,
    stacked_sphere,
)
from .homology import GF2, boundary_matrix, kernel_basis
from .hochster import graded_betti_table
from .subdivision import barycentric, barycentric_iter, edgewise, interior_vertices

LAMBDA_GATE = 8
CYCLE_ENUM_GATE = 1 << 20


# -- transfer matrix and its eigendata ----------------------------------------


@lru_cache(maxsize=None)
def sd_transfer_matrix(d):
    """(d+1) x (d+1) integer matrix sending f-vectors to f-vectors of the
    barycentric subdivision, rows and columns indexed -1..d-1.

    Entry (i, j) counts the j-dimensional faces in the interior of the
    subdivided i-simplex, obtained here by constructing that subdivision
    and discarding the faces of its boundary complex.  Row -1 is the unit
    vector for the empty face.
    """
    if not 1 <= d <= LAMBDA_GATE:
        raise GateError(f"transfer matrix gated at d <= {LAMBDA_GATE}")
    size = d + 1
    mat = [[0] * size for _ in range(size)]
    mat[0][0] = 1
    for i in range(d):
        sub = barycentric(simplex(i))
        bset = sub.boundary_complex().face_set
        for jdim in range(i + 1):
            mat[i + 1][jdim + 1] = sum(
                1 for f in sub.faces_of_dim(jdim) if f not in bset)
    return tuple(tuple(row) for row in mat)


def f_iterate_sd(f, r):
    """Exact row-vector iteration of an f-vector under subdivision."""
    if r < 0:
        raise ValueError("iteration count must be nonnegative")
    f = tuple(f)
    mat = sd_transfer_matrix(len(f) - 1)
    for _ in range(r):
        f = tuple(sum(f[i] * mat[i][j] for i in range(len(f)))
                  for j in range(len(f)))
    return f


def _mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def _mat_inv(a):
    n = len(a)
    m = [[Fraction(a[i][j]) for j in range(n)] + [Fraction(i == j) for j in range(n)]
         for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        m[c], m[piv] = m[piv], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                fi = m[i][c]
                m[i] = [x - fi * y for x, y in zip(m[i], m[c])]
    return [row[n:] for row in m]


def _kernel_of(a):
    """Deterministic rational kernel basis, one vector per free column."""
    n = len(a)
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                fi = m[i][c]
                m[i] = [x - fi * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for ri, pc in enumerate(pivots):
            v[pc] = -m[ri][fc]
        basis.append(v)
    return basis


@dataclass
class EigenData:
    """Exact diagonalization of the subdivision transfer matrix."""

    d: int
    p: list          # right eigenvectors as columns; last column is e_{d+1}
    diag: list       # factorial eigenvalues 0!, 1!, ..., d!
    p_inv: list

    @property
    def p_inv_last_row(self):
        return self.p_inv[-1]

    @property
    def vertex_constant(self):
        """Entry of P^{-1} in the last row, second column."""
        return self.p_inv[-1][1]


def eigendecompose(mat):
    """Exact eigendecomposition of the transfer matrix.

    Eigenvalues are the factorials 0!..d! with 1 repeated; eigenvectors are
    a deterministic echelon kernel basis per eigenvalue and the last column
    is normalized to the unit vector e_{d+1}, which is always an
    eigenvector for d!.  Raises if the eigenspaces do not reconstruct the
    matrix, which would contradict diagonalizability.
    """
    size = len(mat)
    d = size - 1
    eigenvalues = [factorial(k) for k in range(size)]
    columns = []
    seen = set()
    for lam in eigenvalues:
        if lam in seen:
            continue
        seen.add(lam)
        shifted = [[Fraction(mat[i][j]) - (lam if i == j else 0)
                    for j in range(size)] for i in range(size)]
        basis = _kernel_of(shifted)
        if len(basis) != eigenvalues.count(lam):
            raise ValueError("transfer matrix failed to diagonalize")
        columns.extend(basis)
    p = [[columns[c][r] for c in range(size)] for r in range(size)]
    # normalize the final column to the unit vector
    last = [p[r][size - 1] for r in range(size)]
    scale = last[size - 1]
    if scale == 0 or any(last[r] for r in range(size - 1)):
        raise ValueError("last eigenvector is not a multiple of e_{d+1}")
    for r in range(size):
        p[r][size - 1] /= scale
    p_inv = _mat_inv(p)
    diag = [[Fraction(eigenvalues[i]) if i == j else Fraction(0)
             for j in range(size)] for i in range(size)]
    recon = _mat_mul(_mat_mul(p, diag), p_inv)
    if any(recon[i][j] != mat[i][j] for i in range(size) for j in range(size)):
        raise ValueError("eigendecomposition does not reconstruct the matrix")
    return EigenData(d=d, p=p, diag=[Fraction(v) for v in eigenvalues], p_inv=p_inv)


@lru_cache(maxsize=None)
def _eigendata(d):
    return eigendecompose(sd_transfer_matrix(d))


def limit_polynomial_from_f(f):
    """Coefficients of the limit of the normalized f-polynomials.

    Returns (c_0, ..., c_d) pairing with (t^d, ..., t^0): the limit of
    f-polynomial / (d!)^r under iterated subdivision, computed as
    (f P) M P^{-1} with M the matrix whose only nonzero entry is a 1 in
    the lower right corner.
    """
    f = tuple(f)
    size = len(f)
    eig = _eigendata(size - 1)
    fp = [sum(Fraction(f[i]) * eig.p[i][j] for i in range(size))
          for j in range(size)]
    masked = [Fraction(0)] * size
    masked[size - 1] = fp[size - 1]
    return tuple(sum(masked[t] * eig.p_inv[t][j] for t in range(size))
                 for j in range(size))


def limit_polynomial(c):
    return limit_polynomial_from_f(c.f_vector())


def limit_vertex_constant(d):
    """Limit of f_0 / (d!)^r per unit of top-dimensional face count."""
    return _eigendata(d).vertex_constant


def interior_vertex_count_after_3(d):
    """Number of vertices of the 3-fold subdivided (d-1)-simplex that lie
    off its boundary (the window offset for iterated subdivision)."""
    sub = barycentric_iter(simplex(d - 1), 3)
    return len(interior_vertices(sub))


# -- edgewise vertex counts -----------------------------------------------------


def edgewise_vertex_count(c, r):
    """Vertex count of the r-th edgewise subdivision without construction:
    each (k-1)-face supports the compositions of r with exactly k positive
    parts, of which there are C(r-1, k-1)."""
    if r < 1:
        raise ValueError("edgewise subdivision needs r >= 1")
    f = c.f_vector()
    return sum(f[k] * comb(r - 1, k - 1) for k in range(1, len(f)))


# -- minimal top cycles -----------------------------------------------------------


@dataclass
class MinimalCycle:
    """A top cycle whose induced support complex has the smallest f-vector
    in the order that compares indices from the top dimension downward."""

    coefficients: dict
    induced: SimplicialComplex
    f: tuple

    @property
    def support(self):
        return tuple(sorted(self.coefficients))


def minimal_top_cycle(c, field=GF2):
    """Enumerate the nonzero top cycles over a prime field and return one
    minimizing the reverse-indexed f-vector of its induced complex.

    Ties are broken by the lexicographically smallest support.  The whole
    kernel is enumerated, so p^k is gated; the intended inputs have tiny
    top cycle spaces.
    """
    if field.kind != "GF":
        raise ValueError("cycle enumeration needs a prime field")
    d = c.dim
    if d < 0:
        raise ValueError("complex has no top dimension")
    mat = boundary_matrix(c, d, field)
    basis = kernel_basis(mat)
    k = len(basis)
    if k == 0:
        raise ValueError("no top homology: the cycle space is zero")
    p = field.p
    if p ** k > CYCLE_ENUM_GATE:
        raise GateError(f"cycle space too large to enumerate: {p}^{k}")
    faces = mat.cols
    best = None
    for coeffs in product(range(p), repeat=k):
        if not any(coeffs):
            continue
        vec = [0] * len(faces)
        for cf, bas in zip(coeffs, basis):
            if cf:
                for idx, val in enumerate(bas):
                    if val:
                        vec[idx] = (vec[idx] + cf * val) % p
        support = [faces[i] for i, v in enumerate(vec) if v]
        induced = SimplicialComplex(c.n, support, assume_reduced=True)
        f = induced.f_vector()
        key = (tuple(reversed(f)), tuple(support))
        if best is None or key < best[0]:
            best = (key, support,
                    {faces[i]: v for i, v in enumerate(vec) if v}, induced, f)
    _, _, coeff_map, induced, f = best
    return MinimalCycle(coefficients=coeff_map, induced=induced, f=f)


def last_strand_limit(c, field=GF2):
    """Limiting fraction of nonzero entries in the last strand under
    iterated subdivision: 1 - f_top(minimal cycle) / f_top(c).

    The same value covers barycentric and edgewise subdivision.
    """
    mc = minimal_top_cycle(c, field)
    f = c.f_vector()
    return Fraction(1) - Fraction(mc.f[-1], f[-1])


def limit_ratio_example(d, p, q, scale):
    """A (d-1)-complex whose last-strand limit is exactly p/q.

    A sphere with scale*(q-p) top faces plus scale*p simplices stacked
    over one ridge; only d = 2 (cycles) and d = 3 (stacked 2-spheres) are
    constructed.
    """
    if not 0 <= p < q:
        raise ValueError("need 0 <= p < q")
    if scale < 1:
        raise ValueError("scale must be positive")
    sphere_facets = scale * (q - p)
    if d == 2:
        if sphere_facets < 3:
            raise ValueError("cycle part needs at least 3 edges")
        base = cycle(sphere_facets)
        ridge = (0,)
    elif d == 3:
        if sphere_facets < 4 or sphere_facets % 2:
            raise ValueError("stacked 2-sphere needs an even facet count >= 4")
        base = stacked_sphere(2, sphere_facets)
        ridge = base.faces_of_dim(1)[0]
    else:
        raise ValueError("only d = 2 and d = 3 are constructed")
    if p == 0:
        return base
    return stacked_attach(base, scale * p, ridge)


# -- last-strand verification at small r -------------------------------------------


def verify_last_strand(c, r, field, mode="bary", vertex_gate=22, workers=1,
                       cycle_field=GF2):
    """Check the last-strand window of the r-fold subdivision of c.

    The minimal top cycle of c (over a prime field) spans an induced
    subcomplex whose subdivision keeps carrying top homology; with V the
    vertex count of that subdivided support, beta_{i,i+d} must be nonzero
    for V - d <= i <= pdim.  Within the vertex gate this is read off the
    full table; above it each window index is certified by one witness
    subset containing the subdivided support (top cycles survive adding
    vertices, there being no higher faces).  Zeros below the window are
    reported as observations only.
    """
    d = c.dim + 1
    mc = minimal_top_cycle(c, cycle_field)
    if mode == "bary":
        sub = barycentric_iter(c, r)
        sigma_sub = barycentric_iter(mc.induced, r)
    elif mode == "edge":
        sub = edgewise(c, r)
        sigma_sub = None
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "bary":
        v_sigma = sigma_sub.f_vector()[1]
    else:
        v_sigma = edgewise_vertex_count(mc.induced, r)
    report = {
        "mode": mode,
        "r": r,
        "field": str(field),
        "n": sub.n,
        "v_sigma": v_sigma,
        "window": None,
        "window_nonzero": None,
        "zeros_below_window": [],
        "nonzeros_below_window": [],
        "method": None,
    }
    if sub.n <= vertex_gate:
        table = graded_betti_table(sub, field, vertex_gate=vertex_gate,
                                   workers=workers)
        pdim = table.pdim()
        lo = v_sigma - d
        report["method"] = "full_table"
        report["window"] = (lo, pdim)
        report["window_nonzero"] = all(table.entry(i, d) != 0
                                       for i in range(lo, pdim + 1))
        for i in range(0, lo):
            if table.entry(i, d) == 0:
                report["zeros_below_window"].append(i)
            else:
                report["nonzeros_below_window"].append(i)
        return report
    # witness mode: depth is invariant under both subdivisions, so pdim of
    # the subdivided ring is n - depth(base)
    base_table = graded_betti_table(c, field, vertex_gate=vertex_gate,
                                    workers=workers)
    depth = c.n - base_table.pdim()
    pdim = sub.n - depth
    lo = v_sigma - d
    report["method"] = "witnesses"
    report["window"] = (lo, pdim)
    if mode == "bary":
        sigma_vertices = _subdivided_support_vertices_bary(c, r, mc)
    else:
        sigma_vertices = _subdivided_support_vertices_edge(c, r, mc)
    rest = [v for v in range(sub.n) if v not in set(sigma_vertices)]
    ok = True
    from .homology import rank_exact

    for i in range(lo, pdim + 1):
        extra = (i + d) - len(sigma_vertices)
        w = sorted(sigma_vertices + rest[:extra])
        ind = sub.induced(w)
        mat = boundary_matrix(ind, d - 1, field)
        if len(mat.cols) - rank_exact(mat) == 0:
            ok = False
            break
    report["window_nonzero"] = ok
    return report


def _subdivided_support_vertices_bary(c, r, mc):
    sub = barycentric_iter(c, r)
    support = set(mc.induced.face_set) - {()}
    cur = c
    keep = None
    for _ in range(r):
        nxt = barycentric(cur)
        if keep is None:
            keep = {i for i, lab in enumerate(nxt.labels)
                    if tuple(sorted(lab)) in support}
        else:
            keep = {i for i, lab in enumerate(nxt.labels) if set(lab) <= keep}
        cur = nxt
    assert cur.n == sub.n
    return sorted(keep)


def _subdivided_support_vertices_edge(c, r, mc):
    sub = edgewise(c, r)
    support_faces = set(mc.induced.face_set) - {()}
    keep = []
    for i, lab in enumerate(sub.labels):
        supp = tuple(v for v, x in enumerate(lab) if x)
        if supp in support_faces:
            keep.append(i)
    return keep


# -- asymptotic windows -------------------------------------------------------------


def asymptotic_window(c, r, mode, field=None, vertex_gate=22, workers=1):
    """Predicted nonzero windows per strand of the r-fold subdivision.

    For iterated barycentric subdivision (r >= 3) the window for strand j
    ends at pdim + depth - N + E where N counts interior vertices of the
    3-fold subdivided simplex and E is the window end for the subdivision
    of the simplex itself; for edgewise subdivision (r >= 2d) the binomial
    vertex counts of the d-th and 2d-th subdivisions take that role.
    Window starts are j, the strand-start constant, or 2^d - d - 1.
    """
    from .formulas import strand_start_closed

    if field is None:
        field = GF2
    d = c.dim + 1
    base_table = graded_betti_table(c, field, vertex_gate=vertex_gate,
                                    workers=workers)
    depth = c.n - base_table.pdim()
    if mode == "bary":
        if r < 3:
            raise ValueError("barycentric windows need r >= 3")
        n_sub = f_iterate_sd(c.f_vector(), r)[1]
        offset = interior_vertex_count_after_3(d)
    elif mode == "edge":
        if r < 2 * d:
            raise ValueError("edgewise windows need r >= 2d")
        n_sub = edgewise_vertex_count(c, r)
        offset = comb(3 * d - 1, d - 1)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    pdim = n_sub - depth
    windows = {}
    for j in range(1, d):
        if j == d - 1:
            lo = (1 << d) - d - 1
            tail = (1 << d) - d - 1
        elif 2 * j <= d:
            lo = j
            tail = (1 << d) - d - 1 - strand_start_closed(d, d - j - 1)
        else:
            lo = strand_start_closed(d, j)
            tail = (1 << d) - 2 * d + j
        if mode == "bary":
            hi = pdim + depth - offset + tail
        else:
            hi = comb(2 * d - 1, d - 1) - d + pdim + depth - offset
        windows[j] = (lo, hi)
    return {
        "mode": mode,
        "r": r,
        "d": d,
        "n_sub": n_sub,
        "pdim": pdim,
        "depth": depth,
        "offset": offset,
        "windows": windows,
    }

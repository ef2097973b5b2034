"""Closed-form strand constants and strand predictions, with verification.

The central quantity is the strand-start constant for the barycentric
subdivision of a simplex: for 1 <= j <= d-1 the minimal number of
vertices carrying an induced (j-1)-sphere is j plus a minimum of
sum(2^(i_l + 2) - 2) over integer sequences subject to

    i_1 + ... + i_r + (r - 1) = j - 1    and    i_1 + ... + i_r + 2r <= d.

The closed form resolves this minimum with a Euclidean division; the
brute-force enumeration below is kept deliberately independent so the two
can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complexes import simplex
from .homology import GF2, top_homology_nonzero, reduced_betti
from .hochster import graded_betti_table
from .subdivision import barycentric, edgewise

ZERO = "zero"
NONZERO = "nonzero"
UNKNOWN = "unknown"


def strand_start_closed(d, j):
    """Closed form of the strand-start constant.

    Equals j for j <= d/2; otherwise write 2j - d = a(d-j) + c with
    0 <= c < d-j and return 2^(a+2) (c + d - j) - 2d + j.
    """
    if not 1 <= j <= d - 1:
        raise ValueError(f"need 1 <= j <= d-1, got j={j}, d={d}")
    if 2 * j <= d:
        return j
    a, c = divmod(2 * j - d, d - j)
    return (1 << (a + 2)) * (c + d - j) - 2 * d + j


def _monotone_sequences(total, parts):
    """Weakly increasing nonnegative integer sequences with given sum."""

    def rec(remaining, parts_left, minimum):
        if parts_left == 1:
            if remaining >= minimum:
                yield (remaining,)
            return
        for first in range(minimum, remaining // parts_left + 1):
            for rest in rec(remaining - first, parts_left - 1, first):
                yield (first,) + rest

    return rec(total, parts, 0)


def strand_start_bruteforce(d, j):
    """Exhaustive minimization oracle for the strand-start constant.

    Enumerates every admissible sequence length r (both constraints force
    r <= min(j, d-j)) and, since the objective is symmetric, only the
    weakly increasing representative per multiset.
    """
    if not 1 <= j <= d - 1:
        raise ValueError(f"need 1 <= j <= d-1, got j={j}, d={d}")
    best = None
    for r in range(1, min(j, d - j) + 1):
        for seq in _monotone_sequences(j - r, r):
            val = sum((1 << (i + 2)) - 2 for i in seq)
            if best is None or val < best:
                best = val
    assert best is not None
    return best - j


def admissible_sequences(d, j):
    """All weakly increasing sequences satisfying the two strand
    constraints for the given d and j."""
    out = []
    for r in range(1, min(j, d - j) + 1):
        out.extend(_monotone_sequences(j - r, r))
    return out


# -- strand predictions -------------------------------------------------------


@dataclass
class StrandPrediction:
    """Zero / nonzero / unknown classification of one strand."""

    j: int
    classification: dict
    source: str

    def of(self, kind):
        return sorted(i for i, v in self.classification.items() if v == kind)

    @property
    def zeros(self):
        return self.of(ZERO)

    @property
    def nonzeros(self):
        return self.of(NONZERO)

    @property
    def unknowns(self):
        return self.of(UNKNOWN)


def _classify(pdim, pieces):
    """pieces: list of (lo, hi, kind) with inclusive bounds."""
    cls = {}
    for lo, hi, kind in pieces:
        for i in range(max(lo, 0), min(hi, pdim) + 1):
            cls[i] = kind
    assert sorted(cls) == list(range(pdim + 1))
    return cls


def predict_strand_bary(d, j):
    """Strand classification for the barycentric subdivision of the
    (d-1)-simplex, over 0 <= i <= 2^d - d - 1.

    The last strand j = d-1 is nonzero exactly at the projective
    dimension.  For j <= d/2 the strand is nonzero from j up to
    2^d-d-1-m(d-j-1) and zero beyond 2^d-2d+j, with the stretch between
    unresolved; for d/2 < j <= d-2 the strand is nonzero from m(j) up to
    2^d-2d+j, with the stretch from j to m(j)-1 unresolved.
    """
    if not 1 <= j <= d - 1:
        raise ValueError(f"need 1 <= j <= d-1, got j={j}, d={d}")
    pdim = (1 << d) - d - 1
    if j == d - 1:
        pieces = [(0, pdim, ZERO), (pdim, pdim, NONZERO)]
        cls = {}
        for i in range(pdim + 1):
            cls[i] = NONZERO if i == pdim else ZERO
        return StrandPrediction(j, cls, "bary-last-strand")
    if 2 * j <= d:
        upper_nz = (1 << d) - d - 1 - strand_start_closed(d, d - j - 1)
        zero_from = (1 << d) - 2 * d + j + 1
        pieces = [
            (0, j - 1, ZERO),
            (j, upper_nz, NONZERO),
            (upper_nz + 1, zero_from - 1, UNKNOWN),
            (zero_from, pdim, ZERO),
        ]
        return StrandPrediction(j, _classify(pdim, pieces), "bary-low-strand")
    m = strand_start_closed(d, j)
    upper_nz = (1 << d) - 2 * d + j
    pieces = [
        (0, j - 1, ZERO),
        (j, m - 1, UNKNOWN),
        (m, upper_nz, NONZERO),
        (upper_nz + 1, pdim, ZERO),
    ]
    return StrandPrediction(j, _classify(pdim, pieces), "bary-high-strand")


def predict_strand_edgewise(d, j, r, n_vertices):
    """Strand classification for the r-th edgewise subdivision of the
    (d-1)-simplex on n_vertices vertices, valid for r >= d.

    The subdivided simplex triangulates a ball, so the ring is
    Cohen-Macaulay and pdim = n_vertices - d; every strand runs to pdim.
    """
    if not 1 <= j <= d - 1:
        raise ValueError(f"need 1 <= j <= d-1, got j={j}, d={d}")
    if r < d:
        raise ValueError("strand windows for edgewise subdivision need r >= d")
    pdim = n_vertices - d
    if j == d - 1:
        start = (1 << d) - 1 - d
        pieces = [
            (0, j - 1, ZERO),
            (j, start - 1, UNKNOWN),
            (start, pdim, NONZERO),
        ]
        return StrandPrediction(j, _classify(pdim, pieces), "edgewise-last-strand")
    if 2 * j <= d:
        pieces = [(0, j - 1, ZERO), (j, pdim, NONZERO)]
        return StrandPrediction(j, _classify(pdim, pieces), "edgewise-low-strand")
    m = strand_start_closed(d, j)
    pieces = [
        (0, j - 1, ZERO),
        (j, m - 1, UNKNOWN),
        (m, pdim, NONZERO),
    ]
    return StrandPrediction(j, _classify(pdim, pieces), "edgewise-high-strand")


# -- t1 and regularity predictions ---------------------------------------------


def predict_t1_edgewise(c, r):
    """Largest generator degree of the face ring after edgewise subdivision.

    Flag complexes and simplices give 2.  Otherwise the value is t1 or
    t1 - 1: it stays t1 exactly when some maximal-size minimal non-face F
    admits a vertex v with boundary(F) * v inside the complex.
    """
    if r < 2:
        raise ValueError("the trichotomy applies for r >= 2")
    if c.is_flag() or not c.minimal_non_faces():
        return 2
    t1 = c.t1()
    faces = c.face_set
    biggest = [f for f in c.minimal_non_faces() if len(f) == t1]
    for f in biggest:
        fs = set(f)
        for v in range(c.n):
            if v in fs or (v,) not in faces:
                continue
            if all(tuple(sorted(f[:i] + f[i + 1:] + (v,))) in faces
                   for i in range(len(f))):
                return t1
    return t1 - 1


@dataclass
class RegPrediction:
    value: int
    exact: bool
    note: str = ""


def predict_reg(c, field, mode):
    """Predicted regularity after subdivision.

    mode is "sd" or ("edgewise", r).  The limiting value is d-1 when the
    top reduced homology of c vanishes over the field and d otherwise;
    for edgewise subdivision with r < d and vanishing top homology only
    the lower bound max(reg, r-1) is claimed, and the result is flagged
    as inexact.
    """
    d = c.dim + 1
    top = top_homology_nonzero(c, field)
    w = d if top else d - 1
    if mode == "sd":
        return RegPrediction(w, True)
    kind, r = mode
    if kind != "edgewise":
        raise ValueError(f"unsupported mode {mode!r}")
    if top or r >= d:
        return RegPrediction(w, True)
    base_reg = graded_betti_table(c, field).reg()
    return RegPrediction(max(base_reg, r - 1), False, "lower bound only")


# -- induced-sphere families ----------------------------------------------------


def sphere_family(d, seq):
    """Vertex-label families that induce a (j-1)-sphere inside the
    barycentric subdivision of the (d-1)-simplex.

    Each W_l is a set of proper nonempty subsets of {0..d-1} (the labels
    of subdivision vertices); the induced complex on their union is the
    join of subdivided simplex boundaries, a sphere.  The companion set C
    consists of labels whose addition, in any combination, does not change
    the homology of the last factor.  C is empty for a single factor.
    """
    seq = tuple(seq)
    r = len(seq)
    if r == 0 or any(i < 0 for i in seq):
        raise ValueError("need a nonempty sequence of nonnegative integers")
    j = sum(seq) + r
    if sum(seq) + 2 * r > d:
        raise ValueError(f"sequence {seq} violates the vertex budget for d={d}")
    bounds = [0]
    for l in range(1, r + 1):
        bounds.append(sum(seq[:l]) + 2 * l)
    w_sets = []
    for l in range(1, r + 1):
        prev = frozenset(range(bounds[l - 1]))
        block = [x for x in range(bounds[l - 1], bounds[l])]
        fam = set()
        for mask in range(1, 1 << len(block)):
            if mask == (1 << len(block)) - 1:
                continue
            sub = frozenset(block[i] for i in range(len(block)) if mask >> i & 1)
            fam.add(sub | prev)
        w_sets.append(fam)
    c_set = set()
    if r >= 2:
        last_block = list(range(bounds[r - 1], bounds[r]))
        b_pool = list(range(seq[0] + 2, bounds[r - 1]))
        for mask in range(1, 1 << len(last_block)):
            if mask == (1 << len(last_block)) - 1:
                continue
            a = frozenset(last_block[i] for i in range(len(last_block)) if mask >> i & 1)
            for bmask in range(1 << len(b_pool)):
                b = frozenset(b_pool[i] for i in range(len(b_pool)) if bmask >> i & 1)
                c_set.add(a | b)
    return w_sets, c_set


def labels_to_vertices(c, label_sets):
    """Map a family of frozenset labels to vertex ids of a subdivision."""
    index = {lab: i for i, lab in enumerate(c.labels)}
    return sorted(index[lab] for lab in label_sets)


def sphere_family_degree(seq):
    """Homology degree of the induced sphere: j - 1 with j = sum + len."""
    return sum(seq) + len(seq) - 1


# -- splicing inequalities -------------------------------------------------------


def perturbation_inequality(d, j, seq):
    """Window-splicing inequalities for admissible monotone sequences.

    For i_1 = 0 the window extension must reach 2^(j+1) - 2; for i_1 >= 1
    (and r >= 2) it must reach the objective of the perturbed sequence
    (i_1 - 1, i_2 + 1, i_3, ...).  Returns the truth of the inequality;
    hypotheses are validated and violations raise ValueError.
    """
    seq = tuple(seq)
    r = len(seq)
    if d < 3 or not (2 * j > d and j <= d - 1):
        raise ValueError("need d >= 3 and d/2 < j <= d-1")
    if list(seq) != sorted(seq) or any(i < 0 for i in seq):
        raise ValueError("sequence must be weakly increasing and nonnegative")
    if sum(seq) + r != j or sum(seq) + 2 * r > d:
        raise ValueError("sequence does not satisfy the strand constraints")
    if seq[0] >= 1 and r < 2:
        raise ValueError("the perturbation step needs r >= 2")
    ext = ((1 << (seq[-1] + 2)) - 2) * (1 << (sum(seq[1:-1]) + 2 * r - 4))
    lhs = ext + sum((1 << (i + 2)) - 2 for i in seq)
    if seq[0] == 0:
        return lhs >= (1 << (j + 1)) - 2
    perturbed = [seq[0] - 1, seq[1] + 1, *seq[2:]]
    rhs = sum((1 << (i + 2)) - 2 for i in perturbed)
    return lhs >= rhs


def perturbation_cases(d):
    """All (j, seq) pairs meeting the hypotheses of the inequalities."""
    out = []
    for j in range(1, d):
        if 2 * j <= d:
            continue
        for seq in admissible_sequences(d, j):
            if seq[0] >= 1 and len(seq) < 2:
                continue
            out.append((j, seq))
    return out


# -- prediction vs computation ----------------------------------------------------


def verify_predictions(kind, d, r=None, field=GF2, vertex_gate=22, workers=1):
    """Compare the strand predictions with a fully computed Betti table.

    kind "bary" checks the subdivision of the (d-1)-simplex, kind
    "edgewise" its r-th edgewise subdivision.  Zero and nonzero claims
    must match the table (any mismatch is a violation); entries in
    unknown stretches are recorded as observations.
    """
    if kind == "bary":
        sub = barycentric(simplex(d - 1))
        predictions = {j: predict_strand_bary(d, j) for j in range(1, d)}
        expected_pdim = (1 << d) - d - 1
    elif kind == "edgewise":
        if r is None:
            raise ValueError("edgewise verification needs r")
        sub = edgewise(simplex(d - 1), r)
        predictions = {j: predict_strand_edgewise(d, j, r, sub.n)
                       for j in range(1, d)}
        expected_pdim = sub.n - d
    else:
        raise ValueError(f"unknown kind {kind!r}")
    table = graded_betti_table(sub, field, vertex_gate=vertex_gate, workers=workers)
    report = {
        "kind": kind,
        "d": d,
        "r": r,
        "field": str(field),
        "n": sub.n,
        "pdim": table.pdim(),
        "pdim_expected": expected_pdim,
        "agreements": 0,
        "violations": [],
        "observations": [],
    }
    if table.pdim() != expected_pdim:
        report["violations"].append(
            {"what": "pdim", "expected": expected_pdim, "got": table.pdim()})
    for j, pred in predictions.items():
        for i, kind_i in pred.classification.items():
            value = table.entry(i, j)
            if kind_i == ZERO:
                if value != 0:
                    report["violations"].append(
                        {"what": "entry", "i": i, "j": j,
                         "expected": "zero", "got": value})
                else:
                    report["agreements"] += 1
            elif kind_i == NONZERO:
                if value == 0:
                    report["violations"].append(
                        {"what": "entry", "i": i, "j": j,
                         "expected": "nonzero", "got": 0})
                else:
                    report["agreements"] += 1
            else:
                report["observations"].append(
                    {"i": i, "j": j, "value": value})
    report["ok"] = not report["violations"]
    return report


def reg_of_subdivision_exact(sub, field, lower_witness):
    """Regularity of a subdivided complex too large for a full table.

    A (d-1)-complex has regularity d exactly when its top cycle space is
    nonzero (a homologically nontrivial induced subcomplex in degree d-1
    is itself a top cycle of the whole complex).  Otherwise the regularity
    is at most d-1, and an explicit induced subcomplex with homology in
    degree d-2, passed as a vertex subset, pins it from below.
    """
    d = sub.dim + 1
    if top_homology_nonzero(sub, field):
        return d
    ranks = reduced_betti(sub.induced(lower_witness), field)
    if ranks.get(d - 2, 0) == 0:
        raise ValueError("witness subset does not carry degree d-2 homology")
    return d - 1


def reg_after_subdivision(base, mode, field, table_gate=14, workers=1):
    """Exact regularity of the subdivided base complex.

    Uses the full Betti table when the subdivision stays small; otherwise
    falls back to the top-cycle criterion with a constructed witness: the
    vertices below one top face (barycentric) or the link of a vertex
    supported on a full facet (edgewise), both of which induce a sphere
    one dimension down.
    """
    if mode == "sd":
        sub = barycentric(base)
    else:
        kind, r = mode
        if kind != "edgewise":
            raise ValueError(f"unsupported mode {mode!r}")
        sub = edgewise(base, r)
    if sub.n <= table_gate:
        return graded_betti_table(sub, field, vertex_gate=table_gate,
                                  workers=workers).reg()
    d = sub.dim + 1
    if mode == "sd":
        top_face = max(base.facets, key=len)
        witness = [i for i, lab in enumerate(sub.labels)
                   if lab < frozenset(top_face)]
    else:
        v = next(i for i, lab in enumerate(sub.labels)
                 if sum(1 for x in lab if x) == d)
        witness = list(sub.link((v,)).vertex_map)
    return reg_of_subdivision_exact(sub, field, witness)

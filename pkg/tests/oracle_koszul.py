"""Independent graded Betti oracle via Koszul homology over GF(2).

Tor_i(A, K) in internal degree t is the homology of the Koszul complex
of the face ring A at homological index i and degree t.  The basis of
K_i in degree t consists of pairs (T, m) with T an i-subset of the
variables and m a degree t-i monomial surviving in A, i.e. one whose
support is a face.  The differential sends (T, m) to the sum of
(T - l, x_l m) over l in T, dropping terms whose support leaves the
complex.  Signs are irrelevant over GF(2).

This path never looks at induced subcomplexes, so it is independent of
the subset-homology route it is used to check.
"""

from itertools import combinations

from srbetti.homology import gf2_rank


def monomials(c, degree):
    """Exponent vectors of total degree `degree` whose support is a face."""
    if degree == 0:
        return [tuple([0] * c.n)]
    out = []
    for k in range(c.dim + 1):
        for face in c.faces_of_dim(k):
            if len(face) > degree:
                continue
            for split in _positive(degree, len(face)):
                e = [0] * c.n
                for v, x in zip(face, split):
                    e[v] = x
                out.append(tuple(e))
    return sorted(out)


def _positive(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _positive(total - first, parts - 1):
            yield (first,) + rest


def koszul_betti_gf2(c):
    """Full graded Betti table {(i, j): dim} with j the strand index."""
    n = c.n
    faces = c.face_set
    max_t = n
    table = {}
    for t in range(0, max_t + 1):
        # bases of K_i in degree t for all i
        bases = {}
        for i in range(0, min(n, t) + 1):
            mons = monomials(c, t - i)
            bases[i] = [(frozenset(T), m)
                        for T in combinations(range(n), i) for m in mons]
        index = {i: {bm: pos for pos, bm in enumerate(basis)}
                 for i, basis in bases.items()}
        ranks = {}
        for i in range(1, min(n, t) + 1):
            rows = index.get(i - 1, {})
            cols = []
            for (T, m) in bases.get(i, ()):
                v = 0
                for l in T:
                    e = list(m)
                    e[l] += 1
                    if tuple(x for x, val in enumerate(e) if val) not in faces:
                        continue
                    v ^= 1 << rows[(T - {l}, tuple(e))]
                cols.append(v)
            ranks[i] = gf2_rank(cols)
        for i in range(0, min(n, t) + 1):
            dim = len(bases.get(i, ())) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            if dim:
                table[(i, t - i)] = dim
    return table

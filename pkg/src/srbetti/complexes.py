"""Finite abstract simplicial complexes with exact combinatorial operations.

A complex lives on a dense ambient vertex range 0..n-1 and is stored by its
facet antichain.  Faces are strictly increasing tuples of vertex ids; the
empty tuple is the empty face, which every nonvoid complex contains.  Full
face enumeration is cached lazily and gated, because the subset-homology
machinery re-enumerates faces of many induced subcomplexes and needs the
ambient complex to stay cheap.

Vertices may carry labels (frozenset for subdivision vertices that remember
a face, tuple for lattice compositions, str for plain names).  Labels are
payload only: all combinatorics runs on the integer ids.
"""

from __future__ import annotations

import json
from itertools import combinations

FACE_GATE = 1 << 24
ISO_GATE = 64


class GateError(RuntimeError):
    """A size gate was exceeded; the caller must pick a cheaper route."""


def _canonical_facets(facet_list, n, assume_reduced=False):
    seen = set()
    for f in facet_list:
        t = tuple(sorted(f))
        if len(set(t)) != len(t):
            raise ValueError(f"duplicate vertex in facet {tuple(f)!r}")
        if t and (t[0] < 0 or t[-1] >= n):
            raise ValueError(f"vertex out of range 0..{n - 1} in facet {tuple(f)!r}")
        seen.add(t)
    if not seen:
        seen.add(())
    if assume_reduced or len(seen) == 1:
        return tuple(sorted(seen))
    # antichain reduction: drop facets dominated by a larger one
    by_size = sorted(seen, key=len, reverse=True)
    kept = []
    by_vertex = {}  # vertex -> kept frozensets containing it
    for t in by_size:
        s = frozenset(t)
        if t:
            cands = by_vertex.get(t[0], ())
            dominated = any(s <= k for k in cands)
        else:
            dominated = len(kept) > 0
        if dominated:
            continue
        kept.append(t)
        for v in t:
            by_vertex.setdefault(v, []).append(s)
    return tuple(sorted(kept))


class SimplicialComplex:
    """Downward-closed face family, represented by its facets."""

    __slots__ = (
        "n", "facets", "labels", "vertex_map",
        "_faces_by_dim", "_face_set", "_boundary", "_mnf",
    )

    def __init__(self, n, facets, labels=None, vertex_map=None, assume_reduced=False):
        if n < 0:
            raise ValueError("ambient vertex count must be nonnegative")
        self.n = n
        self.facets = _canonical_facets(facets, n, assume_reduced)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValueError("labels must cover all ambient vertices")
            present = [lab for lab in labels if lab is not None]
            if len(set(present)) != len(present):
                raise ValueError("vertex labels must be pairwise distinct")
        self.labels = labels
        self.vertex_map = vertex_map
        self._faces_by_dim = None
        self._face_set = None
        self._boundary = None
        self._mnf = None

    # -- basic structure -------------------------------------------------

    @property
    def dim(self):
        return max(len(f) for f in self.facets) - 1

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return (self.n, self.facets, self.labels) == (other.n, other.facets, other.labels)

    def __hash__(self):
        return hash((self.n, self.facets))

    def __repr__(self):
        return f"SimplicialComplex(n={self.n}, facets={len(self.facets)}, dim={self.dim})"

    def _enumerate_faces(self):
        if self._faces_by_dim is not None:
            return
        top = self.dim + 1  # facet size
        levels = [set() for _ in range(top + 1)]  # index = #vertices
        for f in self.facets:
            levels[len(f)].add(f)
        total = sum(len(lv) for lv in levels)
        for size in range(top, 1, -1):
            nxt = levels[size - 1]
            before = len(nxt)
            for f in levels[size]:
                for i in range(size):
                    nxt.add(f[:i] + f[i + 1:])
            total += len(nxt) - before
            if total > FACE_GATE:
                raise GateError(f"face enumeration exceeds gate {FACE_GATE}")
        levels[0] = {()}
        self._faces_by_dim = tuple(tuple(sorted(lv)) for lv in levels)
        self._face_set = frozenset().union(*levels)

    @property
    def face_set(self):
        self._enumerate_faces()
        return self._face_set

    def faces_of_dim(self, k):
        """All k-dimensional faces in canonical (lexicographic) order."""
        self._enumerate_faces()
        if k + 1 < 0 or k + 1 >= len(self._faces_by_dim):
            return ()
        return self._faces_by_dim[k + 1]

    def has_face(self, face):
        return tuple(sorted(face)) in self.face_set

    def f_vector(self):
        """(f_{-1}, ..., f_{d-1}) with f_{-1} = 1 for the empty face."""
        self._enumerate_faces()
        return tuple(len(lv) for lv in self._faces_by_dim)

    def support(self):
        """Vertices that occur in some face."""
        out = set()
        for f in self.facets:
            out.update(f)
        return tuple(sorted(out))

    def label_of(self, v):
        return None if self.labels is None else self.labels[v]

    def vertex_by_label(self, label):
        if self.labels is None:
            raise ValueError("complex has no labels")
        return self.labels.index(label)

    # -- derived complexes ------------------------------------------------

    def induced(self, w):
        """Subcomplex of faces contained in w, relabeled to 0..len(w)-1.

        The new complex's vertex_map sends each new id to its old id.
        """
        w = sorted(set(w))
        if w and (w[0] < 0 or w[-1] >= self.n):
            raise ValueError("vertex set not contained in ambient range")
        wset = set(w)
        old_to_new = {v: i for i, v in enumerate(w)}
        cand = [tuple(old_to_new[v] for v in f if v in wset) for f in self.facets]
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[v] for v in w)
        return SimplicialComplex(len(w), cand, labels=labels, vertex_map=tuple(w))

    def link(self, face):
        """Faces disjoint from `face` whose union with it is a face.

        The result is relabeled onto its own vertex support; vertex_map
        retains the original ids.
        """
        face = tuple(sorted(face))
        if not self.has_face(face):
            raise ValueError(f"{face!r} is not a face")
        fset = set(face)
        link_facets = [tuple(v for v in g if v not in fset)
                       for g in self.facets if fset <= set(g)]
        sup = sorted({v for g in link_facets for v in g})
        old_to_new = {v: i for i, v in enumerate(sup)}
        labels = None
        if self.labels is not None:
            labels = tuple(self.labels[v] for v in sup)
        return SimplicialComplex(
            len(sup),
            [tuple(old_to_new[v] for v in g) for g in link_facets],
            labels=labels,
            vertex_map=tuple(sup),
            assume_reduced=True,
        )

    def star(self, face):
        """Closed star: all faces containing `face`, closed downward."""
        face = tuple(sorted(face))
        if not self.has_face(face):
            raise ValueError(f"{face!r} is not a face")
        fset = set(face)
        facets = [g for g in self.facets if fset <= set(g)]
        return SimplicialComplex(self.n, facets or [face], labels=self.labels,
                                 assume_reduced=True)

    def boundary_complex(self):
        """Downward closure of the ridges lying in exactly one facet."""
        if self.dim < 0:
            raise ValueError("boundary of the empty complex is undefined")
        if len({len(f) for f in self.facets}) != 1:
            raise ValueError("boundary complex requires a pure complex")
        if self._boundary is not None:
            return self._boundary
        count = {}
        size = self.dim + 1
        for f in self.facets:
            for i in range(size):
                r = f[:i] + f[i + 1:]
                count[r] = count.get(r, 0) + 1
        ridges = sorted(r for r, c in count.items() if c == 1)
        self._boundary = SimplicialComplex(self.n, ridges or [()],
                                           labels=self.labels, assume_reduced=True)
        return self._boundary

    # -- non-faces ---------------------------------------------------------

    def minimal_non_faces(self):
        """Inclusion-minimal vertex sets that are not faces."""
        if self._mnf is not None:
            return self._mnf
        faces = self.face_set
        out = [(v,) for v in range(self.n) if (v,) not in faces]
        present = [v for v in range(self.n) if (v,) in faces]
        for k in range(2, self.dim + 3):
            cand = set()
            for f in self.faces_of_dim(k - 2):
                fs = set(f)
                for v in present:
                    if v in fs:
                        continue
                    t = tuple(sorted(f + (v,)))
                    if t in cand or t in faces:
                        continue
                    if all(t[:i] + t[i + 1:] in faces for i in range(k)):
                        cand.add(t)
            out.extend(sorted(cand))
        self._mnf = tuple(sorted(out, key=lambda t: (len(t), t)))
        return self._mnf

    def t1(self):
        """Largest cardinality of a minimal non-face (0 for a full simplex)."""
        mnf = self.minimal_non_faces()
        return max((len(f) for f in mnf), default=0)

    def is_flag(self):
        """True if every minimal non-face is an edge, or there is none."""
        return all(len(f) == 2 for f in self.minimal_non_faces())


def from_facets(facet_list, n, labels=None):
    """Downward closure of the given facets on ambient vertices 0..n-1."""
    return SimplicialComplex(n, facet_list, labels=labels)


# -- isomorphism -----------------------------------------------------------


def _vertex_profiles(c):
    d = c.dim
    prof = [[0] * (d + 1) for _ in range(c.n)]
    for k in range(d + 1):
        for f in c.faces_of_dim(k):
            for v in f:
                prof[v][k] += 1
    return [tuple(p) for p in prof]


def _adjacency(c):
    adj = [0] * c.n
    for (u, v) in c.faces_of_dim(1):
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def is_isomorphic(a, b):
    """Search for a vertex bijection carrying faces onto faces.

    Returns (found, mapping); the mapping covers the vertex supports.
    Backtracking with degree-profile pruning, gated at 64 vertices.
    """
    if max(a.n, b.n) > ISO_GATE:
        raise GateError(f"isomorphism search gated at {ISO_GATE} vertices")
    if a.f_vector() != b.f_vector():
        return False, None
    prof_a, prof_b = _vertex_profiles(a), _vertex_profiles(b)
    sup_a = [v for v in range(a.n) if (v,) in a.face_set]
    sup_b = [v for v in range(b.n) if (v,) in b.face_set]
    adj_a, adj_b = _adjacency(a), _adjacency(b)

    def refined(prof, adj, verts):
        out = {}
        for v in verts:
            nb = sorted(prof[u] for u in verts if adj[v] >> u & 1)
            out[v] = (prof[v], tuple(nb))
        return out

    ra, rb = refined(prof_a, adj_a, sup_a), refined(prof_b, adj_b, sup_b)
    classes_b = {}
    for v in sup_b:
        classes_b.setdefault(rb[v], []).append(v)
    need = {}
    for v in sup_a:
        need[ra[v]] = need.get(ra[v], 0) + 1
    if any(len(classes_b.get(key, ())) != cnt for key, cnt in need.items()):
        return False, None

    # most-constrained first, preferring vertices adjacent to earlier picks
    order = []
    remaining = set(sup_a)
    while remaining:
        placed = set(order)
        best = min(
            remaining,
            key=lambda v: (
                -sum(1 for u in placed if adj_a[v] >> u & 1),
                len(classes_b[ra[v]]),
                v,
            ),
        )
        order.append(best)
        remaining.discard(best)

    mapping = {}
    used = set()

    def extend(pos):
        if pos == len(order):
            return True
        v = order[pos]
        for cv in classes_b[ra[v]]:
            if cv in used:
                continue
            ok = True
            for u, cu in mapping.items():
                if (adj_a[v] >> u & 1) != (adj_b[cv] >> cu & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = cv
            used.add(cv)
            if extend(pos + 1):
                return True
            del mapping[v]
            used.discard(cv)
        return False

    if not extend(0):
        return False, None
    # adjacency agreement is necessary; confirm on all faces
    for k in range(2, a.dim + 1):
        for f in a.faces_of_dim(k):
            if tuple(sorted(mapping[v] for v in f)) not in b.face_set:
                return False, None
    return True, dict(mapping)


# -- named complexes --------------------------------------------------------


def simplex(d):
    """Full d-simplex on d+1 vertices."""
    return from_facets([tuple(range(d + 1))], d + 1)


def simplex_boundary(d):
    """Boundary of the d-simplex, a (d-1)-sphere."""
    if d == 0:
        return SimplicialComplex(1, [()])
    return from_facets(list(combinations(range(d + 1), d)), d + 1)


def cycle(m):
    if m < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return from_facets([(i, (i + 1) % m) for i in range(m)], m)


def path(m):
    if m < 1:
        raise ValueError("path needs at least 1 vertex")
    if m == 1:
        return from_facets([(0,)], 1)
    return from_facets([(i, i + 1) for i in range(m - 1)], m)


def stacked_sphere(dim, n_facets):
    """Sphere built from the boundary of a (dim+1)-simplex by stacking.

    Each stacking move replaces one facet by the cone over its boundary
    from a fresh vertex, adding `dim` facets; so n_facets must satisfy
    n_facets >= dim+2 and n_facets = dim+2 (mod dim).
    """
    base = dim + 2
    if dim < 2:
        raise ValueError("stacked_sphere needs dim >= 2")
    if n_facets < base or (n_facets - base) % dim != 0:
        raise ValueError(f"no stacked {dim}-sphere with {n_facets} facets")
    facets = sorted(combinations(range(dim + 2), dim + 1))
    n = dim + 2
    for _ in range((n_facets - base) // dim):
        target = facets.pop()
        apex = n
        n += 1
        for i in range(len(target)):
            facets.append(target[:i] + target[i + 1:] + (apex,))
        facets.sort()
    return from_facets(facets, n)


def rp2_six():
    """The 6-vertex triangulation of the real projective plane."""
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
              (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5)]
    return from_facets(facets, 6)


def stacked_attach(base, k, ridge=None):
    """Glue k new facets over a ridge of `base`, each with a fresh apex."""
    if base.dim < 1:
        raise ValueError("base must have dimension at least 1")
    if ridge is None:
        ridge = base.faces_of_dim(base.dim - 1)[0]
    ridge = tuple(sorted(ridge))
    if len(ridge) != base.dim or not base.has_face(ridge):
        raise ValueError(f"{ridge!r} is not a ridge of the base complex")
    facets = list(base.facets)
    n = base.n
    for _ in range(k):
        facets.append(tuple(sorted(ridge + (n,))))
        n += 1
    return from_facets(facets, n)


_STANDARD = {
    "simplex": simplex,
    "simplex_boundary": simplex_boundary,
    "cycle": cycle,
    "path": path,
    "stacked_sphere": stacked_sphere,
    "rp2_six": rp2_six,
    "stacked_attach": stacked_attach,
}


def standard_complex(spec):
    """Build a named complex from a spec string, e.g. "cycle(6)" or
    "stacked_attach(cycle(3), 2)".  Only the named constructors and
    literal arguments are allowed."""
    import ast

    def build(node):
        if isinstance(node, ast.Expression):
            return build(node.body)
        if isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in _STANDARD:
                raise ValueError(f"unknown constructor in {spec!r}")
            args = [build(a) for a in node.args]
            return _STANDARD[node.func.id](*args)
        if isinstance(node, ast.Name) and node.id == "rp2_six":
            return rp2_six()
        if isinstance(node, (ast.Constant, ast.Tuple, ast.List)):
            return ast.literal_eval(node)
        raise ValueError(f"unsupported expression in {spec!r}")

    return build(ast.parse(spec.strip(), mode="eval"))


# -- JSON round trip ---------------------------------------------------------


def _encode_label(lab):
    if lab is None:
        return None
    if isinstance(lab, frozenset):
        return {"set": sorted(lab)}
    if isinstance(lab, tuple):
        return {"lattice": list(lab)}
    if isinstance(lab, str):
        return {"plain": lab}
    raise TypeError(f"unsupported label {lab!r}")


def _decode_label(obj):
    if obj is None:
        return None
    if "set" in obj:
        return frozenset(obj["set"])
    if "lattice" in obj:
        return tuple(obj["lattice"])
    if "plain" in obj:
        return str(obj["plain"])
    raise ValueError(f"unsupported label encoding {obj!r}")


def to_json_dict(c):
    out = {"n": c.n, "facets": [list(f) for f in c.facets]}
    if c.labels is not None:
        out["labels"] = [_encode_label(lab) for lab in c.labels]
    return out


def from_json_dict(d):
    labels = None
    if d.get("labels") is not None:
        labels = tuple(_decode_label(obj) for obj in d["labels"])
    return SimplicialComplex(int(d["n"]), d["facets"], labels=labels)


def dumps(c):
    return json.dumps(to_json_dict(c), sort_keys=True, separators=(",", ": ")) + "\n"


def loads(text):
    return from_json_dict(json.loads(text))

import json

import pytest
from hypothesis import given, settings, strategies as st

from srbetti import complexes
from srbetti.complexes import (
    GateError,
    SimplicialComplex,
    cycle,
    dumps,
    from_facets,
    is_isomorphic,
    loads,
    path,
    rp2_six,
    simplex,
    simplex_boundary,
    stacked_attach,
    stacked_sphere,
    standard_complex,
)


def random_complexes():
    return st.integers(2, 6).flatmap(
        lambda n: st.lists(
            st.sets(st.integers(0, n - 1), min_size=1, max_size=n),
            min_size=1, max_size=6,
        ).map(lambda fs: from_facets([sorted(f) for f in fs], n)))


class TestFromFacets:
    def test_full_simplex(self):
        c = from_facets([[0, 1, 2]], 3)
        assert c.f_vector() == (1, 3, 3, 1)

    def test_hollow_triangle(self):
        c = from_facets([[0, 1], [1, 2], [0, 2]], 3)
        assert c.f_vector() == (1, 3, 3)

    def test_dominated_facet_removed(self):
        c = from_facets([[0, 1], [0, 1, 2]], 3)
        assert c.facets == ((0, 1, 2),)

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            from_facets([[0, 3]], 3)

    def test_duplicate_vertex(self):
        with pytest.raises(ValueError):
            from_facets([[1, 1]], 3)

    def test_empty_complex(self):
        c = from_facets([], 0)
        assert c.facets == ((),)
        assert c.dim == -1
        assert c.f_vector() == (1,)


def test_f_vector_examples(sd_simplex2, c6):
    assert simplex(2).f_vector() == (1, 3, 3, 1)
    assert sd_simplex2.f_vector() == (1, 7, 12, 6)
    assert c6.f_vector() == (1, 6, 6)


def test_euler_characteristic_of_spheres():
    for d in range(1, 5):
        f = simplex_boundary(d).f_vector()
        chi = sum((-1) ** k * f[k + 1] for k in range(d))
        assert chi == 1 + (-1) ** (d - 1)
        assert sum((-1) ** k * simplex(d).f_vector()[k + 1] for k in range(d + 1)) == 1


class TestInduced:
    def test_antipodal_pair(self, c6):
        sub = c6.induced([0, 3])
        assert sub.f_vector() == (1, 2)
        assert sub.vertex_map == (0, 3)

    def test_identity(self, c6):
        assert c6.induced(range(6)).facets == c6.facets

    def test_proper_subset_vertices_give_hexagon(self, sd_simplex2):
        keep = [i for i, lab in enumerate(sd_simplex2.labels) if len(lab) < 3]
        sub = sd_simplex2.induced(keep)
        ok, _ = is_isomorphic(sub, cycle(6))
        assert ok

    def test_empty_w(self, c6):
        sub = c6.induced([])
        assert sub.facets == ((),)

    @given(random_complexes(), st.data())
    @settings(max_examples=40, deadline=None)
    def test_composition(self, c, data):
        w = data.draw(st.sets(st.integers(0, c.n - 1)))
        w2 = data.draw(st.sets(st.sampled_from(sorted(w)))) if w else set()
        once = c.induced(sorted(w2))
        w_sorted = sorted(w)
        relabeled = [w_sorted.index(v) for v in sorted(w2)]
        twice = c.induced(w_sorted).induced(relabeled)
        assert once.facets == twice.facets


class TestLink:
    def test_vertex_of_simplex(self):
        lk = simplex(2).link((0,))
        assert lk.f_vector() == (1, 2, 1)

    def test_vertex_of_cycle(self, c6):
        lk = c6.link((0,))
        assert lk.f_vector() == (1, 2)
        assert lk.vertex_map == (1, 5)

    def test_empty_face_is_identity(self, c6):
        assert c6.link(()) == c6

    def test_not_a_face(self, c6):
        with pytest.raises(ValueError):
            c6.link((0, 2))

    def test_star_is_cone_over_link(self, c6):
        star = c6.star((0,))
        assert star.f_vector() == (1, 3, 2)


class TestMinimalNonFaces:
    def test_hollow_triangle(self):
        c = simplex_boundary(2)
        assert c.minimal_non_faces() == ((0, 1, 2),)
        assert c.t1() == 3

    def test_cycle(self, c6):
        mnf = c6.minimal_non_faces()
        assert len(mnf) == 9
        assert all(len(f) == 2 for f in mnf)
        assert c6.t1() == 2

    def test_full_simplex(self):
        assert simplex(2).minimal_non_faces() == ()
        assert simplex(2).t1() == 0

    @given(random_complexes())
    @settings(max_examples=40, deadline=None)
    def test_minimality(self, c):
        faces = c.face_set
        for f in c.minimal_non_faces():
            assert f not in faces
            assert all(f[:i] + f[i + 1:] in faces for i in range(len(f)))


def test_is_flag(sd_simplex2, c6):
    assert sd_simplex2.is_flag()
    assert not simplex_boundary(2).is_flag()
    assert c6.is_flag()
    assert simplex(3).is_flag()


class TestBoundaryComplex:
    def test_subdivided_triangle(self):
        from srbetti.subdivision import edgewise

        b = edgewise(simplex(2), 2).boundary_complex()
        ok, _ = is_isomorphic(b, cycle(6))
        assert ok

    def test_sphere_has_empty_boundary(self):
        b = simplex_boundary(2).boundary_complex()
        assert b.facets == ((),)

    def test_sd_simplex(self, sd_simplex2):
        b = sd_simplex2.boundary_complex()
        ok, _ = is_isomorphic(b, cycle(6))
        assert ok

    def test_non_pure_rejected(self):
        with pytest.raises(ValueError):
            from_facets([[0, 1, 2], [3, 4]], 5).boundary_complex()


class TestIsomorphism:
    def test_reflexive(self, c6):
        ok, wit = is_isomorphic(c6, c6)
        assert ok and all(wit[v] == v for v in range(6))

    def test_different_f_vectors(self):
        five_plus_point = from_facets(
            [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4], [5]], 6)
        ok, wit = is_isomorphic(cycle(6), five_plus_point)
        assert not ok and wit is None

    def test_symmetric(self, sd_simplex2):
        hexagon = cycle(6)
        keep = [i for i, lab in enumerate(sd_simplex2.labels) if len(lab) < 3]
        sub = sd_simplex2.induced(keep)
        ok1, w1 = is_isomorphic(sub, hexagon)
        ok2, _ = is_isomorphic(hexagon, sub)
        assert ok1 and ok2
        faces = hexagon.face_set
        for f in sub.facets:
            assert tuple(sorted(w1[v] for v in f)) in faces

    def test_same_f_vector_not_isomorphic(self):
        # two triangles vs a hexagon: same f-vector, different complexes
        two_tri = from_facets([[0, 1], [1, 2], [0, 2], [3, 4], [4, 5], [3, 5]], 6)
        ok, _ = is_isomorphic(two_tri, cycle(6))
        assert not ok

    def test_gate(self):
        big = from_facets([[i] for i in range(65)], 65)
        with pytest.raises(GateError):
            is_isomorphic(big, big)


class TestStandardComplexes:
    def test_cycle_and_path(self):
        assert cycle(6).f_vector() == (1, 6, 6)
        assert path(4).f_vector() == (1, 4, 3)
        assert path(1).f_vector() == (1, 1)

    def test_stacked_sphere(self):
        s = stacked_sphere(2, 6)
        assert s.f_vector() == (1, 5, 9, 6)
        with pytest.raises(ValueError):
            stacked_sphere(2, 5)

    def test_stacked_sphere_is_a_sphere(self):
        from srbetti.homology import reduced_betti

        for nf in (4, 6, 8):
            b = reduced_betti(stacked_sphere(2, nf))
            assert b == {-1: 0, 0: 0, 1: 0, 2: 1}

    def test_stacked_attach(self):
        c = stacked_attach(cycle(3), 2, (0,))
        assert c.f_vector() == (1, 5, 5)

    def test_rp2(self):
        f = rp2_six().f_vector()
        assert f == (1, 6, 15, 10)
        # closed surface: every edge lies in exactly two triangles
        count = {}
        for t in rp2_six().facets:
            for i in range(3):
                count[t[:i] + t[i + 1:]] = count.get(t[:i] + t[i + 1:], 0) + 1
        assert set(count.values()) == {2}

    def test_spec_string(self):
        c = standard_complex("stacked_attach(cycle(3), 2)")
        assert c.f_vector() == (1, 5, 5)
        with pytest.raises(ValueError):
            standard_complex("__import__('os')")


@given(random_complexes())
@settings(max_examples=50, deadline=None)
def test_downward_closure(c):
    faces = c.face_set
    for f in faces:
        for i in range(len(f)):
            assert f[:i] + f[i + 1:] in faces


def test_json_round_trip(sd_simplex2, c6):
    for c in (c6, sd_simplex2, from_facets([], 0)):
        again = loads(dumps(c))
        assert again == c
    # deterministic serialization
    assert dumps(c6) == dumps(loads(dumps(c6)))


def test_json_label_kinds():
    c = SimplicialComplex(3, [[0, 1], [2]],
                          labels=(frozenset({0, 1}), (1, 0), "apex"))
    blob = json.loads(dumps(c))
    assert blob["labels"] == [{"set": [0, 1]}, {"lattice": [1, 0]}, {"plain": "apex"}]
    assert loads(dumps(c)) == c

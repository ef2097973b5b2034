from math import factorial

import pytest

from srbetti.complexes import cycle, is_isomorphic, simplex, simplex_boundary
from srbetti.subdivision import (
    barycentric,
    barycentric_iter,
    edgewise,
    interior_face_check,
    interior_face_witness,
    interior_vertices,
)


class TestBarycentric:
    def test_edge(self):
        sd = barycentric(simplex(1))
        assert sd.f_vector() == (1, 3, 2)
        assert sorted(sd.labels, key=sorted) == [
            frozenset({0}), frozenset({0, 1}), frozenset({1})]

    def test_triangle(self, sd_simplex2):
        assert sd_simplex2.f_vector() == (1, 7, 12, 6)
        apex = sd_simplex2.vertex_by_label(frozenset({0, 1, 2}))
        lk = sd_simplex2.link((apex,))
        ok, _ = is_isomorphic(lk, cycle(6))
        assert ok

    def test_hollow_triangle(self):
        ok, _ = is_isomorphic(barycentric(simplex_boundary(2)), cycle(6))
        assert ok

    def test_top_count_multiplies_by_factorial(self):
        for d in (1, 2, 3):
            c = simplex(d)
            assert barycentric(c).f_vector()[-1] == factorial(d + 1) * c.f_vector()[-1]

    def test_preserves_euler_characteristic(self, pendants):
        for c in (simplex(2), simplex_boundary(3), pendants):
            f, g = c.f_vector(), barycentric(c).f_vector()
            chi = lambda v: sum((-1) ** k * v[k + 1] for k in range(len(v) - 1))
            assert chi(f) == chi(g)

    def test_output_is_flag(self, pendants):
        for c in (simplex(2), simplex_boundary(3), pendants):
            assert barycentric(c).is_flag()


class TestBarycentricIter:
    def test_zero_is_identity(self, c6):
        assert barycentric_iter(c6, 0) is c6

    def test_path_doubles(self):
        sub = barycentric_iter(simplex(1), 3)
        assert sub.f_vector() == (1, 9, 8)

    def test_cycle_doubles(self):
        sub = barycentric_iter(cycle(3), 2)
        ok, _ = is_isomorphic(sub, cycle(12))
        assert ok


class TestEdgewise:
    def test_triangle_r2(self):
        sub = edgewise(simplex(2), 2)
        assert sub.f_vector() == (1, 6, 9, 4)

    def test_boundary_gives_cycles(self):
        for r in range(1, 6):
            sub = edgewise(simplex_boundary(2), r)
            ok, _ = is_isomorphic(sub, cycle(3 * r))
            assert ok

    def test_r1_is_identity_on_ids(self, c6):
        sub = edgewise(c6, 1)
        assert sub.facets == c6.facets
        assert sub.n == c6.n

    def test_vertex_count_formula(self):
        from math import comb

        for c in (simplex(2), simplex(3), simplex_boundary(3), cycle(4)):
            f = c.f_vector()
            for r in range(1, 7):
                expected = sum(f[k] * comb(r - 1, k - 1) for k in range(1, len(f)))
                assert edgewise(c, r).f_vector()[1] == expected

    def test_preserves_dimension_and_euler(self, pendants):
        chi = lambda v: sum((-1) ** k * v[k + 1] for k in range(len(v) - 1))
        for c in (simplex(2), simplex_boundary(3), pendants):
            for r in (2, 3):
                sub = edgewise(c, r)
                assert sub.dim == c.dim
                assert chi(sub.f_vector()) == chi(c.f_vector())

    def test_flagness_preserved(self, c6):
        for c in (c6, simplex(2)):
            assert edgewise(c, 3).is_flag()

    def test_labels_are_compositions(self):
        sub = edgewise(simplex(2), 2)
        assert set(sub.labels) == {
            (2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0), (1, 0, 1), (0, 1, 1)}

    def test_invalid_r(self, c6):
        with pytest.raises(ValueError):
            edgewise(c6, 0)


class TestInterior:
    def test_interior_vertex(self):
        sub = edgewise(simplex(2), 3)
        v = sub.vertex_by_label((1, 1, 1))
        assert interior_face_check(sub, (v,))
        w = sub.vertex_by_label((2, 1, 0))
        assert not interior_face_check(sub, (w,))
        assert not interior_face_check(sub, tuple(sorted((v, w))))

    def test_interior_vertex_threshold(self):
        # r >= d has interior vertices, r < d has none
        for d in (2, 3, 4):
            c = simplex(d - 1)
            assert interior_vertices(edgewise(c, d))
            if d > 1:
                assert not interior_vertices(edgewise(c, d - 1))

    def test_witness_vertex(self):
        sub = edgewise(simplex(2), 3)
        face = interior_face_witness(3, 3, 1, sub)
        assert [sub.labels[v] for v in face] == [(1, 1, 1)]

    def test_witness_validates(self):
        sub = edgewise(simplex(2), 3)
        for s in (1, 2):
            face = interior_face_witness(3, 3, s, sub)
            assert len(face) == s
            assert interior_face_check(sub, face)

    def test_witness_d4(self):
        sub = edgewise(simplex(3), 4)
        for s in (1, 2, 3):
            face = interior_face_witness(4, 4, s, sub)
            assert interior_face_check(sub, face)

    def test_witness_preconditions(self):
        with pytest.raises(ValueError):
            interior_face_witness(3, 2, 1)
        with pytest.raises(ValueError):
            interior_face_witness(3, 3, 3)

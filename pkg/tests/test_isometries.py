import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gafcheck.errors import NotCommuting, NotInvariant, NotRotation, SubspaceNotInvariant
from gafcheck.isometries import (
    COMMON_POINT,
    WITNESS,
    Flat,
    RigidMotion,
    abelian_gag_solver,
    commutator,
    cyclic_quotient_gag,
    eccentricity_witness_r3,
    fixed_flat,
    fixed_point_from_invariant_set,
    intersect_flats,
    orbit,
    rotation_2d,
    rotation_about_line,
)

unit = st.floats(-1, 1)
vec3 = st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
angle = st.floats(0.1, 2 * math.pi - 0.1)
direction = st.tuples(unit, unit, unit).filter(lambda v: np.linalg.norm(v) > 0.2)


class TestWitnessR3:
    def test_parallel_quarter_turns(self):
        f = rotation_about_line((0, 0, 0), (0, 0, 1), math.pi / 2)
        g = rotation_about_line((1, 0, 0), (0, 0, 1), -math.pi / 2)
        w = eccentricity_witness_r3(f, g)
        assert w.kind == WITNESS and w.word == "[f,g]"
        assert np.allclose(w.element.rotation, np.eye(3), atol=1e-10)
        assert np.linalg.norm(w.element.translation) > 1e-3

    def test_axes_through_origin(self):
        f = rotation_about_line((0, 0, 0), (0, 0, 1), 1.0)
        g = rotation_about_line((0, 0, 0), (1, 0, 0), 2.0)
        w = eccentricity_witness_r3(f, g)
        assert w.kind == COMMON_POINT and np.allclose(w.point, 0)

    def test_equal(self):
        f = rotation_about_line((1, 1, 0), (0, 1, 1), 1.0)
        assert eccentricity_witness_r3(f, f).kind == COMMON_POINT

    def test_translation_rejected(self):
        with pytest.raises(NotRotation):
            eccentricity_witness_r3(RigidMotion.translation_by((1, 0, 0)), rotation_about_line((0, 0, 0), (0, 0, 1), 1))

    @given(vec3, direction, angle, vec3, direction, angle)
    def test_witness_has_no_fixed_point(self, p, u, a, q, v, b):
        f, g = rotation_about_line(p, u, a), rotation_about_line(q, v, b)
        w = eccentricity_witness_r3(f, g)
        if w.kind == COMMON_POINT:
            assert np.allclose(f(w.point), w.point, atol=1e-7) and np.allclose(g(w.point), w.point, atol=1e-7)
        else:
            assert fixed_flat(w.element) is None


class TestAbelian:
    def test_plane_rotation(self):
        assert np.allclose(abelian_gag_solver([rotation_2d((1, 2), math.pi / 2)]), (1, 2))

    def test_common_axis(self):
        f = rotation_about_line((1, 2, 0), (0, 0, 1), 0.7)
        g = rotation_about_line((1, 2, 0), (0, 0, 1), 2.1)
        p = abelian_gag_solver([f, g, RigidMotion.identity(3)])
        assert np.allclose(p, (1, 2, 0))

    def test_identity_only(self):
        assert np.allclose(abelian_gag_solver([RigidMotion.identity(3)]), 0)

    def test_non_commuting(self):
        with pytest.raises(NotCommuting):
            abelian_gag_solver([rotation_2d((0, 0), 1.0), rotation_2d((1, 0), 1.0)])

    @given(vec3, direction, angle, angle)
    def test_random_common_axis(self, p, u, a, b):
        f, g = rotation_about_line(p, u, a), rotation_about_line(p, u, b)
        x = abelian_gag_solver([f, g])
        assert np.allclose(f(x), x, atol=1e-7) and np.allclose(g(x), x, atol=1e-7)


class TestFlats:
    def test_cyclic_quotient(self):
        eps = RigidMotion.linear(np.diag([1.0, 1.0, -1.0]))  # reflection in z = 0
        line = Flat.through((0, 0, 0), [(1, 0, 0)])
        p = cyclic_quotient_gag(eps, line)
        assert line.contains(p) and np.allclose(eps(p), p)

    def test_cyclic_quotient_identity(self):
        line = Flat.through((0, 1, 0), [(1, 0, 0)])
        p = cyclic_quotient_gag(RigidMotion.identity(3), line)
        assert line.contains(p)

    def test_not_invariant(self):
        eps = RigidMotion.linear(np.diag([1.0, 1.0, -1.0]))
        with pytest.raises(SubspaceNotInvariant):
            cyclic_quotient_gag(eps, Flat.through((0, 0, 1), [(1, 0, 0)]))

    def test_intersection(self):
        F = Flat.through((0, 0, 0), [(1, 0, 0), (0, 1, 0)])
        G = Flat.through((0, 0, 0), [(0, 1, 0), (0, 0, 1)])
        H = intersect_flats(F, G)
        assert H.dim == 1 and abs(abs(H.basis[1, 0]) - 1) < 1e-12


class TestInvariantSets:
    def test_square(self):
        r = rotation_2d((0, 0), math.pi / 2)
        c = fixed_point_from_invariant_set([r], [(1, 1), (-1, 1), (-1, -1), (1, -1)])
        assert np.allclose(c, 0)

    def test_single_point(self):
        assert np.allclose(fixed_point_from_invariant_set([RigidMotion.identity(2)], [(3, 4)]), (3, 4))

    def test_not_invariant(self):
        with pytest.raises(NotInvariant):
            fixed_point_from_invariant_set([rotation_2d((0, 0), 0.3)], [(1, 0), (0, 1)])

    @given(st.tuples(st.floats(-3, 3), st.floats(-3, 3)), st.tuples(st.floats(-3, 3), st.floats(-3, 3)), st.integers(2, 6))
    def test_finite_orbit_centre(self, centre, x, k):
        r = rotation_2d(centre, 2 * math.pi / k)
        pts = orbit([r], x)
        c = fixed_point_from_invariant_set([r], pts)
        # the orbit of a rotation of finite order is centred on its centre (or is the centre)
        assert np.allclose(r(c), c, atol=1e-8)
        assert np.allclose(c, np.mean(pts, axis=0), atol=1e-7)


def test_commutator_of_translations_is_identity():
    a, b = RigidMotion.translation_by((1, 0)), RigidMotion.translation_by((0, 2))
    assert commutator(a, b).is_identity()

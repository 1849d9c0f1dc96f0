import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gafcheck.errors import NotElliptic, NotUnimodular
from gafcheck.mobius import (
    ELLIPTIC,
    HYPERBOLIC,
    PARABOLIC,
    Sl2Element,
    classify_h2,
    commutator_trace_closed_form,
    commutator_trace_h2,
    eccentricity_witness_h3,
    has_fixed_point_h3,
    mobius_line_fixed_points,
    moebius_eccentric_audit,
    rotation_about,
    vertical_rotation,
)
from gafcheck.scalars import QuadraticNumber


def act_h2(h, x, y):
    w = h(complex(x, y))
    return np.array([w.real, w.imag])


class TestClassify:
    def test_rotation_pi_over_8(self):
        t = math.pi / 8
        c = classify_h2([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
        assert c.klass == ELLIPTIC and np.allclose(c.fixed_point, (0, 1))
        assert c.angle == pytest.approx(math.pi / 4)

    def test_parabolic(self):
        c = classify_h2([[1, 1], [0, 1]])
        assert c.klass == PARABOLIC and c.fixed_point is None

    def test_hyperbolic(self):
        assert classify_h2([[2, 0], [0, 0.5]]).klass == HYPERBOLIC

    def test_not_unimodular(self):
        with pytest.raises(NotUnimodular):
            classify_h2([[2, 0], [0, 1]])

    @given(st.floats(0.1, 10), st.floats(0.05, 2 * math.pi - 0.05))
    def test_elliptic_fixed_point_is_fixed(self, x, theta):
        R = rotation_about(x, theta)
        c = classify_h2(R.matrix.real)
        assert c.klass == ELLIPTIC
        assert np.allclose(c.fixed_point, (0, x), rtol=1e-9)
        assert np.allclose(act_h2(R, *c.fixed_point), c.fixed_point, atol=1e-9 * max(1, x))
        assert c.angle == pytest.approx(theta, abs=1e-9)


class TestRotation:
    def test_quarter_turn_at_i(self):
        R = rotation_about(1, math.pi / 2)
        assert np.allclose(R.matrix, [[math.cos(math.pi / 4), -math.sin(math.pi / 4)],
                                      [math.sin(math.pi / 4), math.cos(math.pi / 4)]])

    def test_zero_angle(self):
        assert rotation_about(3, 0).is_identity()

    def test_centre_two(self):
        assert np.allclose(classify_h2(rotation_about(2, math.pi / 2).matrix.real).fixed_point, (0, 2))


class TestCommutatorTrace:
    def test_values(self):
        assert commutator_trace_h2(math.pi / 2, 2) == pytest.approx(2.25, abs=1e-12)
        assert commutator_trace_h2(math.pi, 3) == pytest.approx(10 / 3, abs=1e-12)

    def test_x_equal_one(self):
        with pytest.raises(ValueError):
            commutator_trace_h2(1.0, 1)

    @given(st.floats(0.01, 2 * math.pi - 0.01), st.floats(0.05, 20).filter(lambda x: abs(x - 1) > 1e-3))
    def test_above_two(self, theta, x):
        tr = commutator_trace_h2(theta, x)
        assert tr == pytest.approx(commutator_trace_closed_form(theta, x), rel=1e-9)
        assert tr > 2


class TestLine:
    def test_f(self):
        fix = mobius_line_fixed_points([[0, 1], [-1, 3]])
        r5 = QuadraticNumber.sqrt(5)
        assert set(fix.points) == {(3 + r5) / 2, (3 - r5) / 2}

    def test_identity(self):
        assert mobius_line_fixed_points([[1, 0], [0, 1]]).points == "ALL"

    def test_word_fg(self):
        fix = mobius_line_fixed_points([[5, 4], [16, 13]])
        assert len(fix.points) == 2

    def test_audit(self):
        report = moebius_eccentric_audit(4, 3)
        assert report.passed and report.details["min_discriminant"] >= 5

    @given(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
    def test_fixed_points_are_fixed(self, a, b, c):
        if a == 0:
            return
        # build an integer matrix with determinant 1 when possible
        if (1 + b * c) % a:
            return
        d = (1 + b * c) // a
        fix = mobius_line_fixed_points([[a, b], [c, d]])
        if fix.points == "ALL":
            return
        for x in fix.points:
            if x == "inf":
                assert c == 0
                continue
            x = float(x)
            assert abs((a * x + b) - x * (c * x + d)) <= 1e-9 * max(1, abs(x)) ** 2


class TestH3:
    def test_disjoint_vertical_axes(self):
        f, g = vertical_rotation(0, math.pi / 2), vertical_rotation(1, math.pi / 2)
        w = eccentricity_witness_h3(f, g)
        assert w.kind == "WITNESS" and not has_fixed_point_h3(w.element)

    def test_self_pair(self):
        f = vertical_rotation(0, math.pi / 2)
        assert eccentricity_witness_h3(f, f).kind == "COMMON_POINT"

    def test_intersecting_axes(self):
        f = vertical_rotation(0, math.pi / 3)
        g = Sl2Element.from_matrix(np.array([[math.cos(0.4), -math.sin(0.4)], [math.sin(0.4), math.cos(0.4)]]))
        w = eccentricity_witness_h3(f, g)
        assert w.kind == "COMMON_POINT"
        assert np.allclose(f.act_h3(w.point), w.point) and np.allclose(g.act_h3(w.point), w.point)

    def test_not_elliptic(self):
        with pytest.raises(NotElliptic):
            eccentricity_witness_h3(Sl2Element(2, 0, 0, 0.5), vertical_rotation(0, 1))

    @given(st.complex_numbers(max_magnitude=3), st.floats(0.2, 3), st.floats(0.2, 3))
    def test_witness_or_common_point(self, center, a, b):
        f, g = vertical_rotation(0, a), vertical_rotation(center, b)
        w = eccentricity_witness_h3(f, g)
        if w.kind == "COMMON_POINT":
            assert np.allclose(f.act_h3(w.point), w.point, atol=1e-7)
            assert np.allclose(g.act_h3(w.point), w.point, atol=1e-7)
        else:
            assert not has_fixed_point_h3(w.element)

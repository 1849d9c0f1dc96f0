from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from gafcheck.errors import ParseError
from gafcheck.matrices import AffineMap, Matrix, affine_fixed_point, solve_linear
from gafcheck.scalars import FiniteField, QuadraticNumber, parse_scalar

small = st.integers(-6, 6)
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def square(n, elems=small):
    return st.lists(st.lists(elems, min_size=n, max_size=n), min_size=n, max_size=n).map(
        lambda rows: Matrix(tuple(tuple(r) for r in rows)))


# ---------------------------------------------------------------- scalars


class TestFiniteFields:
    @pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27])
    def test_field_axioms(self, q):
        F = FiniteField(q)
        E = F.elements()
        assert len(E) == q
        for a in E:
            assert a + F.zero == a and a * F.one == a
            assert a + (-a) == F.zero
            if a != F.zero:
                assert a * a.inverse() == F.one
                assert a ** (q - 1) == F.one
        # the multiplicative group is cyclic of order q - 1
        assert any(len({(g ** k).code for k in range(1, q)}) == q - 1 for g in E[1:])

    def test_characteristic(self):
        F = FiniteField(9)
        for a in F.elements():
            assert a + a + a == F.zero

    def test_not_prime_power(self):
        with pytest.raises(ValueError):
            FiniteField(6)

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            FiniteField(4).zero.inverse()

    @given(st.sampled_from([4, 8, 9, 16]).flatmap(lambda q: st.tuples(st.just(q), *[st.integers(0, q - 1)] * 3)))
    def test_distributive(self, args):
        q, a, b, c = args
        F = FiniteField(q)
        x, y, z = F.element(a), F.element(b), F.element(c)
        assert x * (y + z) == x * y + x * z
        assert (x * y) * z == x * (y * z)


class TestQuadratic:
    def test_sqrt2_squared(self):
        r = QuadraticNumber.sqrt(2)
        assert r * r == 2

    def test_order(self):
        r = QuadraticNumber.sqrt(2)
        assert 1 < r < Fraction(3, 2)
        assert QuadraticNumber(3, -2, 2) > 0  # 3 - 2 sqrt 2 > 0

    def test_mixing_fields(self):
        with pytest.raises(ValueError):
            QuadraticNumber.sqrt(2) + QuadraticNumber.sqrt(3)

    def test_square_d_rejected(self):
        with pytest.raises(ValueError):
            QuadraticNumber(0, 1, 4)

    @given(fractions, fractions, fractions, fractions)
    def test_field_operations(self, a, b, c, d):
        x, y = QuadraticNumber(a, b, 5), QuadraticNumber(c, d, 5)
        assert (x + y) - y == x
        if y != 0:
            assert (x * y) / y == x
        assert abs(float(x * y) - float(x) * float(y)) < 1e-9
        assert (x < y) == (float(x) < float(y)) or abs(float(x) - float(y)) < 1e-12


class TestParseScalar:
    def test_values(self):
        assert parse_scalar(3) == 3
        assert parse_scalar("2/4") == Fraction(1, 2)
        assert parse_scalar("1+2√3") == QuadraticNumber(1, 2, 3)
        assert parse_scalar("-√2") == QuadraticNumber(0, -1, 2)

    @pytest.mark.parametrize("bad", ["x", True, 1.5, "1+"])
    def test_rejects(self, bad):
        with pytest.raises(ParseError):
            parse_scalar(bad)


# ---------------------------------------------------------------- matrices


class TestMatrix:
    def test_det_and_trace(self):
        M = Matrix(((2, 1), (-5, -3)))
        assert M.det() == -1 and M.trace() == -1

    def test_inverse(self):
        M = Matrix(((2, 1), (-5, -3)))
        assert M @ M.inverse() == Matrix.identity(2)

    def test_ragged_rows(self):
        with pytest.raises(ValueError):
            Matrix(((1, 2), (3,)))

    def test_nullspace(self):
        M = Matrix(((1, 2, 3), (2, 4, 6)))
        ns = M.nullspace()
        assert len(ns) == 2
        assert all(all(x == 0 for x in M.apply(v)) for v in ns)

    def test_over_finite_field(self):
        F = FiniteField(4)
        a = F.element(2)
        M = Matrix(((a, F.one), (F.zero, F.one)))
        assert M.det() == a
        assert M @ M.inverse() == Matrix.identity(2, F.one, F.zero)

    def test_signed_permutation(self):
        assert Matrix(((0, -1), (1, 0))).is_signed_permutation()
        assert not Matrix(((1, 1), (0, 1))).is_signed_permutation()

    @given(square(3), square(3))
    def test_det_multiplicative(self, X, Y):
        assert (X @ Y).det() == X.det() * Y.det()

    @given(square(3, fractions))
    def test_inverse_exact(self, X):
        assume(X.det() != 0)
        assert X @ X.inverse() == Matrix.identity(3)
        assert X.inverse().det() == Fraction(1) / X.det()

    @given(square(3), st.lists(small, min_size=3, max_size=3))
    def test_solve_linear(self, X, b):
        sol = solve_linear(X, b)
        if sol is None:
            assert X.det() == 0
        else:
            assert list(X.apply(sol.point)) == b
            assert sol.dimension == 3 - len(X.rref()[1])


class TestAffine:
    def test_translation_has_no_fixed_point(self):
        f = AffineMap(Matrix(((1,),)), (1,))
        assert affine_fixed_point(f) is None

    def test_g_fixed_point(self):
        g = AffineMap(Matrix(((-1, -1), (5, 4))), (1, 0))
        fix = affine_fixed_point(g)
        assert fix.is_point() and fix.point == (3, -5)

    def test_identity_fixes_everything(self):
        fix = affine_fixed_point(AffineMap.identity(3))
        assert fix.dimension == 3

    @given(square(2), st.tuples(small, small), square(2), st.tuples(small, small), st.tuples(small, small))
    def test_composition_law(self, L1, t1, L2, t2, x):
        f, g = AffineMap(L1, t1), AffineMap(L2, t2)
        fg = f * g
        assert fg(x) == f(g(x))
        assert fg.linear == L1 @ L2
        assert fg.translation == tuple(a + b for a, b in zip(L1.apply(t2), t1))

    @given(square(2, fractions), st.tuples(fractions, fractions))
    def test_fixed_set_is_fixed(self, L, t):
        f = AffineMap(L, t)
        fix = affine_fixed_point(f)
        if fix is not None:
            assert f(fix.point) == fix.point
            for d in fix.directions:
                assert L.apply(d) == tuple(d)

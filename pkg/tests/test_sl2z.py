import pytest
from hypothesis import given, strategies as st

from gafcheck.errors import EmptyWord, NotInT
from gafcheck.matrices import Matrix
from gafcheck.scalars import QuadraticNumber
from gafcheck.sl2z import (
    A,
    B,
    SignedWord,
    TraceSequence,
    block_dominance,
    free_affine_eccentric_audit,
    trace_audit,
    trace_certificate,
    transvection_line,
    transvection_lines_audit,
    word_matrix,
    word_trace_bound,
    words,
)

from .test_acceptance import reduced_word_traces


def W(*letters):
    return SignedWord(tuple(letters))


class TestTraceSequence:
    def test_initial_terms(self):
        assert TraceSequence.up_to(6).alphas == (0, 1, 3, 8, 21, 55, 144)

    def test_bounds_to_64(self):
        assert TraceSequence.up_to(64).check() == []

    def test_corrupted_sequence_is_caught(self):
        a = list(TraceSequence.up_to(10).alphas)
        a[7] += 1
        assert TraceSequence(tuple(a)).check()


class TestCertificates:
    def test_a1(self):
        c = trace_certificate(A, 1)
        assert c.trace == 3 and c.alpha == 1 and c.holds

    def test_a5(self):
        c = trace_certificate(A, 5)
        assert (c.alpha, c.trace, c.bound) == (55, 123, 63) and c.holds

    def test_b2(self):
        c = trace_certificate(B, 2)
        assert c.power == B @ B and c.trace == 7 and c.bound == 7 and c.holds

    def test_wrong_trace_rejected(self):
        with pytest.raises(NotInT):
            trace_certificate(Matrix(((1, 1), (0, 1))), 3)

    @given(st.sampled_from(["A", "B", "Ai", "Bi"]), st.integers(1, 30))
    def test_power_identity(self, name, n):
        M = {"A": A, "B": B, "Ai": A.inverse(), "Bi": B.inverse()}[name]
        c = trace_certificate(M, n)
        assert c.holds and c.power == M ** n


class TestWords:
    def test_ab(self):
        assert word_matrix(W(("A", 1), ("B", 1))) == Matrix(((5, 4), (16, 13)))
        assert word_trace_bound(W(("A", 1), ("B", 1))) == 18

    def test_ainv_binv(self):
        assert word_matrix(W(("A", -1), ("B", -1))) == Matrix(((17, 4), (4, 1)))
        assert word_trace_bound(W(("A", -1), ("B", -1))) == 18

    def test_single_letter(self):
        assert word_trace_bound(W(("A", 1))) == 3

    def test_empty_word(self):
        with pytest.raises(EmptyWord):
            word_trace_bound(SignedWord())

    def test_not_reduced(self):
        with pytest.raises(ValueError):
            W(("A", 1), ("A", 2))

    def test_word_count(self):
        assert sum(1 for _ in words(("A", "B"), 6, 3)) == 111_972

    def test_audit_matches_brute_force(self):
        report = trace_audit(4, 3)
        traces = list(reduced_word_traces(4, 3))
        assert report.passed and report.checked == len(traces)
        assert min(abs(t) for t in traces) >= 3

    @given(st.integers(-3, 3).filter(bool), st.integers(-3, 3).filter(bool))
    def test_block_dominance(self, k, l):
        assert block_dominance(k, l)

    @given(st.lists(st.tuples(st.integers(-4, 4).filter(bool)), min_size=1, max_size=5))
    def test_random_word_trace(self, exps):
        letters = tuple(("A" if i % 2 == 0 else "B", e) for i, (e,) in enumerate(exps))
        w = SignedWord(letters)
        assert abs(word_trace_bound(w)) >= 3
        assert word_matrix(w) @ word_matrix(w.inverse()) == Matrix.identity(2)


class TestFreeAffine:
    def test_l1(self):
        report = free_affine_eccentric_audit(1)
        assert report.details["fix_f"] == [0, 0] and report.details["fix_g"] == [3, -5]
        assert report.passed

    def test_l4(self):
        report = free_affine_eccentric_audit(4)
        assert report.passed and report.checked > 0

    def test_l0_vacuous(self):
        report = free_affine_eccentric_audit(0)
        assert report.passed and report.checked == 0

    def test_common_fixed_point_offset_fails(self):
        assert not free_affine_eccentric_audit(2, (0, 0)).passed


class TestTransvections:
    def test_lines(self):
        assert transvection_line(1, 0) == -1
        assert transvection_line(0, 1) == 0

    def test_audit(self):
        assert transvection_lines_audit(4).passed

    def test_rational_slope_fails(self):
        assert not transvection_lines_audit(3, QuadraticNumber(2, 0, 2)).passed

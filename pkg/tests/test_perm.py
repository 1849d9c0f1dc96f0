import itertools

import pytest
from hypothesis import given, strategies as st

from gafcheck.errors import CapExceeded, DegreeMismatch, MalformedCycles, NotATransversal
from gafcheck.perm import (
    ECCENTRIC,
    GAG,
    NOT_GAF,
    Permutation,
    alternating_group,
    classify_action,
    enumerate_subgroups,
    fixed_points,
    generate_group,
    induce_action,
    is_fixating,
    parse_permutation,
    symmetric_group,
)

from . import oracles


def perms(n_min=1, n_max=7):
    return st.integers(n_min, n_max).flatmap(lambda n: st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p))))


def perm_lists(n, size=3):
    return st.lists(st.permutations(range(1, n + 1)).map(lambda p: Permutation(tuple(p))), min_size=1, max_size=size)


P = lambda text, n: parse_permutation(text, n)


class TestParse:
    def test_single_cycle(self):
        assert P("(123)", 5).images == (2, 3, 1, 4, 5)

    def test_empty_is_identity(self):
        assert P("", 4) == Permutation.identity(4)

    def test_two_cycles(self):
        assert P("(12)(45)", 5).images == (2, 1, 3, 5, 4)

    def test_spaced_and_compact_agree(self):
        assert P("(1 2 3)(4 5)", 5) == P("(123)(45)", 5)

    def test_multidigit_points(self):
        assert P("(1 10)", 10)(10) == 1

    @pytest.mark.parametrize("text", ["(12", "(1 2)(2 3)", "(1 6)", "(a b)", "12", "(0 1)"])
    def test_malformed(self, text):
        with pytest.raises(MalformedCycles):
            P(text, 5)

    def test_str_round_trip(self):
        p = P("(1 3 2)(4 5)", 6)
        assert str(p) == "(1 3 2)(4 5)"
        assert P(str(p), 6) == p


class TestGroups:
    def test_involution(self):
        assert generate_group([P("(12)", 2)]).order == 2

    def test_s5_order6_group(self):
        G = generate_group([P("(123)", 5), P("(12)(45)", 5)])
        expected = {P(t, 5) for t in ["", "(123)", "(132)", "(12)(45)", "(13)(45)", "(23)(45)"]}
        assert set(G.elements) == expected

    def test_order_12_in_a7(self):
        assert generate_group([P("(123)(567)", 7), P("(12)(34)", 7)]).order == 12

    def test_cap(self):
        with pytest.raises(CapExceeded):
            symmetric_group(5, cap=100)

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatch):
            generate_group([P("(12)", 2), P("(12)", 3)])

    def test_fixed_points(self):
        assert fixed_points(P("(12)(45)", 5)) == {3}
        assert fixed_points(Permutation.identity(4)) == {1, 2, 3, 4}
        assert fixed_points(P("(123)(567)", 7)) == {4}

    def test_orders(self):
        assert [symmetric_group(n).order for n in range(1, 6)] == [1, 2, 6, 24, 120]
        assert [alternating_group(n).order for n in range(1, 6)] == [1, 1, 3, 12, 60]


class TestClassify:
    def test_s5_order6_eccentric(self):
        G = generate_group([P("(123)", 5), P("(12)(45)", 5)])
        assert classify_action(G).kind == ECCENTRIC

    def test_double_transposition_closure(self):
        f, g = P("(12)(34)", 6), P("(12)(56)", 6)
        G = generate_group([f, g])
        assert set(G.elements) == {Permutation.identity(6), f, g, P("(34)(56)", 6)}
        assert classify_action(G).kind == ECCENTRIC

    def test_transposition_gag(self):
        v = classify_action(generate_group([P("(12)", 3)]))
        assert v.kind == GAG and v.gag_witness == 3

    def test_not_gaf(self):
        v = classify_action(generate_group([P("(123)", 3)]))
        assert v.kind == NOT_GAF and not v.gaf_violator.fixed_points()


class TestSubgroups:
    def test_counts(self):
        assert len(enumerate_subgroups(generate_group([], degree=3))) == 1
        assert len(enumerate_subgroups(symmetric_group(3))) == 6
        assert len(enumerate_subgroups(symmetric_group(4))) == 30

    def test_matches_subset_closure_oracle(self):
        G = symmetric_group(4)
        lib = {frozenset(p.images for p in H.elements) for H in enumerate_subgroups(G)}
        assert lib == oracles.all_subgroups_two_generated({p.images for p in G.elements}, 4)

    def test_fixating_verdicts(self):
        assert is_fixating(symmetric_group(4)).fixating
        s5 = is_fixating(symmetric_group(5))
        assert not s5.fixating and s5.witness.order == 6
        a7 = is_fixating(alternating_group(7))
        assert not a7.fixating and a7.witness.order == 12

    def test_all_witnesses_are_eccentric(self):
        res = is_fixating(symmetric_group(5), all_witnesses=True)
        assert res.witnesses and all(classify_action(W).kind == ECCENTRIC for W in res.witnesses)


@pytest.fixture(scope="module")
def induced():
    G = symmetric_group(5)
    reps = [P("(15)", 5), P("(25)", 5), P("(35)", 5), P("(45)", 5), Permutation.identity(5)]
    return induce_action(G, 5, reps)


class TestInduced:
    def test_fix_of_double_transposition(self, induced):
        assert induced.fixed_pairs(P("(12)(45)", 5)) == {(3, 5)}

    def test_fix_of_three_cycle(self, induced):
        expected = {(4, 4), (4, 5), (5, 4), (5, 5)}
        assert induced.fixed_pairs(P("(123)", 5)) == expected
        assert induced.fixed_pairs(P("(132)", 5)) == expected

    def test_identity_fixes_everything(self, induced):
        assert len(induced.fixed_pairs(Permutation.identity(5))) == 25

    def test_induced_is_a_homomorphism(self, induced):
        for g, h in itertools.product(symmetric_group(5).elements[::17], repeat=2):
            assert induced.induce(g * h) == induced.induce(g) * induced.induce(h)

    def test_bad_transversal(self):
        with pytest.raises(NotATransversal):
            induce_action(symmetric_group(3), 1, [Permutation.identity(3), P("(23)", 3), P("(12)", 3)])


# ------------------------------------------------------------------ properties


@given(perms())
def test_inverse_cancels(p):
    ident = Permutation.identity(p.degree)
    assert p * p.inverse() == ident == p.inverse() * p


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(*[st.permutations(range(1, n + 1))] * 3)))
def test_composition_associative(triple):
    f, g, h = (Permutation(tuple(x)) for x in triple)
    assert (f * g) * h == f * (g * h)
    assert (f * g).images == oracles.compose(f.images, g.images)


@given(perms())
def test_cycle_string_round_trip(p):
    assert parse_permutation(str(p), p.degree) == p


@given(st.integers(1, 5).flatmap(perm_lists))
def test_group_is_closure(gens):
    n = gens[0].degree
    G = generate_group(gens, degree=n)
    elems = set(G.elements)
    assert {p.images for p in elems} == oracles.closure([g.images for g in gens], n)
    assert Permutation.identity(n) in elems
    assert all(p.inverse() in elems for p in elems)


@given(st.integers(1, 6).flatmap(perm_lists))
def test_classify_matches_definition(gens):
    n = gens[0].degree
    G = generate_group(gens, degree=n)
    v = classify_action(G)
    assert v.kind == oracles.verdict([p.images for p in G.elements], n)
    if v.kind == NOT_GAF:
        assert not v.gaf_violator.fixed_points()
    if v.kind == GAG:
        assert all(p(v.gag_witness) == v.gag_witness for p in G.elements)


@given(st.integers(1, 5).flatmap(lambda n: perm_lists(n, 2)))
def test_subgroups_of_small_groups_are_closed(gens):
    G = generate_group(gens, degree=gens[0].degree)
    subs = enumerate_subgroups(G)
    keys = [frozenset(p.images for p in H.elements) for H in subs]
    assert len(set(keys)) == len(keys)
    for H in subs:
        elems = set(H.elements)
        assert all(a * b in elems for a in elems for b in elems)
        assert H.is_subgroup_of(G)

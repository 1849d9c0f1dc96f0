import random

import pytest
from hypothesis import given, settings, strategies as st

from gafcheck.colored import (
    CELL,
    EVEN,
    ODD,
    VERTEX,
    colored_fixed_structure,
    colored_geodesic,
    colored_global_fixed_point,
    validate_colored_graph,
)
from gafcheck.errors import CellTooLarge, IncompleteCell, NotGaf, PolychromaticCycle
from gafcheck.instances import inject_k5, random_colored_graph
from gafcheck.perm import Permutation, parse_permutation
from gafcheck.tree import Tree, tree_global_fixed_point

from . import oracles

BOWTIE_EDGES = [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]
BOWTIE_COLORS = ["blue"] * 3 + ["red"] * 3


def bowtie():
    return validate_colored_graph(5, BOWTIE_EDGES, BOWTIE_COLORS)


def k_n(n, extra=()):
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)] + list(extra)
    return edges


class TestValidation:
    def test_bowtie_cells(self):
        X = bowtie()
        assert [(c.color, c.vertices) for c in X.cells] == [("blue", (1, 2, 3)), ("red", (3, 4, 5))]
        assert X.color(1, 3) == "blue" and X.color(5, 3) == "red"

    def test_geodesic(self):
        assert colored_geodesic(bowtie(), 1, 5) == [1, 3, 5]
        assert colored_geodesic(bowtie(), 2, 2) == [2]

    def test_alternating_square(self):
        with pytest.raises(PolychromaticCycle):
            validate_colored_graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)], ["a", "b", "a", "b"])

    def test_monochromatic_square_is_incomplete(self):
        with pytest.raises(IncompleteCell):
            validate_colored_graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)], ["a"] * 4)

    def test_path_with_distinct_colors(self):
        X = validate_colored_graph(4, [(1, 2), (2, 3), (3, 4)], ["a", "b", "c"])
        assert len(X.cells) == 3

    def test_color_count(self):
        with pytest.raises(ValueError):
            validate_colored_graph(3, [(1, 2), (2, 3)], ["a"])

    def test_disconnected(self):
        with pytest.raises(ValueError):
            validate_colored_graph(4, [(1, 2), (3, 4)], ["a", "a"])


class TestFixedStructure:
    def test_even_midpoint(self):
        X = bowtie()
        st_ = colored_fixed_structure(X, parse_permutation("(1 4)(2 5)", 5), 1)
        assert st_.kind == VERTEX and st_.parity == EVEN and st_.vertex == 3

    def test_odd_cell(self):
        X = bowtie()
        st_ = colored_fixed_structure(X, parse_permutation("(1 2)", 5), 1)
        assert st_.kind == CELL and st_.parity == ODD and st_.cell == 0 and st_.edge == (1, 2)


class TestGlobalFixedPoint:
    def test_bowtie(self):
        X = bowtie()
        x = colored_global_fixed_point(X, [parse_permutation("(1 2)", 5), parse_permutation("(4 5)", 5)])
        assert x == 3

    def test_k4(self):
        X = validate_colored_graph(4, k_n(4), ["a"] * 6)
        gens = [parse_permutation("(1 2)", 4), parse_permutation("(1 3)", 4)]
        assert colored_global_fixed_point(X, gens) == 4

    def test_k4_not_gaf(self):
        X = validate_colored_graph(4, k_n(4), ["a"] * 6)
        with pytest.raises(NotGaf):
            colored_global_fixed_point(X, [parse_permutation("(1 2)(3 4)", 4)])

    def test_k5_refused(self):
        X = validate_colored_graph(5, k_n(5), ["a"] * 10)
        with pytest.raises(CellTooLarge):
            colored_global_fixed_point(X, [parse_permutation("(1 2)", 5)])

    def test_injected_k5(self):
        rng = random.Random(3)
        for _ in range(5):
            X = inject_k5(random_colored_graph(rng, max_vertices=20))
            with pytest.raises(CellTooLarge):
                colored_global_fixed_point(X, [])


@settings(max_examples=40)
@given(st.integers(0, 2 ** 31))
def test_random_colored_graphs(seed):
    inst = random_colored_graph(random.Random(seed), max_vertices=30)
    X = inst.graph
    x = colored_global_fixed_point(X, inst.generators)
    assert all(g(x) == x for g in inst.generators)
    adj = oracles.adjacency(X.n, X.edges)
    rng = random.Random(seed)
    for _ in range(10):
        a, b = rng.randint(1, X.n), rng.randint(1, X.n)
        path = colored_geodesic(X, a, b)
        assert len(path) - 1 == oracles.bfs_distances(adj, a)[b]
        assert all(path[i + 1] in adj[path[i]] for i in range(len(path) - 1))


@st.composite
def labelled_trees(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    edges = [(draw(st.integers(1, v - 1)), v) for v in range(2, n + 1)]
    return n, edges


@settings(max_examples=60)
@given(labelled_trees(), st.data())
def test_trees_as_colored_graphs(tree, data):
    n, edges = tree
    X = validate_colored_graph(n, edges, [str(k) for k in range(len(edges))])
    T = Tree(n, edges)
    autos = oracles.automorphisms(n, edges)
    gens = [Permutation(p) for p in data.draw(st.lists(st.sampled_from(autos), max_size=3))]
    try:
        expected = tree_global_fixed_point(T, gens)
    except NotGaf:
        with pytest.raises(NotGaf):
            colored_global_fixed_point(X, gens)
        return
    got = colored_global_fixed_point(X, gens)
    assert all(g(got) == got for g in gens)
    assert got == expected

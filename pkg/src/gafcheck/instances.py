"""Random instances with known structure, shared by the harness, tests and scripts.

Trees and colored graphs are grown from a recursive shape in which sibling
branches of equal shape are interchangeable. Swapping or cycling such
branches gives automorphisms that all fix the root, so the generated groups
are GAG by construction. Vertices are then relabelled at random so the root
and the moved vertices land anywhere.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .colored import ColoredGraph, validate_colored_graph
from .lattice import LatticeIsometry, lattice_closure, lattice_fixed_point
from .perm import Permutation
from .tree import Tree

# ----------------------------------------------------------------- shapes


def _tree_shape(rng: random.Random, budget: int, depth: int) -> tuple:
    """A rooted shape: sorted tuple of (child shape, multiplicity)."""
    if budget <= 1 or depth == 0:
        return ()
    groups = {}
    used = 1
    for _ in range(rng.randint(0, 3)):
        room = budget - used
        if room < 1:
            break
        child = _tree_shape(rng, max(1, room // 3), depth - 1)
        size = _shape_size(child)
        mult = rng.randint(1, 3)
        while mult > 1 and used + mult * size > budget:
            mult -= 1
        if used + mult * size > budget:
            break
        groups[child] = groups.get(child, 0) + mult
        used += mult * size
    return tuple(sorted(groups.items()))


def _shape_size(shape: tuple) -> int:
    return 1 + sum(m * _shape_size(c) for c, m in shape)


@dataclass
class _Built:
    edges: list
    swaps: list  # pairs of equal-length vertex lists that may be exchanged position by position
    count: int


def _build_tree(shape: tuple, built: _Built) -> list[int]:
    """Instantiate ``shape``; return its vertices in canonical order (root first)."""
    built.count += 1
    root = built.count
    verts = [root]
    for child, mult in shape:
        copies = []
        for _ in range(mult):
            sub = _build_tree(child, built)
            built.edges.append((root, sub[0]))
            copies.append(sub)
            verts.extend(sub)
        if mult > 1:
            built.swaps.append(copies)
    return verts


def _swap_perm(n: int, copies: Sequence[Sequence[int]], cycle: Sequence[int]) -> Permutation:
    """Send copy cycle[k] onto copy cycle[k+1], position by position."""
    images = list(range(1, n + 1))
    for k, a in enumerate(cycle):
        b = cycle[(k + 1) % len(cycle)]
        for u, v in zip(copies[a], copies[b]):
            images[u - 1] = v
    return Permutation(tuple(images))


def _random_branch_perm(rng: random.Random, n: int, swaps: list) -> Permutation:
    copies = rng.choice(swaps)
    k = len(copies)
    if k > 2 and rng.random() < 0.5:
        idx = list(range(k))
        rng.shuffle(idx)
        return _swap_perm(n, copies, idx)
    a, b = rng.sample(range(k), 2)
    return _swap_perm(n, copies, [a, b])


def _relabel(rng: random.Random, n: int):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    pi = Permutation(tuple(perm))
    return pi, pi.inverse()


@dataclass(frozen=True)
class TreeInstance:
    tree: Tree
    generators: tuple[Permutation, ...]
    root: int

    def to_json(self) -> dict:
        return {**self.tree.to_json(), "generators": [list(g.images) for g in self.generators]}


def random_symmetric_tree(rng: random.Random, max_vertices: int = 200, max_generators: int = 4) -> TreeInstance:
    """A tree with at most ``max_vertices`` vertices and automorphisms fixing a common root."""
    while True:
        shape = _tree_shape(rng, rng.randint(2, max_vertices), depth=6)
        built = _Built([], [], 0)
        _build_tree(shape, built)
        if built.swaps or rng.random() < 0.1:
            break
    n = built.count
    gens = [_random_branch_perm(rng, n, built.swaps) for _ in range(rng.randint(1, max_generators))] if built.swaps else []
    if gens and rng.random() < 0.3:
        gens.append(gens[0] * gens[-1])
    pi, pinv = _relabel(rng, n)
    edges = [(pi(a), pi(b)) for a, b in built.edges]
    rng.shuffle(edges)
    return TreeInstance(Tree(n, edges), tuple(pi * g * pinv for g in gens), pi(1))


def inversion_tree(rng: random.Random, max_vertices: int = 200) -> TreeInstance:
    """Two copies of one shape joined root to root, with the swap (no fixed vertex)."""
    shape = _tree_shape(rng, max(1, max_vertices // 2), depth=5)
    built = _Built([], [], 0)
    left = _build_tree(shape, built)
    right = _build_tree(shape, built)
    built.edges.append((left[0], right[0]))
    n = built.count
    swap = _swap_perm(n, [left, right], [0, 1])
    pi, pinv = _relabel(rng, n)
    return TreeInstance(Tree(n, [(pi(a), pi(b)) for a, b in built.edges]), (pi * swap * pinv,), pi(1))


# ---------------------------------------------------------- colored graphs


def _colored_shape(rng: random.Random, budget: int, depth: int, max_cell: int) -> tuple:
    """Vertex shape: sorted tuple of (cell shape, multiplicity); a cell shape is a
    sorted tuple of the shapes of its non-root vertices."""
    if budget <= 1 or depth == 0:
        return ()
    groups = {}
    used = 1
    for _ in range(rng.randint(0, 2)):
        size = rng.randint(2, max_cell)
        room = budget - used
        if room < size - 1:
            break
        members = []
        for _ in range(size - 1):
            if rng.random() < 0.5 and members:
                members.append(members[-1])
            else:
                members.append(_colored_shape(rng, max(1, room // (3 * size)), depth - 1, max_cell))
        cell = tuple(sorted(members))
        csize = sum(_cshape_size(m) for m in cell)
        mult = rng.randint(1, 2)
        while mult > 1 and used + mult * csize > budget:
            mult -= 1
        if used + mult * csize > budget:
            break
        groups[cell] = groups.get(cell, 0) + mult
        used += mult * csize
    return tuple(sorted(groups.items()))


def _cshape_size(shape: tuple) -> int:
    return 1 + sum(m * sum(_cshape_size(v) for v in cell) for cell, m in shape)


@dataclass
class _BuiltColored:
    edges: list
    colors: list
    swaps: list
    count: int


def _build_colored(shape: tuple, built: _BuiltColored, parent_color: int | None) -> list[int]:
    built.count += 1
    root = built.count
    verts = [root]
    palette = (c for c in range(10 ** 6) if c != parent_color)
    for cell, mult in shape:
        copies = []
        for _ in range(mult):
            color = next(palette)
            members, copy_verts = [], []
            for vshape in cell:
                sub = _build_colored(vshape, built, color)
                members.append(sub)
                copy_verts.extend(sub)
            clique = [root] + [m[0] for m in members]
            for i, a in enumerate(clique):
                for b in clique[i + 1:]:
                    built.edges.append((a, b))
                    built.colors.append(f"c{color}")
            for i in range(len(cell)):
                twins = [members[j] for j in range(len(cell)) if cell[j] == cell[i]]
                if len(twins) > 1 and cell.index(cell[i]) == i:
                    built.swaps.append(twins)
            copies.append(copy_verts)
            verts.extend(copy_verts)
        if mult > 1:
            built.swaps.append(copies)
    return verts


@dataclass(frozen=True)
class ColoredInstance:
    graph: ColoredGraph
    generators: tuple[Permutation, ...]
    root: int

    def to_json(self) -> dict:
        return {**self.graph.to_json(), "generators": [list(g.images) for g in self.generators]}


def random_colored_graph(
    rng: random.Random, max_vertices: int = 60, max_cell: int = 4, max_generators: int = 3, samples: int = 200
) -> ColoredInstance:
    """A validated colored graph (cells of at most ``max_cell`` vertices) with automorphisms fixing a root."""
    while True:
        shape = _colored_shape(rng, rng.randint(3, max_vertices), depth=4, max_cell=max_cell)
        built = _BuiltColored([], [], [], 0)
        _build_colored(shape, built, None)
        if built.swaps and built.edges:
            break
    n = built.count
    gens = [_random_branch_perm(rng, n, built.swaps) for _ in range(rng.randint(1, max_generators))]
    pi, pinv = _relabel(rng, n)
    order = list(range(len(built.edges)))
    rng.shuffle(order)
    edges = [(pi(built.edges[k][0]), pi(built.edges[k][1])) for k in order]
    colors = [built.colors[k] for k in order]
    graph = validate_colored_graph(n, edges, colors, samples=samples, seed=rng.randrange(2 ** 31))
    return ColoredInstance(graph, tuple(pi * g * pinv for g in gens), pi(1))


def inject_k5(instance: ColoredInstance, at: int | None = None) -> ColoredGraph:
    """Attach a fresh K5 cell (four new vertices) at vertex ``at``."""
    X = instance.graph
    at = instance.root if at is None else at
    n = X.n
    new = [at] + list(range(n + 1, n + 5))
    edges = list(X.edges) + [(a, b) for i, a in enumerate(new) for b in new[i + 1:]]
    colors = list(X.colors) + ["k5"] * 10
    return validate_colored_graph(n + 4, edges, colors, samples=50)


def extend_permutation(p: Permutation, n: int) -> Permutation:
    return Permutation(tuple(p.images) + tuple(range(p.degree + 1, n + 1)))


# ----------------------------------------------------------- lattice groups


def _random_signed_perm(rng: random.Random, n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    perm = list(range(n))
    k = rng.randint(0, n)
    idx = rng.sample(range(n), k)
    shuffled = idx[:]
    rng.shuffle(shuffled)
    for a, b in zip(idx, shuffled):
        perm[a] = b
    signs = tuple(rng.choice((1, -1)) if rng.random() < 0.5 else 1 for _ in range(n))
    return tuple(perm), signs


@dataclass(frozen=True)
class LatticeInstance:
    generators: tuple[LatticeIsometry, ...]
    center: tuple[Fraction, ...]
    order: int


def random_gaf_lattice_group(rng: random.Random, n: int, max_order: int = 2000, attempts: int = 1000) -> LatticeInstance:
    """A finite group of lattice isometries of Z^n in which every element fixes a lattice point.

    The linear parts are random signed permutations; the whole group is
    conjugated to fix a random point of (Z/2)^n, which is kept only when every
    element still has an integer fixed point.
    """
    for _ in range(attempts):
        center = tuple(Fraction(rng.randint(-6, 6), 2) for _ in range(n))
        gens = []
        for _ in range(rng.randint(1, 3)):
            perm, signs = _random_signed_perm(rng, n)
            lin = LatticeIsometry(perm, signs, (0,) * n)
            image = lin.linear(center)
            t = tuple(int(c - x) for c, x in zip(center, image))
            gens.append(LatticeIsometry(perm, signs, t))
        try:
            elements = lattice_closure(gens, max_order, n)
        except Exception:
            continue
        if all(lattice_fixed_point(h) is not None for h in elements):
            return LatticeInstance(tuple(gens), center, len(elements))
    raise RuntimeError("no GAF lattice group found")

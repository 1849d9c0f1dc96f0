"""Edge-colored graphs whose cells are complete and whose cycles are monochromatic.

A cell is a connected component of the partial graph of one color. The two
structural hypotheses are checked exactly:

* every cell is a complete graph;
* every biconnected block is monochromatic.

The second is equivalent to every elementary cycle being monochromatic. One
direction is clear since a cycle lies in one block. Conversely, if the
fundamental cycles of a block split into two groups with disjoint edge sets
E1 and E2, any cycle C meeting both would have C & E1 equal to a sum of
cycles, hence of even degree, which a proper nonempty part of a cycle never
is; so no cycle meets both, contradicting 2-connectivity. A randomized
elementary-cycle sample is still run as a guard.

In such a graph two vertices are joined by a unique geodesic, and every cell
is gated: each vertex has a unique nearest vertex in a given cell.
"""
from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Sequence

import networkx as nx

from .errors import CellTooLarge, IncompleteCell, NoFixedPoint, NotAnIsometry, NotGaf, PolychromaticCycle
from .perm import DEFAULT_CAP, GAG, NOT_GAF, Permutation, classify_action, generate_group
from .tree import SimpleGraph

VERTEX = "VERTEX"
CELL = "CELL"
EVEN = "EVEN"
ODD = "ODD"
MAX_CELL = 4
SPOT_CHECK_SAMPLES = 1000


@dataclass(frozen=True)
class Cell:
    id: int
    color: str
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"id": self.id, "color": self.color, "vertices": list(self.vertices)}


class ColoredGraph(SimpleGraph):
    """A validated colored graph; build it with ``validate_colored_graph``."""

    def __init__(self, n: int, edges, colors: Sequence[str], cells: Sequence[Cell]):
        super().__init__(n, edges)
        self.colors = tuple(str(c) for c in colors)
        self.cells = tuple(cells)
        self.edge_cell: dict[tuple[int, int], int] = {}
        for cell in self.cells:
            for i, a in enumerate(cell.vertices):
                for b in cell.vertices[i + 1:]:
                    self.edge_cell[(a, b)] = cell.id

    def cell_of(self, a: int, b: int) -> Cell:
        return self.cells[self.edge_cell[(min(a, b), max(a, b))]]

    def color(self, a: int, b: int) -> str:
        return self.cell_of(a, b).color

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges], "colors": list(self.colors)}


def _sample_cycles(G: nx.Graph, colors: dict, samples: int, seed: int):
    """Random elementary cycles: a non-bridge edge plus a random path joining its ends."""
    bridges = {frozenset(e) for e in nx.bridges(G)}
    cyclic = sorted(tuple(sorted(e)) for e in G.edges if frozenset(e) not in bridges)
    if not cyclic:
        return None
    rng = random.Random(seed)
    for _ in range(samples):
        u, v = rng.choice(cyclic)
        parent = {u: None}
        queue = deque([u])
        while queue and v not in parent:
            w = queue.popleft()
            nbrs = list(G.adj[w])
            rng.shuffle(nbrs)
            for z in nbrs:
                if z not in parent and not (w == u and z == v):
                    parent[z] = w
                    queue.append(z)
        cycle = [v]
        while cycle[-1] != u:
            cycle.append(parent[cycle[-1]])
        seen = {colors[frozenset((cycle[i], cycle[(i + 1) % len(cycle)]))] for i in range(len(cycle))}
        if len(seen) > 1:
            return cycle
    return None


def validate_colored_graph(
    n: int,
    edges: Sequence[Sequence[int]],
    colors: Sequence[str],
    samples: int = SPOT_CHECK_SAMPLES,
    seed: int = 0,
) -> ColoredGraph:
    edges = [(int(a), int(b)) for a, b in edges]
    if len(colors) != len(edges):
        raise ValueError(f"{len(edges)} edges but {len(colors)} colors")
    SimpleGraph(n, edges)  # simple and connected
    color_of = {frozenset(e): str(c) for e, c in zip(edges, colors)}

    G = nx.Graph()
    G.add_nodes_from(range(1, n + 1))
    G.add_edges_from(edges)
    for block in nx.biconnected_component_edges(G):
        if len({color_of[frozenset(e)] for e in block}) > 1:
            sub = nx.Graph(block)
            for cyc in nx.cycle_basis(sub):
                pairs = zip(cyc, cyc[1:] + cyc[:1])
                if len({color_of[frozenset(p)] for p in pairs}) > 1:
                    raise PolychromaticCycle(f"cycle {cyc} uses several colors", payload=cyc)
            raise ArithmeticError("polychromatic block with monochromatic fundamental cycles")

    cells = []
    for c in sorted(set(color_of.values())):
        part = nx.Graph([tuple(e) for e, col in color_of.items() if col == c])
        for comp in nx.connected_components(part):
            k = len(comp)
            if part.subgraph(comp).number_of_edges() != k * (k - 1) // 2:
                raise IncompleteCell(f"{c} component {sorted(comp)} is not complete", payload=sorted(comp))
            cells.append((tuple(sorted(comp)), c))
    cells.sort()
    cell_objs = [Cell(i, c, verts) for i, (verts, c) in enumerate(cells)]

    bad = _sample_cycles(G, color_of, samples, seed)
    if bad is not None:
        raise PolychromaticCycle(f"cycle {bad} uses several colors", payload=bad)
    return ColoredGraph(n, edges, colors, cell_objs)


def colored_graph_from_json(data: dict, **kwargs) -> ColoredGraph:
    return validate_colored_graph(int(data["n"]), data["edges"], data["colors"], **kwargs)


def colored_geodesic(X: ColoredGraph, x: int, y: int) -> list[int]:
    """The geodesic from x to y; for x = y the path is just [x] (no edges)."""
    return X.geodesic(x, y)


@dataclass(frozen=True)
class FixedStructure:
    kind: str
    parity: str
    vertex: int | None = None
    cell: int | None = None
    edge: tuple[int, int] | None = None

    def to_json(self) -> dict:
        return {"kind": self.kind, "parity": self.parity, "vertex": self.vertex, "cell": self.cell,
                "edge": list(self.edge) if self.edge else None}


def _stabilizes(s: Permutation, cell: Cell) -> bool:
    verts = set(cell.vertices)
    return all(s(v) in verts for v in verts)


def colored_fixed_structure(X: ColoredGraph, s: Permutation, x: int) -> FixedStructure:
    """Midpoint of [x, s(x)] for even length, else the cell of its middle edge."""
    if not X.is_isometry(s):
        raise NotAnIsometry(f"{s} is not an isometry", payload=str(s))
    path = X.geodesic(x, s(x))
    d = len(path) - 1
    if d % 2 == 0:
        return FixedStructure(VERTEX, EVEN, vertex=path[d // 2])
    a, b = path[d // 2], path[d // 2 + 1]
    cell = X.cell_of(a, b)
    if s(a) != b or not _stabilizes(s, cell):
        raise NoFixedPoint(f"{s} neither swaps the middle edge nor stabilizes its cell", payload=str(s))
    return FixedStructure(CELL, ODD, cell=cell.id, edge=(a, b))


def _no_fixed(label: str, g: Permutation) -> Exception:
    if g.fixed_points():
        return ArithmeticError(f"{label} = {g} has fixed points; hypotheses on the graph fail")
    return NotGaf(f"{label} = {g} fixes no vertex", payload=str(g))


def _gag_on_cell(gens: Sequence[Permutation], cell: Cell, cap: int) -> int:
    """Common fixed vertex in a stable cell, via the action restricted to it."""
    verts = cell.vertices
    index = {v: i + 1 for i, v in enumerate(verts)}
    restricted = [Permutation(tuple(index[g(v)] for v in verts)) for g in gens]
    verdict = classify_action(generate_group(restricted, cap=cap, degree=len(verts)))
    if verdict.kind == GAG:
        return verts[verdict.gag_witness - 1]
    if verdict.kind == NOT_GAF:
        # find a word realizing the violator; it stabilizes the gated cell and
        # fixes no vertex of it, so it fixes no vertex at all
        target = verdict.gaf_violator.images
        ident = Permutation.identity(len(verts))
        reps = {ident.images: Permutation.identity(gens[0].degree)}
        queue = deque([ident])
        while queue:
            p = queue.popleft()
            for r, g in zip(restricted, gens):
                q = p * r
                if q.images not in reps:
                    reps[q.images] = reps[p.images] * g
                    queue.append(q)
        raise _no_fixed("element", reps[target])
    raise ArithmeticError(f"eccentric action on a cell of {len(verts)} vertices")


def colored_global_fixed_point(X: ColoredGraph, gens: Sequence[Permutation], cap: int = DEFAULT_CAP) -> int:
    """A vertex fixed by every generator when they generate a GAF and all cells have at most four vertices."""
    for cell in X.cells:
        if len(cell.vertices) > MAX_CELL:
            raise CellTooLarge(f"cell {cell.id} has {len(cell.vertices)} vertices", payload=list(cell.vertices))
    gens = list(gens)
    for k, g in enumerate(gens):
        if not X.is_isometry(g):
            raise NotAnIsometry(f"generator {k} is not an isometry", payload=k)
    x = 1
    done: list[Permutation] = []
    for k, s in enumerate(gens):
        if s(x) != x:
            if not s.fixed_points():
                raise _no_fixed(f"generator {k}", s)
            st = colored_fixed_structure(X, s, x)
            if st.kind == VERTEX:
                z = st.vertex
                if s(z) != z:
                    raise ArithmeticError(f"midpoint {z} not fixed by generator {k}")
                for j, t in enumerate(done):
                    if t(z) != z:
                        raise _no_fixed(f"generator {k} * generator {j}", s * t)
                x = z
            else:
                cell = X.cells[st.cell]
                for j, t in enumerate(done):
                    if not _stabilizes(t, cell):
                        raise _no_fixed(f"generator {k} * generator {j}", s * t)
                x = _gag_on_cell(done + [s], cell, cap)
        done.append(s)
    return x

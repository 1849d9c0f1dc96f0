"""Finite trees, their isometries, and global fixed points.

Vertices are 1..n. An isometry is stored as a ``Permutation`` of the vertices;
for a connected graph preserving distances is the same as preserving
adjacency, which is what ``graph_isometry`` checks.

The global fixed point follows the induction over generators: with x fixed
by the group G_0 generated so far and a new generator s, the midpoint z of
[x, s(x)] is the point of Fix s nearest to x. For t in G_0, st(x) = s(x), so
z is also the nearest fixed point of st whenever st has one, hence t(z) = z.
If some t does not fix z, then st has no fixed point at all, which is
reported as the certificate.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    InversionDetected,
    NoFixedPoint,
    NotAnIsometry,
    NotGaf,
    OddDistance,
    OrbitUnbounded,
    OutOfRange,
    HypothesisFailed,
)
from .perm import DEFAULT_CAP, Permutation

GraphIsometry = Permutation


class SimpleGraph:
    """Undirected simple connected graph on 1..n."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        if n < 1:
            raise ValueError("a graph needs at least one vertex")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n + 1)]
        clean = []
        for e in edges:
            a, b = int(e[0]), int(e[1])
            for v in (a, b):
                if not 1 <= v <= n:
                    raise OutOfRange(f"vertex {v} outside 1..{n}", payload=v)
            if a == b:
                raise ValueError(f"loop at {a}")
            if b in adj[a]:
                raise ValueError(f"repeated edge {a}-{b}")
            adj[a].add(b)
            adj[b].add(a)
            clean.append((min(a, b), max(a, b)))
        self.edges = tuple(clean)
        self.adj = tuple(tuple(sorted(s)) for s in adj)
        if len(self.bfs(1)[0]) != n:
            raise ValueError("graph is not connected")

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n:
            raise OutOfRange(f"vertex {v} outside 1..{self.n}", payload=v)

    def bfs(self, root: int) -> tuple[dict[int, int], dict[int, int]]:
        """Distances and BFS parents from ``root``; neighbours visited in increasing order."""
        dist, parent = {root: 0}, {root: 0}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
        return dist, parent

    @cached_property
    def _distance_rows(self) -> dict[int, dict[int, int]]:
        return {}

    def distances_from(self, x: int) -> dict[int, int]:
        rows = self._distance_rows
        if x not in rows:
            rows[x] = self.bfs(x)[0]
        return rows[x]

    def distance(self, x: int, y: int) -> int:
        self.check_vertex(x)
        self.check_vertex(y)
        return self.distances_from(x)[y]

    def geodesic(self, x: int, y: int) -> list[int]:
        """A shortest path from x to y (the only one in trees and in the colored graphs)."""
        self.check_vertex(x)
        self.check_vertex(y)
        _, parent = self.bfs(y)
        path = [x]
        while path[-1] != y:
            path.append(parent[path[-1]])
        return path

    def is_isometry(self, p: Permutation) -> bool:
        if p.degree != self.n:
            return False
        return all(p(b) in self.adj[p(a)] for a, b in self.edges)

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


class Tree(SimpleGraph):
    def __init__(self, n: int, edges: Iterable[Sequence[int]]):
        edges = list(edges)
        if len(edges) != n - 1:
            raise ValueError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        super().__init__(n, edges)

    @classmethod
    def from_json(cls, data: dict) -> "Tree":
        return cls(int(data["n"]), data["edges"])

    @classmethod
    def path(cls, n: int) -> "Tree":
        return cls(n, [(i, i + 1) for i in range(1, n)])

    @classmethod
    def star(cls, leaves: int) -> "Tree":
        return cls(leaves + 1, [(1, i) for i in range(2, leaves + 2)])

    @classmethod
    def spider(cls, legs: int, length: int) -> "Tree":
        """Centre 1 with ``legs`` paths of ``length`` edges; leg k uses 2 + k*length .. 1 + (k+1)*length."""
        edges = []
        for k in range(legs):
            prev = 1
            for j in range(length):
                v = 2 + k * length + j
                edges.append((prev, v))
                prev = v
        return cls(1 + legs * length, edges)


def graph_isometry(graph: SimpleGraph, images: Sequence[int]) -> Permutation:
    p = Permutation(tuple(images))
    if not graph.is_isometry(p):
        raise NotAnIsometry(f"{p} does not preserve distances", payload=list(images))
    return p


def tree_distance(T: SimpleGraph, x: int, y: int) -> int:
    return T.distance(x, y)


def tree_geodesic(T: SimpleGraph, x: int, y: int) -> list[int]:
    return T.geodesic(x, y)


def fixed_vertices(p: Permutation) -> frozenset[int]:
    return p.fixed_points()


def nearest_fixed_vertex(T: Tree, s: Permutation, x: int) -> int:
    """Midpoint of [x, s(x)], the vertex of Fix s nearest to x."""
    T.check_vertex(x)
    if not s.fixed_points():
        raise NoFixedPoint(f"{s} fixes no vertex", payload=str(s))
    path = T.geodesic(x, s(x))
    d = len(path) - 1
    if d % 2:
        raise OddDistance(f"d({x}, s({x})) = {d} is odd although s has fixed points", payload=d)
    z = path[d // 2]
    if s(z) != z:
        raise ArithmeticError(f"midpoint {z} not fixed; is the graph a tree?")
    return z


# ---------------------------------------------------------- global fixed point


def _require_fixed(s: Permutation, label: str) -> None:
    if not s.fixed_points():
        raise NotGaf(f"{label} = {s} fixes no vertex", payload=str(s))


def tree_global_fixed_point(T: Tree, gens: Sequence[Permutation]) -> int:
    """A vertex fixed by every generator, by induction over the generators in input order."""
    gens = list(gens)
    for k, g in enumerate(gens):
        if not T.is_isometry(g):
            raise NotAnIsometry(f"generator {k} is not an isometry", payload=k)
    x = 1
    done: list[Permutation] = []
    for k, s in enumerate(gens):
        if s(x) != x:
            _require_fixed(s, f"generator {k}")
            path = T.geodesic(x, s(x))
            if (len(path) - 1) % 2:
                raise ArithmeticError("odd distance to the image although s has fixed points")
            z = path[(len(path) - 1) // 2]
            for j, t in enumerate(done):
                if t(z) != z:
                    st = s * t
                    _require_fixed(st, f"generator {k} * generator {j}")
                    raise ArithmeticError(f"{st} has fixed points but does not fix the midpoint")
            x = z
        done.append(s)
    return x


def gaf_from_three(T: Tree, f: Permutation, g: Permutation) -> int:
    """A common fixed vertex of f and g when f, g and fg all fix a vertex.

    Take Q in Fix g nearest to vertex 1 and P the midpoint of [Q, f(Q)]. As
    f(Q) = fg(Q), P is also the point of Fix fg nearest to Q, so g(P) = f^-1(P) = P.
    """
    for name, h in (("f", f), ("g", g), ("fg", f * g)):
        if not h.fixed_points():
            raise HypothesisFailed(f"{name} fixes no vertex", payload=name)
    q = nearest_fixed_vertex(T, g, 1)
    p = nearest_fixed_vertex(T, f, q)
    if g(p) != p or f(p) != p:
        raise ArithmeticError("certificate vertex is not fixed")
    return p


# --------------------------------------------------------------- centres


@dataclass(frozen=True)
class TreeCenter:
    kind: str  # "vertex" or "edge"
    vertices: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices)}


def _center_of(adj: dict[int, set[int]]) -> TreeCenter:
    """Strip all leaves at once until one vertex or one edge remains."""
    alive = {v: set(ns) for v, ns in adj.items()}
    while len(alive) > 2:
        leaves = [v for v, ns in alive.items() if len(ns) <= 1]
        for v in leaves:
            for u in alive[v]:
                alive[u].discard(v)
            del alive[v]
    verts = tuple(sorted(alive))
    return TreeCenter("vertex" if len(verts) == 1 else "edge", verts)


def finite_tree_center(T: Tree) -> TreeCenter:
    return _center_of({v: set(T.adj[v]) for v in range(1, T.n + 1)})


def orbit(gens: Sequence[Permutation], seed: int, cap: int = DEFAULT_CAP) -> list[int]:
    seen = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                for w in (g(v), g.inverse()(v)):
                    if w not in seen:
                        seen.add(w)
                        if len(seen) > cap:
                            raise OrbitUnbounded(f"orbit of {seed} exceeds {cap}", payload=cap)
                        nxt.append(w)
        frontier = nxt
    return sorted(seen)


def convex_hull(T: Tree, points: Iterable[int]) -> dict[int, set[int]]:
    """Smallest subtree containing ``points``: prune leaves outside the set."""
    keep = set(points)
    alive = {v: set(T.adj[v]) for v in range(1, T.n + 1)}
    queue = deque(v for v, ns in alive.items() if len(ns) <= 1 and v not in keep)
    while queue:
        v = queue.popleft()
        if v not in alive:
            continue
        for u in alive[v]:
            alive[u].discard(v)
            if len(alive[u]) <= 1 and u not in keep:
                queue.append(u)
        del alive[v]
    return alive


def bounded_orbit_fixed_point(T: Tree, gens: Sequence[Permutation], seed: int, cap: int = DEFAULT_CAP) -> int:
    """Centre of the convex hull of the orbit of ``seed``; an inversion of the central edge is an error."""
    T.check_vertex(seed)
    delta = orbit(gens, seed, cap)
    center = _center_of(convex_hull(T, delta))
    if center.kind == "edge":
        a, b = center.vertices
        for k, g in enumerate(gens):
            if g(a) == b and g(b) == a:
                raise InversionDetected(f"generator {k} swaps {a} and {b}", payload=(k, a, b))
    v = center.vertices[0]
    for k, g in enumerate(gens):
        if g(v) != v:
            raise ArithmeticError(f"hull centre {v} moved by generator {k}")
    return v

"""Isometries of Z^n and of the hypercube {0,1}^n.

Every isometry of Z^n is x -> Lx + t with L a signed permutation matrix. For a
finite group G of them in which each element fixes a lattice point, a common
fixed point is built explicitly:

1. take the centroid w of the orbit of the origin, which G fixes;
2. if w is integral, return it;
3. otherwise the coordinates I where w is a half-integer are permuted (up to
   sign) among themselves, and the other coordinates are rounded to the
   nearest integer (the group preserves that slice of the lattice); after
   x -> 2x - 2w the group acts linearly on {+1,-1}^I;
4. no element may send e_i to -e_i for i in I, since that element would have
   no fixed lattice point;
5. group the indices of I into orbits under "f(e_i) = +-e_j" and give each
   index the sign that carries the smallest index of its orbit to +1;
6. the vector of those signs is fixed, and w + x/2 is the answer.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .errors import CapExceeded, NotGaf, NotSignedPerm
from .matrices import AffineMap, Matrix
from .perm import DEFAULT_CAP, FiniteGroup, Permutation, generate_group, is_fixating


@dataclass(frozen=True)
class LatticeIsometry:
    """x -> L x + t with L e_i = signs[i] * e_{perm[i]} (0-based indices)."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]
    translation: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "LatticeIsometry":
        return cls(tuple(range(n)), (1,) * n, (0,) * n)

    @classmethod
    def from_affine(cls, f: AffineMap) -> "LatticeIsometry":
        L = f.linear
        if not L.is_signed_permutation() or any(not isinstance(t, int) for t in f.translation):
            raise NotSignedPerm(f"{L} with translation {f.translation} is not a lattice isometry")
        perm, signs = [], []
        for i in range(L.n):
            col = L.column(i)
            j = next(k for k, x in enumerate(col) if x != 0)
            perm.append(j)
            signs.append(col[j])
        return cls(tuple(perm), tuple(signs), tuple(f.translation))

    def to_affine(self) -> AffineMap:
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            rows[j][i] = s
        return AffineMap(Matrix(tuple(tuple(r) for r in rows)), self.translation)

    def linear(self, x: Sequence) -> tuple:
        out = [0] * self.dim
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            out[j] = s * x[i]
        return tuple(out)

    def __call__(self, x: Sequence) -> tuple:
        return tuple(a + b for a, b in zip(self.linear(x), self.translation))

    def __mul__(self, other: "LatticeIsometry") -> "LatticeIsometry":
        perm = tuple(self.perm[other.perm[i]] for i in range(self.dim))
        signs = tuple(other.signs[i] * self.signs[other.perm[i]] for i in range(self.dim))
        return LatticeIsometry(perm, signs, self(other.translation))

    def inverse(self) -> "LatticeIsometry":
        n = self.dim
        perm, signs = [0] * n, [0] * n
        for i, (j, s) in enumerate(zip(self.perm, self.signs)):
            perm[j], signs[j] = i, s
        inv_lin = LatticeIsometry(tuple(perm), tuple(signs), (0,) * n)
        return LatticeIsometry(inv_lin.perm, inv_lin.signs, tuple(-x for x in inv_lin(self.translation)))

    def is_identity(self) -> bool:
        return self == LatticeIsometry.identity(self.dim)

    def __str__(self) -> str:
        return f"x -> {self.to_affine().linear} x + {list(self.translation)}"


def as_lattice_isometry(f) -> LatticeIsometry:
    return f if isinstance(f, LatticeIsometry) else LatticeIsometry.from_affine(f)


def lattice_fixed_point(f: LatticeIsometry) -> tuple[int, ...] | None:
    """One integer fixed point, or None.

    Around a cycle i_0 -> i_1 -> ... of the underlying permutation the fixed
    point equations x_{i_{k+1}} = s_{i_k} x_{i_k} + t_{i_{k+1}} close up into
    x_{i_0} = S x_{i_0} + c; S = 1 needs c = 0 and S = -1 needs c even.
    """
    n = f.dim
    x: list = [None] * n
    for start in range(n):
        if x[start] is not None:
            continue
        cycle, i = [], start
        while True:
            cycle.append(i)
            i = f.perm[i]
            if i == start:
                break
        S, c = 1, 0
        for i in cycle:
            S, c = f.signs[i] * S, f.signs[i] * c + f.translation[f.perm[i]]
        if S == 1:
            if c != 0:
                return None
            value = 0
        else:
            if c % 2:
                return None
            value = c // 2
        x[start] = value
        for i in cycle[:-1]:
            x[f.perm[i]] = f.signs[i] * x[i] + f.translation[f.perm[i]]
    return tuple(x)


def lattice_closure(gens: Iterable[LatticeIsometry], cap: int = DEFAULT_CAP, dim: int | None = None) -> list[LatticeIsometry]:
    gens = [as_lattice_isometry(g) for g in gens]
    n = gens[0].dim if gens else dim
    ident = LatticeIsometry.identity(n)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = x * s
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"lattice group exceeds cap {cap} (is it finite?)", payload=cap)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda g: (g.perm, g.signs, g.translation))


@dataclass(frozen=True)
class ZnFixedPoint:
    point: tuple[int, ...]
    centroid: tuple
    half_coords: tuple[int, ...]
    signs: tuple[int, ...]
    order: int


def _sign_labels(linears: Sequence[LatticeIsometry], coords: Sequence[int]) -> dict[int, int]:
    """Sign for each coordinate in ``coords`` fixed by every linear part.

    The smallest index of each orbit gets +1 and the rest follow the group.
    """
    coords = list(coords)
    labels: dict[int, int] = {}
    for root in sorted(coords):
        if root in labels:
            continue
        labels[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            for f in linears:
                j, s = f.perm[i], f.signs[i]
                want = s * labels[i]
                if j not in labels:
                    labels[j] = want
                    stack.append(j)
                elif labels[j] != want:
                    raise NotGaf(f"sign classes clash at coordinate {j + 1}", payload=f)
    return labels


def zn_global_fixed_point(
    gens: Iterable, fix_witnesses: Sequence | None = None, cap: int = DEFAULT_CAP, dim: int | None = None
) -> ZnFixedPoint:
    gens = [as_lattice_isometry(g) for g in gens]
    n = gens[0].dim if gens else dim
    if n is None:
        raise ValueError("dimension needed for an empty generating set")
    if fix_witnesses is not None:
        for g, w in zip(gens, fix_witnesses):
            if g(w) != tuple(w):
                raise NotGaf(f"claimed fixed point {w} is moved by {g}", payload=g)
    elements = lattice_closure(gens, cap, n)
    for h in elements:
        if lattice_fixed_point(h) is None:
            raise NotGaf(f"{h} has no fixed lattice point", payload=h)
    omega = tuple(Fraction(sum(h.translation[i] for h in elements), len(elements)) for i in range(n))
    # coordinates congruent to 1/2 get a sign; the others round to the nearest integer
    half = tuple(i for i in range(n) if omega[i].denominator == 2)
    for h in elements:
        for i in half:
            if h.perm[i] == i and h.signs[i] == -1:
                raise NotGaf(f"{h} reverses coordinate {i + 1} around a half-integer", payload=h)
    labels = _sign_labels(gens, half)
    x = [round(omega[i]) if i not in labels else int(omega[i] + Fraction(labels[i], 2)) for i in range(n)]
    point = tuple(x)
    for g in gens:
        if g(point) != point:
            raise NotGaf(f"constructed point {point} is moved by {g}", payload=g)
    return ZnFixedPoint(point, omega, tuple(i + 1 for i in half), tuple(labels.get(i, 0) for i in range(n)), len(elements))


def brute_force_common_fixed(gens: Sequence[LatticeIsometry], radius: int) -> list[tuple[int, ...]]:
    """Every point of the box [-radius, radius]^n fixed by all generators."""
    n = gens[0].dim
    return [p for p in product(range(-radius, radius + 1), repeat=n) if all(g(p) == p for g in gens)]


# ------------------------------------------------------------------ hypercube


def cube_isometry(perm: Sequence[int], signs: Sequence[int]) -> LatticeIsometry:
    """Signed permutation conjugated about the cube centre (1/2, ..., 1/2)."""
    n = len(perm)
    half = [Fraction(1, 2)] * n
    lin = LatticeIsometry(tuple(perm), tuple(signs), (0,) * n)
    t = tuple(int(a - b) for a, b in zip(half, lin.linear(half)))
    return LatticeIsometry(tuple(perm), tuple(signs), t)


def cube_vertices(n: int) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=n))


def cube_generators(n: int) -> list[LatticeIsometry]:
    gens = [cube_isometry(tuple(range(n)), (-1,) + (1,) * (n - 1))]
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        gens.append(cube_isometry(tuple(perm), (1,) * n))
    return gens


def cube_permutation(f: LatticeIsometry) -> Permutation:
    verts = cube_vertices(f.dim)
    index = {v: k + 1 for k, v in enumerate(verts)}
    return Permutation(tuple(index[f(v)] for v in verts))


@dataclass(frozen=True)
class HypercubeAnalysis:
    n: int
    generators: tuple[LatticeIsometry, ...]
    group: FiniteGroup
    fixating: bool | None

    @property
    def order(self) -> int:
        return self.group.order


HYPERCUBE_CAP = 2 ** 6 * 720


def hypercube_isometry_analysis(n: int, cap: int = HYPERCUBE_CAP, decide_up_to: int = 3) -> HypercubeAnalysis:
    """Isom of {0,1}^n as a permutation group on its 2^n vertices.

    The default cap admits the full group for every n <= 6 (order 2^n n!).
    Fixating is decided by exhaustive subgroup search for n <= ``decide_up_to``.
    """
    if not 1 <= n <= 6:
        raise ValueError("hypercube dimension must be in 1..6")
    gens = cube_generators(n)
    group = generate_group([cube_permutation(g) for g in gens], cap)
    verdict = is_fixating(group, cap).fixating if n <= decide_up_to else None
    return HypercubeAnalysis(n, tuple(gens), group, verdict)


def hypercube_fixed_vertex(gens: Sequence[LatticeIsometry], cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Common fixed vertex of a group of cube isometries in which each element
    fixes a vertex, from the sign classes around the cube centre.
    """
    gens = [as_lattice_isometry(g) for g in gens]
    n = gens[0].dim
    verts = cube_vertices(n)
    for h in lattice_closure(gens, cap, n):
        if not any(h(v) == v for v in verts):
            raise NotGaf(f"{h} fixes no vertex", payload=h)
        if any(h.perm[i] == i and h.signs[i] == -1 for i in range(n)):
            raise NotGaf(f"{h} flips a coordinate", payload=h)
    labels = _sign_labels(gens, range(n))
    vertex = tuple((1 + labels[i]) // 2 for i in range(n))
    for g in gens:
        if g(vertex) != vertex:
            raise NotGaf(f"vertex {vertex} moved by {g}", payload=g)
    return vertex

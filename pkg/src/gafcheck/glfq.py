"""Linear groups over finite fields acting on nonzero vectors."""
from __future__ import annotations

from itertools import product
from typing import Sequence

from .errors import SingularGenerator
from .matrices import Matrix
from .perm import DEFAULT_CAP, FiniteGroup, Permutation, generate_group
from .scalars import FiniteField

# Order of F_2^3 \ {0} matching the labels 1..7 used for the GL(3, 2) example:
# e1, e2, e3, e1+e2+e3, e2+e3, e1+e3, e1+e2.
E16_ORDER = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 1, 1), (1, 0, 1), (1, 1, 0))

# f cycles e1 -> e2 -> e3, g sends e1 to e1+e2+e3 and fixes e2, e3 (columns are images).
E16_F = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
E16_G = ((1, 0, 0), (1, 1, 0), (1, 0, 1))


def nonzero_vectors(d: int, q: int) -> list[tuple[int, ...]]:
    """Nonzero vectors of GF(q)^d as element codes, in lexicographic order."""
    return [v for v in product(range(q), repeat=d) if any(v)]


def _entry(x, F: FiniteField):
    """Ints in 0..q-1 are element codes; other ints are reduced into the prime field."""
    if isinstance(x, int) and 0 <= x < F.q:
        return F.element(x)
    return F(x)


def field_matrix(rows: Sequence[Sequence], F: FiniteField) -> Matrix:
    return Matrix(tuple(tuple(_entry(x, F) for x in r) for r in rows))


def matrix_permutation(M: Matrix, F: FiniteField, order: Sequence[tuple[int, ...]]) -> Permutation:
    index = {v: k + 1 for k, v in enumerate(order)}
    images = []
    for v in order:
        w = M.apply(tuple(F.element(c) for c in v))
        images.append(index[tuple(x.code for x in w)])
    return Permutation(tuple(images))


def gl_fq_to_permutation(
    d: int,
    q: int,
    gens: Sequence,
    vector_order: Sequence[tuple[int, ...]] | None = None,
    cap: int = DEFAULT_CAP,
) -> FiniteGroup:
    """Permutation action of <gens> on GF(q)^d minus 0.

    Generators are matrices acting on column vectors; entries are element
    codes (ints) or field elements. Point k stands for ``vector_order[k-1]``.
    """
    F = FiniteField(q)
    order = list(vector_order) if vector_order is not None else nonzero_vectors(d, q)
    perms = []
    for g in gens:
        M = g if isinstance(g, Matrix) else field_matrix(g, F)
        if M.shape != (d, d):
            raise ValueError(f"generator of shape {M.shape}, expected {(d, d)}")
        if M.det() == 0:
            raise SingularGenerator(f"{M} is singular over GF({q})", payload=str(M))
        perms.append(matrix_permutation(M, F, order))
    return generate_group(perms, cap, degree=len(order))


def general_linear_generators(d: int, q: int) -> list[Matrix]:
    """Elementary transvections plus diag(primitive, 1, ..., 1); they generate GL(d, q)."""
    F = FiniteField(q)
    one, zero = F.one, F.zero
    prim = next(
        x for x in F.elements()[1:] if len({(x ** k).code for k in range(1, q)}) == q - 1
    )
    gens = [Matrix.diag([prim] + [one] * (d - 1), zero)]
    for i in range(d):
        for j in range(d):
            if i != j:
                rows = [[one if a == b else zero for b in range(d)] for a in range(d)]
                rows[i][j] = one
                gens.append(Matrix(tuple(tuple(r) for r in rows)))
    return gens


def general_linear_group(d: int, q: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    return gl_fq_to_permutation(d, q, general_linear_generators(d, q), cap=cap)


def gl_order(d: int, q: int) -> int:
    out = 1
    for i in range(d):
        out *= q ** d - q ** i
    return out


def affine_line_family(q: int, a: int | None = None) -> list[Matrix]:
    """A = [[a, 0], [0, 1]] with a not 0 or 1, and B = [[1, 1], [0, 1]] over GF(q), q >= 3."""
    F = FiniteField(q)
    if q < 3:
        raise ValueError("the family needs a field with at least three elements")
    a = 2 if a is None else a
    return [field_matrix(((a, 0), (0, 1)), F), field_matrix(((1, 1), (0, 1)), F)]

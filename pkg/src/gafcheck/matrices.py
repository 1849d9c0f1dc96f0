"""Exact matrices and affine maps over any exact domain.

Entries may be ints, Fractions, finite-field elements or quadratic numbers;
all that is asked of them is ring arithmetic, comparison with ``0`` and exact
division (ints divide into Fractions).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .scalars import exact_div


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


@dataclass(frozen=True)
class Matrix:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(_normalize(x) for x in r) for r in self.rows)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise ValueError("matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, n: int, one=1, zero=0) -> "Matrix":
        return cls(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, r: int, c: int, zero=0) -> "Matrix":
        return cls(tuple(tuple(zero for _ in range(c)) for _ in range(r)))

    @classmethod
    def diag(cls, entries: Sequence, zero=0) -> "Matrix":
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else zero for j in range(n)) for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.rows)))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError(f"shapes {self.shape} and {other.shape} do not compose")
            cols = list(zip(*other.rows))
            return Matrix(tuple(tuple(_dot(r, c) for c in cols) for r in self.rows))
        return self.apply(other)

    __mul__ = __matmul__

    def apply(self, vector: Sequence) -> tuple:
        if len(vector) != self.shape[1]:
            raise ValueError("vector length does not match the matrix")
        return tuple(_normalize(_dot(r, vector)) for r in self.rows)

    def scale(self, c) -> "Matrix":
        return Matrix(tuple(tuple(c * x for x in r) for r in self.rows))

    def __rmul__(self, c):
        return self.scale(c)

    def __add__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return Matrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "Matrix":
        return Matrix(tuple(tuple(-a for a in r) for r in self.rows))

    def __pow__(self, k: int) -> "Matrix":
        base = self if k >= 0 else self.inverse()
        result = self.identity_like()
        for _ in range(abs(k)):
            result = result @ base
        return result

    def identity_like(self) -> "Matrix":
        zero = self.rows[0][0] * 0
        one = zero + 1
        return Matrix.identity(self.n, one, zero)

    def trace(self):
        return _normalize(sum((self.rows[i][i] for i in range(1, self.n)), self.rows[0][0]))

    def det(self):
        rows, cols = self.shape
        if rows != cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(r) for r in self.rows]
        det = 1
        for c in range(rows):
            pivot = next((r for r in range(c, rows) if m[r][c] != 0), None)
            if pivot is None:
                return _normalize(m[0][0] - m[0][0])
            if pivot != c:
                m[c], m[pivot] = m[pivot], m[c]
                det = -det
            det = det * m[c][c]
            for r in range(c + 1, rows):
                if m[r][c] != 0:
                    f = exact_div(m[r][c], m[c][c])
                    m[r] = [a - f * b for a, b in zip(m[r], m[c])]
        return _normalize(det)

    def rref(self) -> tuple["Matrix", list[int]]:
        m = [list(r) for r in self.rows]
        rows, cols = self.shape
        pivots, r = [], 0
        for c in range(cols):
            p = next((i for i in range(r, rows) if m[i][c] != 0), None)
            if p is None:
                continue
            m[r], m[p] = m[p], m[r]
            lead = m[r][c]
            m[r] = [exact_div(x, lead) for x in m[r]]
            for i in range(rows):
                if i != r and m[i][c] != 0:
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == rows:
                break
        return Matrix(tuple(tuple(x) for x in m)), pivots

    def inverse(self) -> "Matrix":
        n = self.n
        one = self.identity_like()
        aug = Matrix(tuple(r + s for r, s in zip(self.rows, one.rows)))
        red, pivots = aug.rref()
        if pivots[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(tuple(r[n:] for r in red.rows))

    def nullspace(self) -> list[tuple]:
        red, pivots = self.rref()
        rows, cols = self.shape
        zero = self.rows[0][0] - self.rows[0][0]
        one = zero + 1
        basis = []
        for free in (c for c in range(cols) if c not in pivots):
            v = [zero] * cols
            v[free] = one
            for i, pc in enumerate(pivots):
                v[pc] = -red.rows[i][free]
            basis.append(tuple(_normalize(x) for x in v))
        return basis

    def is_signed_permutation(self) -> bool:
        n, m = self.shape
        if n != m:
            return False
        for line in list(self.rows) + list(zip(*self.rows)):
            nz = [x for x in line if x != 0]
            if len(nz) != 1 or nz[0] not in (1, -1):
                return False
        return True

    def to_float(self):
        import numpy as np

        return np.array([[float(x) for x in r] for r in self.rows])

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.rows) + "]"


def _dot(a, b):
    it = iter(zip(a, b))
    x, y = next(it)
    total = x * y
    for x, y in it:
        total = total + x * y
    return total


@dataclass(frozen=True)
class AffineSubspace:
    """``point + span(directions)``; no directions means a single point."""

    point: tuple
    directions: tuple = ()

    @property
    def dimension(self) -> int:
        return len(self.directions)

    def is_point(self) -> bool:
        return not self.directions

    def contains(self, x: Sequence) -> bool:
        diff = [a - b for a, b in zip(x, self.point)]
        if not self.directions:
            return all(d == 0 for d in diff)
        M = Matrix(tuple(zip(*self.directions)))
        return solve_linear(M, diff) is not None


def solve_linear(M: Matrix, b: Sequence) -> AffineSubspace | None:
    """All solutions of ``M x = b`` as an affine subspace, or None."""
    rows, cols = M.shape
    aug = Matrix(tuple(tuple(r) + (bi,) for r, bi in zip(M.rows, b)))
    red, pivots = aug.rref()
    if cols in pivots:
        return None
    zero = M.rows[0][0] - M.rows[0][0]
    x = [zero] * cols
    for i, pc in enumerate(pivots):
        x[pc] = red.rows[i][cols]
    return AffineSubspace(tuple(_normalize(v) for v in x), tuple(M.nullspace()))


@dataclass(frozen=True)
class AffineMap:
    """x -> linear x + translation."""

    linear: Matrix
    translation: tuple

    def __post_init__(self):
        if self.linear.shape[0] != self.linear.shape[1] or len(self.translation) != self.linear.n:
            raise ValueError("affine map needs a square linear part and a matching translation")
        object.__setattr__(self, "translation", tuple(_normalize(t) for t in self.translation))

    @classmethod
    def linear_map(cls, M: Matrix) -> "AffineMap":
        zero = M.rows[0][0] - M.rows[0][0]
        return cls(M, tuple(zero for _ in range(M.n)))

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(Matrix.identity(n), (0,) * n)

    @property
    def dim(self) -> int:
        return self.linear.n

    def __call__(self, x: Sequence) -> tuple:
        return tuple(_normalize(a + b) for a, b in zip(self.linear.apply(x), self.translation))

    def __mul__(self, other: "AffineMap") -> "AffineMap":
        return AffineMap(self.linear @ other.linear, self(other.translation))

    __matmul__ = __mul__

    def inverse(self) -> "AffineMap":
        inv = self.linear.inverse()
        return AffineMap(inv, tuple(-x for x in inv.apply(self.translation)))

    def __pow__(self, k: int) -> "AffineMap":
        base = self if k >= 0 else self.inverse()
        result = AffineMap(self.linear.identity_like(), tuple(t - t for t in self.translation))
        for _ in range(abs(k)):
            result = result * base
        return result

    def key(self) -> tuple:
        return self.linear.rows, self.translation


def affine_fixed_point(f: AffineMap) -> AffineSubspace | None:
    """Solutions of (id - L) x = f(0); None when the fixed set is empty."""
    I = f.linear.identity_like()
    return solve_linear(I - f.linear, f.translation)

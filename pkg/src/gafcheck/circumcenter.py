"""Centres of bounded sets: the unique minimizer of r(x, A) = max_a d(x, a).

Both spaces use the move-to-front form of Welzl's algorithm. A ball with a
given support set {a_1, ..., a_k} on its boundary has an explicit centre:

* Euclidean: the circumcentre of the support inside its affine hull;
* hyperbolic: in the hyperboloid model the point X with <X, a_i> equal for
  all i, namely X proportional to sum_i lambda_i a_i with G lambda = 1 for the
  Minkowski Gram matrix G.

The geodesic descent (step toward the farthest point, halving the step when
the radius does not improve) is available as ``method="descent"``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import EmptySet
from .hyperbolic import (
    as_point,
    from_hyperboloid,
    geodesic_point,
    hyperbolic_distance,
    to_hyperboloid,
)

EUCLIDEAN = "EUCLIDEAN"
HYPERBOLIC = "HYPERBOLIC"


@dataclass(frozen=True)
class CircumcenterResult:
    center: np.ndarray
    radius: float
    iterations: int
    residual: float
    support: tuple[int, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "center": [float(x) for x in self.center],
            "radius": float(self.radius),
            "iterations": self.iterations,
            "residual": float(self.residual),
            "support": list(self.support),
        }


# ----------------------------------------------------------- ball models


class _EuclideanBalls:
    def __init__(self, pts: np.ndarray):
        self.pts = pts
        self.dim = pts.shape[1]

    def lift(self, i: int) -> np.ndarray:
        return self.pts[i]

    def ball(self, support: list[int]):
        if not support:
            return None
        P = self.pts[support]
        p0 = P[0]
        if len(support) == 1:
            return p0.copy(), 0.0
        D = P[1:] - p0
        G = 2.0 * D @ D.T
        rhs = np.einsum("ij,ij->i", D, D)
        mu = np.linalg.lstsq(G, rhs, rcond=None)[0]
        c = p0 + mu @ D
        return c, float(np.max(np.linalg.norm(P - c, axis=1)))

    def inside(self, ball, i: int, tol: float) -> bool:
        if ball is None:
            return False
        c, r = ball
        return float(np.linalg.norm(self.pts[i] - c)) <= r + tol


class _HyperboloidBalls:
    """Balls {X : <X, C> <= cosh r} in the hyperboloid model."""

    def __init__(self, pts: np.ndarray):
        self.pts = pts
        self.H = np.array([to_hyperboloid(p) for p in pts])
        self.dim = pts.shape[1]
        self.J = np.diag([1.0] + [-1.0] * (self.H.shape[1] - 1))

    def ball(self, support: list[int]):
        if not support:
            return None
        A = self.H[support]
        if len(support) == 1:
            return A[0].copy(), 0.0
        G = A @ self.J @ A.T
        lam = np.linalg.lstsq(G, np.ones(len(support)), rcond=None)[0]
        X = lam @ A
        q = float(X @ self.J @ X)
        if q <= 0:
            raise ArithmeticError("degenerate support set")
        X = X / np.sqrt(q)
        if X[0] < 0:
            X = -X
        cosh_r = np.max(A @ self.J @ X)
        return X, float(np.arccosh(max(cosh_r, 1.0)))

    def inside(self, ball, i: int, tol: float) -> bool:
        if ball is None:
            return False
        X, r = ball
        c = float(self.H[i] @ self.J @ X)
        return float(np.arccosh(max(c, 1.0))) <= r + tol


def _welzl(model, order: list[int], tol: float) -> tuple[object, list[int], int]:
    """Move-to-front Welzl. Returns (ball, support, number of ball constructions)."""
    count = [0]
    max_support = model.dim + 1

    def mtf(end: int, support: list[int]):
        count[0] += 1
        ball = model.ball(support)
        best_support = list(support)
        if len(support) == max_support:
            return ball, best_support
        i = 0
        while i < end:
            idx = order[i]
            if not model.inside(ball, idx, tol):
                ball, best_support = mtf(i, support + [idx])
                order.pop(i)
                order.insert(0, idx)
            i += 1
        return ball, best_support

    ball, support = mtf(len(order), [])
    return ball, support, count[0]


def _as_points(points: Sequence[Sequence[float]], space: str) -> np.ndarray:
    if len(points) == 0:
        raise EmptySet("circumcenter of an empty set")
    pts = np.array([np.asarray(p, float) for p in points])
    if pts.ndim != 2:
        raise ValueError("points must share one dimension")
    if space == HYPERBOLIC:
        for p in pts:
            as_point(p)
    return pts


def _radius_at(center: np.ndarray, pts: np.ndarray, space: str) -> float:
    if space == EUCLIDEAN:
        return float(np.max(np.linalg.norm(pts - center, axis=1)))
    return max(hyperbolic_distance(center, p) for p in pts)


def circumcenter(
    points: Sequence[Sequence[float]],
    space: str = EUCLIDEAN,
    method: str = "welzl",
    tol: float = 1e-12,
    max_iterations: int = 100_000,
    start: Sequence[float] | None = None,
    seed: int | None = None,
) -> CircumcenterResult:
    """Centre and radius r_A of a nonempty finite set.

    ``seed`` shuffles the processing order (the answer does not depend on it).
    ``start`` is the initial point of the descent method.
    """
    space = space.upper()
    if space not in (EUCLIDEAN, HYPERBOLIC):
        raise ValueError(f"unknown space {space!r}")
    pts = _as_points(points, space)
    if len(pts) == 1:
        return CircumcenterResult(pts[0].copy(), 0.0, 0, 0.0, (0,))
    if method == "descent":
        if space != HYPERBOLIC:
            raise ValueError("the descent method is implemented for hyperbolic space")
        return _descent(pts, tol, max_iterations, start)
    if method != "welzl":
        raise ValueError(f"unknown method {method!r}")
    order = list(range(len(pts)))
    if seed is not None:
        np.random.default_rng(seed).shuffle(order)
    model = _EuclideanBalls(pts) if space == EUCLIDEAN else _HyperboloidBalls(pts)
    ball, support, calls = _welzl(model, order, tol=1e-10)
    center = ball[0] if space == EUCLIDEAN else from_hyperboloid(ball[0])
    radius = _radius_at(center, pts, space)
    dists = [
        float(np.linalg.norm(pts[i] - center)) if space == EUCLIDEAN else hyperbolic_distance(center, pts[i])
        for i in support
    ]
    residual = max(abs(d - radius) for d in dists) if dists else 0.0
    return CircumcenterResult(center, radius, calls, residual, tuple(sorted(support)))


def _descent(pts: np.ndarray, tol: float, max_iterations: int, start) -> CircumcenterResult:
    """Walk toward the farthest point; halve the step whenever the radius does not drop."""
    x = np.asarray(start, float) if start is not None else pts[0].copy()
    r = _radius_at(x, pts, HYPERBOLIC)
    step = 0.5
    it = 0
    improvement = np.inf
    while it < max_iterations and step > tol:
        it += 1
        far = max(range(len(pts)), key=lambda i: hyperbolic_distance(x, pts[i]))
        y = geodesic_point(x, pts[far], step)
        ry = _radius_at(y, pts, HYPERBOLIC)
        if ry < r:
            improvement = r - ry
            x, r = y, ry
            if improvement < tol:
                break
        else:
            step /= 2.0
    return CircumcenterResult(x, r, it, float(step if improvement >= tol else improvement))


def euclidean_optimality_gap(points, result: CircumcenterResult) -> float:
    """Worst violation of the optimality conditions of a Euclidean minimax centre.

    The centre must be a convex combination of support points that all sit at
    distance r, with every other point within r. The returned number is the
    largest of: distance spread on the support, excess distance of any point,
    negative barycentric weight, and the residual of the barycentric solve.
    """
    pts = np.asarray(points, float)
    c, r = np.asarray(result.center, float), result.radius
    dists = np.linalg.norm(pts - c, axis=1)
    gap = max(0.0, float(np.max(dists)) - r)
    S = pts[list(result.support)]
    if len(S) == 0:
        return float("inf")
    gap = max(gap, float(np.max(np.abs(np.linalg.norm(S - c, axis=1) - r))))
    M = np.vstack([S.T, np.ones(len(S))])
    lam = np.linalg.lstsq(M, np.append(c, 1.0), rcond=None)[0]
    gap = max(gap, float(-np.min(lam)), float(np.linalg.norm(M @ lam - np.append(c, 1.0))))
    return gap

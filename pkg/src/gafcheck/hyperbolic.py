"""Hyperbolic space in the upper half-space model.

Points of H_n are coordinate vectors whose last entry is positive. Geodesic
constructions go through the hyperboloid model, where the geodesic through
two points lies in the 2-plane they span and midpoints are normalized sums.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionMismatch, EqualPoints

TOL = 1e-9


def as_point(x: Sequence[float]) -> np.ndarray:
    p = np.asarray(x, dtype=float)
    if p.ndim != 1 or p.size < 2:
        raise ValueError(f"a point of H_n needs at least two coordinates, got {x!r}")
    if not p[-1] > 0:
        raise ValueError(f"last coordinate must be positive, got {p[-1]}")
    return p


def _pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    p, q = as_point(x), as_point(y)
    if p.size != q.size:
        raise DimensionMismatch(f"points of dimension {p.size} and {q.size}")
    return p, q


def hyperbolic_distance(x: Sequence[float], y: Sequence[float]) -> float:
    """argcosh(1 + |x - y|^2 / (2 x_n y_n)), evaluated as 2 asinh(|x - y| / (2 sqrt(x_n y_n)))."""
    p, q = _pair(x, y)
    return float(2.0 * np.arcsinh(np.linalg.norm(p - q) / (2.0 * np.sqrt(p[-1] * q[-1]))))


def euclidean_distance(x: Sequence[float], y: Sequence[float]) -> float:
    p, q = np.asarray(x, float), np.asarray(y, float)
    if p.shape != q.shape:
        raise DimensionMismatch(f"points of dimension {p.size} and {q.size}")
    return float(np.linalg.norm(p - q))


# ------------------------------------------------------------ hyperboloid


def minkowski(X: np.ndarray, Y: np.ndarray) -> float:
    return float(X[0] * Y[0] - np.dot(X[1:], Y[1:]))


def to_hyperboloid(x: Sequence[float]) -> np.ndarray:
    """(u, t) in H_n to the sheet X_0^2 - |X_rest|^2 = 1, X_0 > 0."""
    p = as_point(x)
    u, t = p[:-1], p[-1]
    r2 = float(np.dot(u, u)) + t * t
    return np.concatenate(([(1.0 + r2) / (2.0 * t)], u / t, [(r2 - 1.0) / (2.0 * t)]))


def from_hyperboloid(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, float)
    t = 1.0 / (X[0] - X[-1])
    return np.concatenate((X[1:-1] * t, [t]))


def _normalize_timelike(X: np.ndarray) -> np.ndarray:
    q = minkowski(X, X)
    if q <= 0:
        raise ArithmeticError("vector is not timelike")
    X = X / np.sqrt(q)
    return X if X[0] > 0 else -X


def geodesic_point(x: Sequence[float], y: Sequence[float], s: float) -> np.ndarray:
    """Point at fraction s of the way from x to y along the geodesic."""
    p, q = _pair(x, y)
    X, Y = to_hyperboloid(p), to_hyperboloid(q)
    d = hyperbolic_distance(p, q)
    if d < 1e-15:
        return p.copy()
    Z = (np.sinh((1.0 - s) * d) * X + np.sinh(s * d) * Y) / np.sinh(d)
    return from_hyperboloid(Z)


@dataclass(frozen=True)
class MedianMidpoint:
    m: np.ndarray
    slack: float


def hyperbolic_midpoint(
    x: Sequence[float], y: Sequence[float], samples: int = 32, rng: np.random.Generator | None = None
) -> MedianMidpoint:
    """Midpoint of [x, y] with the smallest median-inequality slack over sampled z."""
    p, q = _pair(x, y)
    m = from_hyperboloid(_normalize_timelike(to_hyperboloid(p) + to_hyperboloid(q)))
    rng = rng or np.random.default_rng(0)
    slack = np.inf
    for _ in range(samples):
        z = random_hyperbolic_point(p.size, rng)
        slack = min(slack, median_inequality_slack(p, q, z, "HYPERBOLIC", m))
    return MedianMidpoint(m, float(slack))


def median_inequality_slack(x, y, z, space: str = "EUCLIDEAN", m=None) -> float:
    """1/2 (d(z,x)^2 + d(z,y)^2) - 1/4 d(x,y)^2 - d(z,m)^2 with m the midpoint of [x, y]."""
    if space.upper() == "EUCLIDEAN":
        dist = euclidean_distance
        if m is None:
            m = (np.asarray(x, float) + np.asarray(y, float)) / 2.0
    elif space.upper() == "HYPERBOLIC":
        dist = hyperbolic_distance
        if m is None:
            m = hyperbolic_midpoint(x, y, samples=0).m
    else:
        raise ValueError(f"unknown space {space!r}")
    return 0.5 * (dist(z, x) ** 2 + dist(z, y) ** 2) - 0.25 * dist(x, y) ** 2 - dist(z, m) ** 2


def random_hyperbolic_point(n: int, rng: np.random.Generator, spread: float = 3.0) -> np.ndarray:
    """Horizontal part uniform in a box, height log-uniform in [e^-spread, e^spread]."""
    u = rng.uniform(-spread, spread, size=n - 1)
    return np.concatenate((u, [float(np.exp(rng.uniform(-spread, spread)))]))


# --------------------------------------------------------------- mediators


@dataclass(frozen=True)
class Hyperplane:
    """A totally geodesic hyperplane of H_n.

    ``kind`` is "vertical" (points with normal . u = offset, u the horizontal
    part) or "sphere" (half-sphere of the given radius centred on the boundary).
    """

    kind: str
    normal: np.ndarray | None = None
    offset: float = 0.0
    center: np.ndarray | None = None
    radius: float = 0.0

    def residual(self, x: Sequence[float]) -> float:
        p = as_point(x)
        if self.kind == "vertical":
            return float(np.dot(self.normal, p[:-1]) - self.offset)
        return float(np.linalg.norm(p - np.append(self.center, 0.0)) - self.radius)

    def sample(self, count: int, rng: np.random.Generator) -> list[np.ndarray]:
        """Points on the hyperplane."""
        n = (self.normal if self.kind == "vertical" else self.center).size + 1
        out = []
        for _ in range(count):
            if self.kind == "vertical":
                u = rng.normal(size=n - 1)
                u += (self.offset - np.dot(self.normal, u)) / np.dot(self.normal, self.normal) * self.normal
                out.append(np.append(u, np.exp(rng.uniform(-2, 2))))
            else:
                v = rng.normal(size=n)
                v[-1] = abs(v[-1]) + 1e-3
                v /= np.linalg.norm(v)
                out.append(np.append(self.center, 0.0) + self.radius * v)
        return out


def mediator_hn(a: Sequence[float], b: Sequence[float], tol: float = 1e-12) -> Hyperplane:
    """Points equidistant from a and b: b_n |x - a|^2 = a_n |x - b|^2."""
    p, q = _pair(a, b)
    if np.allclose(p, q, rtol=0, atol=tol):
        raise EqualPoints(f"mediator of {p} with itself", payload=p.tolist())
    an, bn = p[-1], q[-1]
    if abs(an - bn) <= tol * max(1.0, an, bn):
        normal = q[:-1] - p[:-1]
        offset = (np.dot(q[:-1], q[:-1]) - np.dot(p[:-1], p[:-1])) / 2.0
        return Hyperplane("vertical", normal=normal, offset=float(offset))
    center = (bn * p - an * q) / (bn - an)
    r2 = float(np.dot(center, center)) - (bn * np.dot(p, p) - an * np.dot(q, q)) / (bn - an)
    return Hyperplane("sphere", center=center[:-1], radius=float(np.sqrt(r2)))


# ------------------------------------------------------- lines of H_2


@dataclass(frozen=True)
class Geodesic:
    """A line of H_2: vertical half-line over ``foot`` or half-circle on the real axis."""

    kind: str
    foot: float = 0.0
    center: float = 0.0
    radius: float = 1.0

    @classmethod
    def from_json(cls, data: dict) -> "Geodesic":
        kind = data["kind"]
        if kind == "vertical":
            foot = data.get("foot", [0.0])
            return cls("vertical", foot=float(foot[0] if isinstance(foot, list) else foot))
        if kind == "circle":
            c = data["center"]
            return cls("circle", center=float(c[0] if isinstance(c, list) else c), radius=float(data["radius"]))
        raise ValueError(f"unknown geodesic kind {kind!r}")

    def normalizer(self) -> np.ndarray:
        """SL(2, R) matrix sending this line onto the imaginary axis."""
        if self.kind == "vertical":
            return np.array([[1.0, -self.foot], [0.0, 1.0]])
        lo, hi = self.center - self.radius, self.center + self.radius
        M = np.array([[1.0, -lo], [-1.0, hi]])
        return M / np.sqrt(2.0 * self.radius)

    def point(self, s: float) -> np.ndarray:
        """Arc-length parametrization, s = 0 at the top (or at height 1)."""
        w = complex(0.0, np.exp(s))
        z = mobius_apply(np.linalg.inv(self.normalizer()), w)
        return np.array([z.real, z.imag])


def mobius_apply(M: np.ndarray, z: complex) -> complex:
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    return (a * z + b) / (c * z + d)


def project_to_line_h2(x: Sequence[float], line: Geodesic | dict) -> np.ndarray:
    """Closest point of a line of H_2; on the imaginary axis a + bi goes to i sqrt(a^2 + b^2)."""
    if isinstance(line, dict):
        line = Geodesic.from_json(line)
    p = as_point(x)
    if p.size != 2:
        raise DimensionMismatch("projection onto a line is implemented in H_2")
    N = line.normalizer()
    w = mobius_apply(N, complex(p[0], p[1]))
    foot = complex(0.0, abs(w))
    z = mobius_apply(np.linalg.inv(N), foot)
    return np.array([z.real, z.imag])


# ------------------------------------------- lifting Euclidean isometries


def lift_to_half_space(f: Callable[[np.ndarray], np.ndarray]) -> Callable[[np.ndarray], np.ndarray]:
    """F(x, t) = (f(x), t): a Euclidean isometry of R^n acting on H_{n+1}.

    Such an F is a hyperbolic isometry with Fix F = Fix f x (0, inf).
    """

    def F(p: Sequence[float]) -> np.ndarray:
        q = as_point(p)
        return np.append(np.asarray(f(q[:-1]), float), q[-1])

    return F

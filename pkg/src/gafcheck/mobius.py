"""Unimodular 2x2 matrices as isometries of H_2 and H_3, and Moebius maps of the real line.

A real matrix [[a, b], [c, d]] of determinant 1 acts on the upper half-plane
by z -> (az + b)/(cz + d); a complex one acts on the upper half-space
{z + tj : t > 0}. Up to sign the trace decides everything: elliptic elements
(real trace in (-2, 2)) fix a point of the space, parabolic and hyperbolic
ones fix none.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import NotElliptic, NotUnimodular
from .scalars import QuadraticNumber
from .sl2z import A, B, AuditReport, word_products

ELLIPTIC = "ELLIPTIC"
PARABOLIC = "PARABOLIC"
HYPERBOLIC = "HYPERBOLIC"
IDENTITY = "IDENTITY"

DET_TOL = 1e-12
TRACE_TOL = 1e-9


@dataclass(frozen=True)
class Sl2Element:
    a: complex
    b: complex
    c: complex
    d: complex

    @classmethod
    def from_matrix(cls, M, tol: float = DET_TOL) -> "Sl2Element":
        M = np.asarray(M)
        el = cls(M[0, 0], M[0, 1], M[1, 0], M[1, 1])
        if abs(el.det() - 1) > tol * max(1.0, float(np.max(np.abs(M))) ** 2):
            raise NotUnimodular(f"determinant {el.det()} is not 1", payload=M.tolist())
        return el

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def trace(self) -> complex:
        return self.a + self.d

    def is_real(self) -> bool:
        return all(abs(complex(x).imag) == 0 for x in (self.a, self.b, self.c, self.d))

    def __matmul__(self, other: "Sl2Element") -> "Sl2Element":
        M = self.matrix @ other.matrix
        return Sl2Element(M[0, 0], M[0, 1], M[1, 0], M[1, 1])

    def inverse(self) -> "Sl2Element":
        return Sl2Element(self.d, -self.b, -self.c, self.a)

    def is_identity(self, tol: float = TRACE_TOL) -> bool:
        """True for +-I (both act trivially)."""
        M = self.matrix
        return any(np.max(np.abs(M - s * np.eye(2))) <= tol for s in (1, -1))

    def __call__(self, z: complex) -> complex:
        """Action on C u {inf}."""
        if cmath.isinf(z):
            return complex("inf") if self.c == 0 else complex(self.a / self.c)
        den = self.c * z + self.d
        return complex("inf") if den == 0 else complex((self.a * z + self.b) / den)

    def act_h3(self, p: Sequence[float]) -> np.ndarray:
        """Action on the half-space point p = (x, y, t), identified with x + iy + tj."""
        z, t = complex(p[0], p[1]), float(p[2])
        a, b, c, d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        cz_d = c * z + d
        den = abs(cz_d) ** 2 + abs(c) ** 2 * t * t
        w = ((a * z + b) * cz_d.conjugate() + a * c.conjugate() * t * t) / den
        return np.array([w.real, w.imag, t / den])


def as_sl2(M) -> Sl2Element:
    return M if isinstance(M, Sl2Element) else Sl2Element.from_matrix(M)


@dataclass(frozen=True)
class ClassifiedIsometry:
    element: Sl2Element
    klass: str
    fixed_point: np.ndarray | None = None
    boundary_fixed: tuple = ()
    angle: float | None = None

    def to_json(self) -> dict:
        return {
            "class": self.klass,
            "trace": complex(self.element.trace()).real,
            "fixed_point": None if self.fixed_point is None else [float(x) for x in self.fixed_point],
            "boundary_fixed": [str(x) if isinstance(x, str) else float(x) for x in self.boundary_fixed],
            "angle": self.angle,
        }


def _real_roots(a: float, b: float, c: float, d: float) -> tuple:
    """Fixed points on R u {inf} of a real Moebius map: c x^2 + (d - a) x - b = 0."""
    if abs(c) <= TRACE_TOL:
        if abs(d - a) <= TRACE_TOL:
            return ("inf",)
        return (b / (d - a), "inf")
    disc = (d - a) ** 2 + 4 * b * c
    if disc < -TRACE_TOL:
        return ()
    root = math.sqrt(max(disc, 0.0))
    xs = sorted({(a - d - root) / (2 * c), (a - d + root) / (2 * c)})
    return tuple(xs)


def classify_h2(M, tol: float = TRACE_TOL) -> ClassifiedIsometry:
    """Trace class of a real unimodular matrix acting on H_2.

    The elliptic fixed point is the root of c z^2 + (d - a) z - b = 0 in the
    upper half-plane. The angle is 2 arg(c z0 + d) in [0, 2 pi), so that
    ``rotation_about(x, theta)`` has angle theta.
    """
    h = as_sl2(M)
    if not h.is_real():
        raise ValueError("classify_h2 needs a real matrix")
    a, b, c, d = (float(complex(x).real) for x in (h.a, h.b, h.c, h.d))
    if h.is_identity(tol):
        return ClassifiedIsometry(h, IDENTITY)
    tr = a + d
    if abs(tr) < 2 - tol:
        root = math.sqrt(4 - tr * tr)
        z0 = complex(a - d, root) / (2 * c)
        if z0.imag < 0:
            z0 = z0.conjugate()
        angle = (2 * cmath.phase(c * z0 + d)) % (2 * math.pi)
        return ClassifiedIsometry(h, ELLIPTIC, np.array([z0.real, z0.imag]), (), angle)
    klass = PARABOLIC if abs(abs(tr) - 2) <= tol else HYPERBOLIC
    return ClassifiedIsometry(h, klass, None, _real_roots(a, b, c, d))


def rotation_about(x_scale: float, theta: float) -> Sl2Element:
    """Rotation of angle theta about the point i * x_scale of H_2."""
    if not x_scale > 0:
        raise ValueError("rotation centre must lie in the upper half-plane")
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return Sl2Element(c, -x_scale * s, s / x_scale, c)


def commutator_trace_closed_form(theta: float, x_scale: float) -> float:
    t = theta / 2
    return 2 * math.cos(t) ** 2 + (x_scale + 1 / x_scale) * math.sin(t) ** 2


def commutator_trace_h2(theta: float, x_scale: float) -> float:
    """Trace of f h, f the rotation of angle theta at i and h the rotation of angle -theta at i x.

    The product is checked against 2 cos^2 t + (x + 1/x) sin^2 t with t = theta/2.
    """
    if x_scale == 1:
        raise ValueError("the two centres must differ (x != 1)")
    if math.isclose(math.remainder(theta, 2 * math.pi), 0.0, abs_tol=1e-15):
        raise ValueError("theta must not be a multiple of 2 pi")
    f = rotation_about(1.0, theta)
    h = rotation_about(x_scale, -theta)
    tr = float(complex((f @ h).trace()).real)
    closed = commutator_trace_closed_form(theta, x_scale)
    if abs(tr - closed) > 1e-9 * max(1.0, abs(closed)):
        raise ArithmeticError(f"product trace {tr} differs from closed form {closed}")
    return tr


# ------------------------------------------------ Moebius maps of R u {inf}

ALL = "ALL"


@dataclass(frozen=True)
class LineFixedPoints:
    points: tuple  # floats and/or "inf", or ALL
    discriminant: object = None

    def __len__(self):
        return 0 if self.points == ALL else len(self.points)


def mobius_line_fixed_points(M) -> LineFixedPoints:
    """Fixed points on R u {inf} of x -> (ax + b)/(cx + d), ad - bc = +-1.

    Integer entries give an exact discriminant and exact roots in Q(sqrt D).
    """
    (a, b), (c, d) = ((M[0][0], M[0][1]), (M[1][0], M[1][1])) if not hasattr(M, "rows") else M.rows
    if b == 0 and c == 0 and a == d:
        return LineFixedPoints(ALL)
    disc = (d - a) ** 2 + 4 * b * c
    exact = all(isinstance(x, int) for x in (a, b, c, d))
    if c == 0:
        return LineFixedPoints((b / (d - a), "inf") if a != d else ("inf",), disc)
    if disc < 0:
        return LineFixedPoints((), disc)
    if exact and disc > 0 and math.isqrt(disc) ** 2 != disc:
        r = QuadraticNumber(0, 1, disc)
        roots = sorted([(-r + (a - d)) * Fraction(1, 2 * c), (r + (a - d)) * Fraction(1, 2 * c)], key=float)
        return LineFixedPoints(tuple(roots), disc)
    root = math.sqrt(disc)
    xs = sorted({(a - d - root) / (2 * c), (a - d + root) / (2 * c)})
    return LineFixedPoints(tuple(xs), disc)


def moebius_eccentric_audit(max_syllables: int = 6, max_exponent: int = 3) -> AuditReport:
    """Words in f: x -> 1/(-x + 3) and g: x -> (-x - 1)/(5x + 4) all fix a point of R.

    Every checked word has trace t with |t| >= 3, so the discriminant t^2 - 4 of
    its fixed-point equation is at least 5; the generators' fixed sets are
    disjoint, so <f, g> is eccentric on R u {inf}.
    """
    report = AuditReport("moebius-line", details={"max_syllables": max_syllables, "max_exponent": max_exponent})
    fix_f = mobius_line_fixed_points(A)
    fix_g = mobius_line_fixed_points(B)
    disjoint = not set(map(str, fix_f.points)) & set(map(str, fix_g.points))
    report.details["fix_f"] = [str(x) for x in fix_f.points]
    report.details["fix_g"] = [str(x) for x in fix_g.points]
    if not disjoint:
        report.violations.append("generator fixed sets intersect")
    min_disc = None
    for w, M in word_products(max_syllables, max_exponent):
        (a, b), (c, d) = M.rows
        # c x^2 + (d - a) x - b = 0 has two real roots iff this is positive
        disc = (a + d) ** 2 - 4
        report.checked += 1
        if disc < 5:
            report.violations.append(str(w))
        min_disc = disc if min_disc is None else min(min_disc, disc)
    report.details["min_discriminant"] = min_disc
    return report


# --------------------------------------------------------------- H_3 axes


def has_fixed_point_h3(h: Sl2Element, tol: float = TRACE_TOL) -> bool:
    """Identity, or trace real and in (-2, 2)."""
    if h.is_identity(tol):
        return True
    tr = complex(h.trace())
    return abs(tr.imag) <= tol and abs(tr.real) < 2 - tol


def boundary_fixed_points(h: Sl2Element, tol: float = TRACE_TOL) -> tuple[complex, complex]:
    """The two fixed points in C u {inf} of a non-parabolic, non-identity element."""
    a, b, c, d = (complex(x) for x in (h.a, h.b, h.c, h.d))
    if abs(c) <= tol:
        return (b / (d - a), complex("inf"))
    disc = cmath.sqrt((d - a) ** 2 + 4 * b * c)
    return ((a - d - disc) / (2 * c), (a - d + disc) / (2 * c))


def _normalize(p1: complex, p2: complex):
    """Moebius map (as an Sl2Element) sending p1 -> 0 and p2 -> inf."""
    if cmath.isinf(p2):
        return Sl2Element(1, -p1, 0, 1)
    if cmath.isinf(p1):
        return Sl2Element(0, 1, -1, p2)
    k = cmath.sqrt(p1 - p2)
    return Sl2Element(1 / k, -p1 / k, 1 / k, -p2 / k)


@dataclass(frozen=True)
class H3Witness:
    kind: str  # "COMMON_POINT" or "WITNESS"
    point: np.ndarray | None = None
    word: str | None = None
    element: Sl2Element | None = None
    trace: complex | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.point is not None:
            out["point"] = [float(x) for x in self.point]
        if self.word is not None:
            out["word"] = self.word
            out["trace"] = [complex(self.trace).real, complex(self.trace).imag]
        return out


def axes_intersection(f: Sl2Element, g: Sl2Element, tol: float = 1e-9) -> np.ndarray | None:
    """A common point of the rotation axes of two elliptic elements, or None.

    After sending the ends of f's axis to 0 and inf, g's axis meets it iff its
    ends w1, w2 are on opposite rays through 0 (w1 / w2 real and negative); the
    meeting point is then at height sqrt(|w1 w2|) above 0.
    """
    p1, p2 = boundary_fixed_points(f)
    N = _normalize(p1, p2)
    q1, q2 = boundary_fixed_points(g)
    w1, w2 = N(q1), N(q2)
    if cmath.isinf(w1) or cmath.isinf(w2) or abs(w1) <= tol or abs(w2) <= tol:
        ws = {("inf" if cmath.isinf(w) else ("0" if abs(w) <= tol else "x")) for w in (w1, w2)}
        if ws == {"inf", "0"}:
            return N.inverse().act_h3((0.0, 0.0, 1.0))
        return None
    ratio = w1 / w2
    if abs(ratio.imag) > tol * max(1.0, abs(ratio)) or ratio.real >= 0:
        return None
    height = math.sqrt(abs(w1) * abs(w2))
    return N.inverse().act_h3((0.0, 0.0, height))


def eccentricity_witness_h3(f, g, tol: float = TRACE_TOL) -> H3Witness:
    """COMMON_POINT if the axes of f and g meet, else the first of f^-1 g, [g, f], g f g f^-1 without fixed points."""
    f, g = as_sl2(f), as_sl2(g)
    for name, h in (("f", f), ("g", g)):
        if h.is_identity(tol):
            continue
        if not has_fixed_point_h3(h, tol):
            raise NotElliptic(f"{name} has trace {h.trace()}, not elliptic", payload=name)
    if f.is_identity(tol) or g.is_identity(tol):
        other = g if f.is_identity(tol) else f
        if other.is_identity(tol):
            return H3Witness("COMMON_POINT", np.array([0.0, 0.0, 1.0]))
        p1, p2 = boundary_fixed_points(other)
        return H3Witness("COMMON_POINT", _normalize(p1, p2).inverse().act_h3((0.0, 0.0, 1.0)))
    point = axes_intersection(f, g)
    if point is not None:
        return H3Witness("COMMON_POINT", point)
    fi = f.inverse()
    candidates = (
        ("f^-1 g", fi @ g),
        ("[g,f]", g @ f @ g.inverse() @ fi),
        ("g f g f^-1", g @ f @ g @ fi),
    )
    for word, h in candidates:
        if not has_fixed_point_h3(h, tol):
            return H3Witness("WITNESS", word=word, element=h, trace=complex(h.trace()))
    raise ArithmeticError("no candidate without fixed points; axes test and traces disagree")


def vertical_rotation(center: complex, theta: float) -> Sl2Element:
    """Rotation of angle theta about the vertical axis over ``center``: z -> center + e^{i theta}(z - center)."""
    u = cmath.exp(0.5j * theta)
    return Sl2Element(u, center * (1 / u - u), 0, 1 / u)

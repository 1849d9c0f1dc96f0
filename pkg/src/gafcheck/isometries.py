"""Rigid motions of R^n: fixed flats, witnesses of empty fixed sets, and the
constructive common-fixed-point procedures for Abelian and cyclic-by-fixed groups.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .circumcenter import EUCLIDEAN, HYPERBOLIC, circumcenter
from .errors import NotCommuting, NotGaf, NotInvariant, NotRotation, SubspaceNotInvariant
from .matrices import AffineMap, affine_fixed_point

MATRIX_TOL = 1e-12
TOL = 1e-9
RANK_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RigidMotion:
    """x -> R x + t with R orthogonal."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        R = np.asarray(self.rotation, float)
        t = np.asarray(self.translation, float).reshape(-1)
        if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] != t.size:
            raise ValueError(f"shapes {R.shape} and {t.shape} do not describe a motion")
        if np.max(np.abs(R.T @ R - np.eye(R.shape[0]))) > 1e-10:
            raise ValueError("linear part is not orthogonal")
        object.__setattr__(self, "rotation", R)
        object.__setattr__(self, "translation", t)

    @classmethod
    def identity(cls, n: int) -> "RigidMotion":
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def linear(cls, R) -> "RigidMotion":
        R = np.asarray(R, float)
        return cls(R, np.zeros(R.shape[0]))

    @classmethod
    def translation_by(cls, t) -> "RigidMotion":
        t = np.asarray(t, float)
        return cls(np.eye(t.size), t)

    @property
    def dim(self) -> int:
        return self.translation.size

    def det(self) -> float:
        return float(np.linalg.det(self.rotation))

    def __call__(self, x) -> np.ndarray:
        return self.rotation @ np.asarray(x, float) + self.translation

    def __matmul__(self, other: "RigidMotion") -> "RigidMotion":
        return RigidMotion(self.rotation @ other.rotation, self.rotation @ other.translation + self.translation)

    __mul__ = __matmul__

    def inverse(self) -> "RigidMotion":
        Rt = self.rotation.T
        return RigidMotion(Rt, -Rt @ self.translation)

    def is_identity(self, tol: float = TOL) -> bool:
        return np.max(np.abs(self.rotation - np.eye(self.dim))) <= tol and np.max(np.abs(self.translation)) <= tol

    def is_translation(self, tol: float = 1e-10) -> bool:
        return np.max(np.abs(self.rotation - np.eye(self.dim))) <= tol

    def close_to(self, other: "RigidMotion", tol: float = TOL) -> bool:
        return (
            np.max(np.abs(self.rotation - other.rotation)) <= tol
            and np.max(np.abs(self.translation - other.translation)) <= tol
        )

    def to_json(self) -> dict:
        return {"rotation": self.rotation.tolist(), "translation": self.translation.tolist()}


def commutator(f: RigidMotion, g: RigidMotion) -> RigidMotion:
    """[f, g] = f g f^-1 g^-1."""
    return f @ g @ f.inverse() @ g.inverse()


def rotation_matrix(axis: Sequence[float], angle: float) -> np.ndarray:
    """Rotation of R^3 by ``angle`` about the unit vector along ``axis`` (Rodrigues)."""
    k = np.asarray(axis, float)
    k = k / np.linalg.norm(k)
    K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
    return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * K @ K


def rotation_about_line(point: Sequence[float], direction: Sequence[float], angle: float) -> RigidMotion:
    R = rotation_matrix(direction, angle)
    p = np.asarray(point, float)
    return RigidMotion(R, p - R @ p)


def rotation_2d(center: Sequence[float], angle: float) -> RigidMotion:
    c, s = np.cos(angle), np.sin(angle)
    R = np.array([[c, -s], [s, c]])
    p = np.asarray(center, float)
    return RigidMotion(R, p - R @ p)


# ------------------------------------------------------------------ flats


@dataclass(frozen=True, eq=False)
class Flat:
    """point + span(basis); ``basis`` has orthonormal columns (possibly none)."""

    point: np.ndarray
    basis: np.ndarray

    @classmethod
    def whole(cls, n: int) -> "Flat":
        return cls(np.zeros(n), np.eye(n))

    @classmethod
    def through(cls, point, directions) -> "Flat":
        """Flat through ``point`` spanned by ``directions``, a sequence of vectors."""
        p = np.asarray(point, float)
        D = np.asarray(directions, float).reshape(-1, p.size).T
        return cls(p, _orthonormal(D))

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def project(self, x) -> np.ndarray:
        v = np.asarray(x, float) - self.point
        return self.point + self.basis @ (self.basis.T @ v)

    def distance(self, x) -> float:
        return float(np.linalg.norm(np.asarray(x, float) - self.project(x)))

    def contains(self, x, tol: float = TOL) -> bool:
        return self.distance(x) <= tol

    def canonical_point(self) -> np.ndarray:
        """The point of the flat closest to the origin."""
        return self.project(np.zeros_like(self.point))

    def to_json(self) -> dict:
        return {"point": self.canonical_point().tolist(), "dimension": self.dim, "basis": self.basis.T.tolist()}


def _orthonormal(D: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    if D.size == 0 or D.shape[1] == 0:
        return np.zeros((D.shape[0], 0))
    U, s, _ = np.linalg.svd(D, full_matrices=False)
    return U[:, s > tol * max(1.0, s[0] if s.size else 1.0)]


def _null_space(M: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of ker M; singular values below ``tol`` count as zero."""
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n)
    _, s, Vt = np.linalg.svd(M)
    rank = int(np.sum(s > tol))
    return Vt[rank:].T


def _lstsq(M: np.ndarray, rhs: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Minimum-norm least-squares solution, discarding singular values below ``tol``."""
    U, s, Vt = np.linalg.svd(M, full_matrices=False)
    keep = s > tol
    return Vt[keep].T @ ((U[:, keep].T @ rhs) / s[keep])


def fixed_flat(f: RigidMotion, tol: float = TOL) -> Flat | None:
    """Fix f as a flat, or None when it is empty.

    Solves (I - R) x = t in the least-squares sense and accepts the solution when
    the residual is below ``tol``; the kernel of I - R gives the directions.
    """
    n = f.dim
    M = np.eye(n) - f.rotation
    # rotation parts carry round-off of order 1e-16; those singular values are zero
    x = _lstsq(M, f.translation)
    if np.linalg.norm(M @ x - f.translation) > tol:
        return None
    return Flat(x, _null_space(M))


def exact_fixed_set(f: AffineMap):
    """Exact counterpart of ``fixed_flat`` for affine maps with rational entries."""
    return affine_fixed_point(f)


def intersect_flats(F: Flat, G: Flat, tol: float = TOL) -> Flat | None:
    """F ∩ G: solve F.point + F.basis a = G.point + G.basis b."""
    n = F.point.size
    M = np.hstack([F.basis, -G.basis])
    rhs = G.point - F.point
    if M.shape[1] == 0:
        return Flat(F.point, np.zeros((n, 0))) if np.linalg.norm(rhs) <= tol else None
    sol = _lstsq(M, rhs)
    if np.linalg.norm(M @ sol - rhs) > tol:
        return None
    point = F.point + F.basis @ sol[: F.dim]
    # directions common to both: F.basis a with (I - P_G) F.basis a = 0
    PG = G.basis @ G.basis.T
    K = _null_space((np.eye(n) - PG) @ F.basis)
    return Flat(point, _orthonormal(F.basis @ K))


def restrict_fixed(f: RigidMotion, F: Flat, tol: float = TOL) -> Flat | None:
    """Fix f ∩ F."""
    Ff = fixed_flat(f, tol)
    return None if Ff is None else intersect_flats(F, Ff, tol)


# ---------------------------------------------------------------- witnesses


COMMON_POINT = "COMMON_POINT"
WITNESS = "WITNESS"


@dataclass(frozen=True, eq=False)
class R3Witness:
    kind: str
    point: np.ndarray | None = None
    word: str | None = None
    element: RigidMotion | None = None

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.point is not None:
            out["point"] = self.point.tolist()
        if self.element is not None:
            out["word"] = self.word
            out["element"] = self.element.to_json()
        return out


def eccentricity_witness_r3(f: RigidMotion, g: RigidMotion, tol: float = TOL) -> R3Witness:
    """COMMON_POINT if Fix f ∩ Fix g is nonempty, else f^-1 g or [f, g], whichever has no fixed point."""
    for name, h in (("f", f), ("g", g)):
        if h.dim != 3 or abs(h.det() - 1) > 1e-9:
            raise NotRotation(f"{name} is not an orientation-preserving motion of R^3", payload=name)
        if fixed_flat(h, tol) is None:
            raise NotRotation(f"{name} has no fixed point", payload=name)
    common = intersect_flats(fixed_flat(f, tol), fixed_flat(g, tol), tol)
    if common is not None:
        return R3Witness(COMMON_POINT, point=common.canonical_point())
    for word, h in (("f^-1 g", f.inverse() @ g), ("[f,g]", commutator(f, g))):
        if fixed_flat(h, tol) is None:
            return R3Witness(WITNESS, word=word, element=h)
    raise ArithmeticError("fixed sets are disjoint but both candidates have fixed points")


# ------------------------------------------------- constructive fixed points


def _check_commuting(gens: Sequence[RigidMotion], tol: float) -> None:
    for i, f in enumerate(gens):
        for g in gens[i + 1 :]:
            if not (f @ g).close_to(g @ f, tol):
                raise NotCommuting("generators do not commute", payload=(f.to_json(), g.to_json()))


def abelian_gag_solver(gens: Sequence[RigidMotion], tol: float = TOL, dim: int | None = None) -> np.ndarray:
    """Common fixed point of commuting motions that each fix a point.

    Walks the generators keeping F, the common fixed flat of those seen so
    far. The next generator g commutes with them, so g(F) = F; projecting a
    fixed point of g onto F gives a fixed point of g inside F, and F shrinks
    to Fix g ∩ F. The answer is the point of the final F nearest the origin.
    """
    gens = list(gens)
    n = gens[0].dim if gens else dim
    if n is None:
        raise ValueError("dimension needed for an empty generating set")
    _check_commuting(gens, max(tol, 1e-8))
    F = Flat.whole(n)
    for k, g in enumerate(gens):
        if g.is_identity(tol):
            continue
        Fg = fixed_flat(g, tol)
        if Fg is None:
            raise NotGaf(f"generator {k} has no fixed point", payload=g.to_json())
        y = F.project(Fg.point)
        if np.linalg.norm(g(y) - y) > 1e-7:
            raise NotGaf(f"generator {k} does not preserve the common fixed flat", payload=g.to_json())
        F = intersect_flats(F, Fg, 1e-7)
        if F is None:
            raise NotGaf("empty common fixed flat", payload=g.to_json())
    p = F.canonical_point()
    worst = max((float(np.linalg.norm(g(p) - p)) for g in gens), default=0.0)
    if worst > 1e-8:
        raise NotGaf(f"result moved by {worst}", payload=p.tolist())
    return p


def cyclic_quotient_gag(epsilon: RigidMotion, fix_H: Flat, tol: float = TOL) -> np.ndarray:
    """pi_F(x) for a fixed point x of epsilon and an epsilon-invariant flat F."""
    eps_point = epsilon(fix_H.point)
    moved_dirs = epsilon.rotation @ fix_H.basis
    invariant = fix_H.contains(eps_point, tol) and (
        fix_H.dim == 0 or np.max(np.abs(moved_dirs - fix_H.basis @ (fix_H.basis.T @ moved_dirs))) <= tol
    )
    if not invariant:
        raise SubspaceNotInvariant("epsilon does not map the flat onto itself")
    Fe = fixed_flat(epsilon, tol)
    if Fe is None:
        raise NotGaf("epsilon has no fixed point", payload=epsilon.to_json())
    p = fix_H.project(Fe.canonical_point())
    if np.linalg.norm(epsilon(p) - p) > tol:
        raise ArithmeticError("projected point is not fixed")
    return p


def fixed_point_from_invariant_set(
    gens: Sequence[Callable], invariant_set: Sequence[Sequence[float]], space: str = EUCLIDEAN, tol: float = TOL
) -> np.ndarray:
    """Centre of a finite set permuted by every generator; it is then fixed by all of them."""
    pts = np.array([np.asarray(p, float) for p in invariant_set])
    for k, g in enumerate(gens):
        for p in pts:
            img = np.asarray(g(p), float)
            if np.min(np.linalg.norm(pts - img, axis=1)) > tol:
                raise NotInvariant(f"generator {k} moves {p.tolist()} off the set", payload=k)
    result = circumcenter(pts, space)
    c = result.center
    for k, g in enumerate(gens):
        if np.linalg.norm(np.asarray(g(c), float) - c) > max(tol, 1e-8):
            raise ArithmeticError(f"centre moved by generator {k}")
    return c


def orbit(gens: Sequence[RigidMotion], x, cap: int = 10_000, tol: float = TOL) -> np.ndarray:
    """Orbit of x under the group generated by ``gens`` (finite groups only)."""
    pts = [np.asarray(x, float)]
    frontier = list(pts)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g(p)
                if min(np.linalg.norm(q - r) for r in pts) > tol:
                    pts.append(q)
                    nxt.append(q)
                    if len(pts) > cap:
                        raise ValueError("orbit exceeds cap")
        frontier = nxt
    return np.array(pts)


__all__ = [
    "EUCLIDEAN",
    "HYPERBOLIC",
    "RigidMotion",
    "Flat",
    "commutator",
    "rotation_matrix",
    "rotation_about_line",
    "rotation_2d",
    "fixed_flat",
    "exact_fixed_set",
    "intersect_flats",
    "restrict_fixed",
    "eccentricity_witness_r3",
    "abelian_gag_solver",
    "cyclic_quotient_gag",
    "fixed_point_from_invariant_set",
    "orbit",
    "R3Witness",
    "COMMON_POINT",
    "WITNESS",
]

"""Symbolic certificate that words in sigma, tau of SO(4) never have eigenvalue 1.

Entries live in Z[c] + s Z[c] with c = cos(theta), s = sin(theta) and
s^2 = 1 - c^2; theta itself is never evaluated. A word sigma^... tau^... has
the block form

    [[P, -Q, -R, -S],
     [Q,  P, -S,  R],
     [R,  S,  P, -Q],
     [S, -R,  Q,  P]]

with P, R in Z[c] and Q, S in s Z[c]. Its characteristic polynomial is
l^4 - 4P l^3 + (4P^2 + 2) l^2 - 4P l + 1, so 1 is an eigenvalue only if
4(P - 1)^2 = 0, impossible when P has positive degree in c (theta is taken
with transcendental cosine).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import BadWordShape
from .sl2z import SignedWord, words

Poly = tuple  # coefficients in c, constant term first, no trailing zeros


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def pneg(p: Poly) -> Poly:
    return tuple(-x for x in p)


def pmul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return _trim(out)


def pdeg(p: Poly) -> int:
    return len(p) - 1


ONE_MINUS_C2: Poly = _trim((1, 0, -1))


@dataclass(frozen=True)
class SymbolicEntry:
    """poly(c) + s * sin_poly(c), integer coefficients."""

    poly: Poly = ()
    sin_poly: Poly = ()

    @classmethod
    def const(cls, x) -> "SymbolicEntry":
        return cls(_trim((x,)))

    @property
    def sin_factor(self) -> bool:
        """True when the entry is s times a polynomial in c."""
        return not self.poly and bool(self.sin_poly)

    def is_zero(self) -> bool:
        return not self.poly and not self.sin_poly

    def __add__(self, other: "SymbolicEntry") -> "SymbolicEntry":
        return SymbolicEntry(padd(self.poly, other.poly), padd(self.sin_poly, other.sin_poly))

    def __neg__(self) -> "SymbolicEntry":
        return SymbolicEntry(pneg(self.poly), pneg(self.sin_poly))

    def __sub__(self, other: "SymbolicEntry") -> "SymbolicEntry":
        return self + (-other)

    def __mul__(self, other: "SymbolicEntry") -> "SymbolicEntry":
        a = padd(pmul(self.poly, other.poly), pmul(ONE_MINUS_C2, pmul(self.sin_poly, other.sin_poly)))
        b = padd(pmul(self.poly, other.sin_poly), pmul(self.sin_poly, other.poly))
        return SymbolicEntry(a, b)

    def scale(self, k) -> "SymbolicEntry":
        return SymbolicEntry(_trim(k * x for x in self.poly), _trim(k * x for x in self.sin_poly))

    def exact_divide(self, k: int) -> "SymbolicEntry":
        """Divide every coefficient by the integer k, which must divide them all."""
        coeffs = self.poly + self.sin_poly
        if any(x % k for x in coeffs):
            raise ArithmeticError(f"{self} is not divisible by {k}")
        return SymbolicEntry(tuple(x // k for x in self.poly), tuple(x // k for x in self.sin_poly))

    def __str__(self) -> str:
        def show(p):
            return " + ".join(f"{x}c^{i}" for i, x in enumerate(p) if x) or "0"

        if self.sin_poly:
            return f"({show(self.poly)}) + s({show(self.sin_poly)})"
        return show(self.poly)


ZERO = SymbolicEntry()
ONE = SymbolicEntry.const(1)
C = SymbolicEntry((0, 1))
S = SymbolicEntry((), (1,))

SymMatrix = tuple  # 4x4 tuple of tuples of SymbolicEntry


def smul(X: SymMatrix, Y: SymMatrix) -> SymMatrix:
    n = len(X)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc = ZERO
            for k in range(n):
                if not X[i][k].is_zero() and not Y[k][j].is_zero():
                    acc = acc + X[i][k] * Y[k][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def sidentity(n: int = 4) -> SymMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def _rotation_blocks(sign: int) -> SymMatrix:
    s = S if sign > 0 else -S
    return (
        (C, -s, ZERO, ZERO),
        (s, C, ZERO, ZERO),
        (ZERO, ZERO, C, -s),
        (ZERO, ZERO, s, C),
    )


def _tau(sign: int) -> SymMatrix:
    s = S if sign > 0 else -S
    return (
        (C, ZERO, ZERO, -s),
        (ZERO, C, -s, ZERO),
        (ZERO, s, C, ZERO),
        (s, ZERO, ZERO, C),
    )


SIGMA = _rotation_blocks(1)
SIGMA_INV = _rotation_blocks(-1)
TAU = _tau(1)
TAU_INV = _tau(-1)
LETTERS = {"σ": (SIGMA, SIGMA_INV), "τ": (TAU, TAU_INV)}
ALIASES = {"sigma": "σ", "s": "σ", "σ": "σ", "tau": "τ", "t": "τ", "τ": "τ"}


def symbolic_word_matrix(w: SignedWord) -> SymMatrix:
    steps = []
    for g, e in w.letters:
        steps.extend([(ALIASES[g], e > 0)] * abs(e))
    return _prefix_product(tuple(steps))


@lru_cache(maxsize=4096)
def _prefix_product(steps: tuple) -> SymMatrix:
    if not steps:
        return sidentity()
    g, positive = steps[-1]
    pos, neg = LETTERS[g]
    return smul(_prefix_product(steps[:-1]), pos if positive else neg)


def charpoly(M: SymMatrix) -> list[SymbolicEntry]:
    """Coefficients of det(l I - M), leading coefficient first (Faddeev-LeVerrier)."""
    n = len(M)
    coeffs = [ONE]
    Mk = sidentity(n)
    for k in range(1, n + 1):
        AM = smul(M, Mk)
        tr = ZERO
        for i in range(n):
            tr = tr + AM[i][i]
        ck = (-tr).exact_divide(k)
        coeffs.append(ck)
        Mk = tuple(tuple(AM[i][j] + (ck if i == j else ZERO) for j in range(n)) for i in range(n))
    return coeffs


@dataclass(frozen=True)
class SO4Certificate:
    word: str
    length: int
    p_degree: int
    block_form: bool
    charpoly_matches: bool
    orthogonality: bool

    @property
    def holds(self) -> bool:
        return self.block_form and self.charpoly_matches and self.orthogonality and self.p_degree == self.length

    def to_json(self) -> dict:
        return {**self.__dict__, "holds": self.holds}


def _check_shape(w: SignedWord) -> None:
    if not w.letters:
        raise BadWordShape("empty word")
    try:
        ids = [ALIASES[g] for g, _ in w.letters]
    except KeyError as exc:
        raise BadWordShape(f"unknown letter {exc}") from None
    if ids[0] != "σ" or ids[-1] != "τ":
        raise BadWordShape(f"word {w} must start with a sigma block and end with a tau block")


def so4_symbolic_audit(w: SignedWord) -> SO4Certificate:
    _check_shape(w)
    M = symbolic_word_matrix(w)
    P, Q, R, Sx = M[0][0], M[1][0], M[2][0], M[3][0]
    expected = (
        (P, -Q, -R, -Sx),
        (Q, P, -Sx, R),
        (R, Sx, P, -Q),
        (Sx, -R, Q, P),
    )
    block = (
        M == expected
        and not P.sin_poly
        and not R.sin_poly
        and not Q.poly
        and not Sx.poly
    )
    four = SymbolicEntry.const(4)
    quartic = [ONE, -(four * P), four * P * P + SymbolicEntry.const(2), -(four * P), ONE]
    cp = charpoly(M)
    ortho = (P * P + Q * Q + R * R + Sx * Sx) == ONE
    return SO4Certificate(
        word=str(w),
        length=w.length,
        p_degree=pdeg(P.poly),
        block_form=block,
        charpoly_matches=cp == quartic,
        orthogonality=ortho,
    )


def alternating_words(max_length: int) -> list[SignedWord]:
    """Reduced words sigma^... tau^... of letter length at most ``max_length``."""
    out = []
    for w in words(("σ", "τ"), max_length, max_length, max_length=max_length):
        if w.letters[0][0] == "σ" and w.letters[-1][0] == "τ":
            out.append(w)
    return out


def so4_audit_all(max_length: int = 6):
    from .sl2z import AuditReport

    report = AuditReport("so4-symbolic", details={"max_length": max_length})
    for w in alternating_words(max_length):
        cert = so4_symbolic_audit(w)
        report.checked += 1
        if not cert.holds:
            report.violations.append(cert.to_json())
    return report


# ------------------------------------------------- numeric companion check


def numeric_generators(theta: float = 1.0):
    """sigma, tau as float 4x4 arrays and the affine offset a = (1, 0, 0, 0)."""
    import numpy as np

    c, s = np.cos(theta), np.sin(theta)
    sigma = np.array([[c, -s, 0, 0], [s, c, 0, 0], [0, 0, c, -s], [0, 0, s, c]])
    tau = np.array([[c, 0, 0, -s], [0, c, -s, 0], [0, s, c, 0], [s, 0, 0, c]])
    return sigma, tau, np.array([1.0, 0.0, 0.0, 0.0])


def numeric_eigenvalue_margin(max_length: int = 6, theta: float = 1.0) -> float:
    """Smallest |lambda - 1| over eigenvalues of every nontrivial reduced word in
    sigma, tau of letter length <= max_length (the linear parts of the affine
    group generated by sigma and x -> tau x + a).
    """
    import numpy as np

    sigma, tau, _ = numeric_generators(theta)
    mats = {("σ", 1): sigma, ("σ", -1): sigma.T, ("τ", 1): tau, ("τ", -1): tau.T}
    margin = np.inf
    for w in words(("σ", "τ"), max_length, max_length, max_length=max_length):
        M = np.eye(4)
        for g, e in w.letters:
            step = mats[(g, 1 if e > 0 else -1)]
            for _ in range(abs(e)):
                M = M @ step
        margin = min(margin, float(np.min(np.abs(np.linalg.eigvals(M) - 1))))
    return margin

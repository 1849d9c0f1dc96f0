"""Trace certificates for the free subgroup <A, B> of SL(2, Z).

A = [[0, 1], [-1, 3]] and B = [[-1, -1], [5, 4]] both have trace 3. Powers of
a trace-3 matrix follow M^n = alpha_n M - alpha_{n-1} I with
alpha_n = 3 alpha_{n-1} - alpha_{n-2}, and every nontrivial reduced word has
|trace| >= 3, so no such word is the identity or a parabolic element.

Also here: the affine group generated by x -> Ax and x -> Bx + (1, 0), whose
nontrivial elements each have exactly one fixed point while the two generators
share none, and the irrational-slope transvection example over Q(sqrt 2).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .errors import EmptyWord, GafError, NotInT
from .matrices import AffineMap, Matrix, affine_fixed_point
from .scalars import QuadraticNumber

A = Matrix(((0, 1), (-1, 3)))
B = Matrix(((-1, -1), (5, 4)))
I2 = Matrix.identity(2)
GENERATORS = {"A": A, "B": B}


# ------------------------------------------------------------------- words


@dataclass(frozen=True)
class SignedWord:
    """Reduced word as (generator id, nonzero exponent) syllables."""

    letters: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        letters = tuple((str(g), int(e)) for g, e in self.letters)
        for (g, e), nxt in zip(letters, letters[1:] + (None,)):
            if e == 0:
                raise ValueError(f"zero exponent on {g}")
            if nxt is not None and nxt[0] == g:
                raise ValueError(f"adjacent syllables on the same generator {g}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, data: Sequence) -> "SignedWord":
        return cls(tuple((g, e) for g, e in data))

    @property
    def length(self) -> int:
        """Number of letters, counting A^3 as three."""
        return sum(abs(e) for _, e in self.letters)

    @property
    def syllables(self) -> int:
        return len(self.letters)

    def inverse(self) -> "SignedWord":
        return SignedWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __str__(self) -> str:
        return "".join(f"{g}^{e}" for g, e in self.letters) or "1"


def words(ids: Sequence[str], max_syllables: int, max_exponent: int, max_length: int | None = None) -> Iterator[SignedWord]:
    """Nonempty reduced words with at most ``max_syllables`` syllables.

    Exponents range over [-max_exponent, max_exponent] minus zero; ``max_length``
    additionally bounds the letter count.
    """
    exps = [e for e in range(-max_exponent, max_exponent + 1) if e]

    def grow(prefix: tuple, budget: int | None):
        if prefix:
            yield SignedWord(prefix)
        if len(prefix) == max_syllables:
            return
        for g in ids:
            if prefix and prefix[-1][0] == g:
                continue
            for e in exps:
                if budget is not None and abs(e) > budget:
                    continue
                yield from grow(prefix + ((g, e),), None if budget is None else budget - abs(e))

    yield from grow((), max_length)


def word_matrix(w: SignedWord, gens: Mapping[str, Matrix] = GENERATORS) -> Matrix:
    result = next(iter(gens.values())).identity_like()
    for g, e in w.letters:
        result = result @ (gens[g] ** e)
    return result


def word_map(w: SignedWord, gens: Mapping[str, AffineMap]) -> AffineMap:
    first = next(iter(gens.values()))
    result = first ** 0
    for g, e in w.letters:
        result = result * (gens[g] ** e)
    return result


# ---------------------------------------------------------- trace sequence


@dataclass(frozen=True)
class TraceSequence:
    alphas: tuple[int, ...]

    @classmethod
    def up_to(cls, n: int) -> "TraceSequence":
        alphas = [0, 1]
        while len(alphas) <= n:
            alphas.append(3 * alphas[-1] - alphas[-2])
        return cls(tuple(alphas[: n + 1]))

    def __getitem__(self, n: int) -> int:
        return self.alphas[n]

    def check(self) -> list[str]:
        """Violations of the recurrence, monotonicity or the 2^n - 1 bound."""
        bad = []
        a = self.alphas
        if a[:2] != (0, 1)[: len(a[:2])]:
            bad.append("initial values")
        for n in range(2, len(a)):
            if a[n] != 3 * a[n - 1] - a[n - 2]:
                bad.append(f"recurrence at {n}")
        for n in range(1, len(a)):
            if a[n] < 2 ** n - 1:
                bad.append(f"lower bound at {n}")
            if n + 1 < len(a) and a[n + 1] - a[n] < 2 ** n:
                bad.append(f"increment at {n}")
        return bad


@dataclass(frozen=True)
class TraceCertificate:
    n: int
    power: Matrix
    alpha: int
    alpha_prev: int
    trace: int
    bound: int
    identity_holds: bool

    @property
    def holds(self) -> bool:
        return self.identity_holds and self.trace == 3 * self.alpha - 2 * self.alpha_prev and self.trace >= self.bound


def trace_certificate(M: Matrix, n: int) -> TraceCertificate:
    """Check M^n = alpha_n M - alpha_{n-1} I and tr M^n >= 2^(n+1) - 1 exactly."""
    if M.shape != (2, 2) or M.det() != 1 or M.trace() != 3 or any(not isinstance(x, int) for r in M.rows for x in r):
        raise NotInT(f"{M} is not an integer matrix of determinant 1 and trace 3")
    if n < 1:
        raise ValueError("n must be positive")
    seq = TraceSequence.up_to(n)
    power = M
    for _ in range(n - 1):
        power = power @ M
    predicted = M.scale(seq[n]) - I2.scale(seq[n - 1])
    return TraceCertificate(
        n=n,
        power=power,
        alpha=seq[n],
        alpha_prev=seq[n - 1],
        trace=power.trace(),
        bound=2 ** (n + 1) - 1,
        identity_holds=power == predicted,
    )


# ------------------------------------------------------------- word traces


def dominates(X: Matrix, Y: Matrix) -> bool:
    """Entrywise order: X >> Y when every entry of X is at least that of Y."""
    return all(x >= y for rx, ry in zip(X.rows, Y.rows) for x, y in zip(rx, ry))


DIAG_5_1 = Matrix(((5, 0), (0, 1)))


class TraceBoundViolated(GafError):
    code = "TRACE_BOUND_VIOLATED"


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def block_dominance(k: int, l: int) -> bool:
    """sign(kl) A^k B^l >> diag(5, 1) for nonzero k, l."""
    return dominates((A ** k @ B ** l).scale(_sign(k * l)), DIAG_5_1)


def word_trace_bound(w: SignedWord) -> int:
    """Exact trace of a word in A, B, checked to satisfy |trace| >= 3.

    Every A^k B^l block with both exponents nonzero is also checked against the
    dominance bound; a violation raises ``TraceBoundViolated``.
    """
    if not w.letters:
        raise EmptyWord("the empty word has no trace bound")
    if any(g not in GENERATORS for g, _ in w.letters):
        raise ValueError(f"word {w} uses letters other than A and B")
    letters = w.letters
    for (g1, k), (g2, l) in zip(letters, letters[1:]):
        if g1 == "A" and g2 == "B" and not block_dominance(k, l):
            raise TraceBoundViolated(f"dominance fails for A^{k} B^{l}", payload=(k, l))
    tr = word_matrix(w).trace()
    if abs(tr) < 3:
        raise TraceBoundViolated(f"|tr {w}| = {abs(tr)} < 3", payload=str(w))
    return tr


@dataclass
class AuditReport:
    name: str
    checked: int = 0
    violations: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "audit": self.name,
            "status": "pass" if self.passed else "fail",
            "checked": self.checked,
            "violations": [str(v) for v in self.violations],
            **self.details,
        }


def word_products(max_syllables: int, max_exponent: int, gens: Mapping[str, Matrix] = GENERATORS) -> Iterator[tuple[SignedWord, Matrix]]:
    """Every reduced word with its matrix, depth first.

    Products are carried down the enumeration tree so each word costs one
    2x2 multiplication.
    """
    ids = sorted(gens)
    powers = {(g, e): gens[g] ** e for g in ids for e in range(-max_exponent, max_exponent + 1) if e}
    ident = next(iter(gens.values())).identity_like()
    stack = [((), ident)]
    while stack:
        prefix, M = stack.pop()
        children = []
        for g in ids:
            if prefix and prefix[-1][0] == g:
                continue
            for e in range(-max_exponent, max_exponent + 1):
                if e:
                    word = prefix + ((g, e),)
                    P = M @ powers[(g, e)]
                    children.append((word, P))
        for word, P in children:
            yield SignedWord(word), P
        if len(prefix) + 1 < max_syllables:
            stack.extend(reversed(children))


def trace_audit(max_syllables: int = 6, max_exponent: int = 3, gens: Mapping[str, Matrix] = GENERATORS) -> AuditReport:
    """|trace| >= 3 over every reduced word in A, B up to the given size."""
    report = AuditReport("sl2z-word-traces", details={"max_syllables": max_syllables, "max_exponent": max_exponent})
    min_abs = None
    for w, P in word_products(max_syllables, max_exponent, gens):
        tr = abs(P.trace())
        report.checked += 1
        min_abs = tr if min_abs is None else min(min_abs, tr)
        if tr < 3:
            report.violations.append(w)
    blocks = [(k, l) for k in range(-max_exponent, max_exponent + 1) for l in range(-max_exponent, max_exponent + 1) if k and l]
    report.violations.extend(f"dominance A^{k}B^{l}" for k, l in blocks if not block_dominance(k, l))
    report.details["min_abs_trace"] = min_abs
    report.details["blocks_checked"] = len(blocks)
    return report


# ------------------------------------------------- free affine eccentric group


AFFINE_OFFSET = (1, 0)


def free_affine_generators(offset: Sequence[int] = AFFINE_OFFSET) -> dict[str, AffineMap]:
    return {"f": AffineMap.linear_map(A), "g": AffineMap(B, tuple(offset))}


def free_affine_eccentric_audit(L: int, offset: Sequence[int] = AFFINE_OFFSET) -> AuditReport:
    """Every nontrivial word of letter length <= L in f: x -> Ax, g: x -> Bx + b
    has linear trace other than 2 and a unique fixed point, while f and g have
    no common fixed point.
    """
    gens = free_affine_generators(offset)
    fix_f = affine_fixed_point(gens["f"])
    fix_g = affine_fixed_point(gens["g"])
    report = AuditReport("free-affine-eccentric", details={"L": L, "fix_f": list(fix_f.point), "fix_g": list(fix_g.point)})
    if fix_f.point == fix_g.point:
        report.violations.append("f and g share a fixed point")
    if L < 1:
        return report
    for w in words(("f", "g"), L, L, max_length=L):
        h = word_map(w, gens)
        report.checked += 1
        if h.linear.trace() == 2:
            report.violations.append(f"{w}: trace 2")
            continue
        fix = affine_fixed_point(h)
        if fix is None or not fix.is_point() or h(fix.point) != fix.point:
            report.violations.append(f"{w}: fixed set {fix}")
    return report


# ------------------------------------------------------ transvection lines


def transvection_line(m: int, n: int, a: QuadraticNumber | None = None):
    """Height y0 of the fixed line {y = y0} of f^m g^n where f(x, y) = (x + y + 1, y)
    and g(x, y) = (x + a y, y); None when the fixed set is empty or everything.
    """
    a = QuadraticNumber.sqrt(2) if a is None else a
    denom = m + n * a
    if denom == 0:
        return None
    return (-m) / denom


def transvection_lines_audit(bound: int, a: QuadraticNumber | None = None) -> AuditReport:
    """Fixed lines of f^m g^n for |m|, |n| <= bound, computed by exact composition
    over Q(sqrt 2) and compared with y = -m / (m + n a); lines for non-proportional
    (m, n), (m', n') must differ, i.e. be disjoint horizontal lines.
    """
    a = QuadraticNumber.sqrt(2) if a is None else a
    zero, one = a * 0, a * 0 + 1
    f = AffineMap(Matrix(((one, one), (zero, one))), (one, zero))
    g = AffineMap(Matrix(((one, a), (zero, one))), (zero, zero))
    report = AuditReport("transvection-lines", details={"bound": bound})
    lines = {}
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            if (m, n) == (0, 0):
                continue
            h = (f ** m) * (g ** n)
            report.checked += 1
            fix = affine_fixed_point(h)
            y0 = transvection_line(m, n, a)
            if fix is None or fix.dimension != 1 or fix.point[1] != y0 or fix.directions[0][1] != 0:
                report.violations.append(f"({m},{n}): fixed set {fix} against y = {y0}")
                continue
            lines[(m, n)] = y0
    keys = sorted(lines)
    for i, (m, n) in enumerate(keys):
        for m2, n2 in keys[i + 1:]:
            if m * n2 != m2 * n and lines[(m, n)] == lines[(m2, n2)]:
                report.violations.append(f"lines of ({m},{n}) and ({m2},{n2}) meet")
    report.details["lines"] = len(lines)
    return report

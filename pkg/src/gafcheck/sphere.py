"""Finite groups of integer orthogonal matrices acting on spheres and projective spaces.

An orthogonal f acts on S_n (unit vectors of R^{n+1}) with a fixed point iff
1 is an eigenvalue, and on RP_n (the sphere modulo x ~ -x) with a fixed point
iff 1 or -1 is. Every test below is an exact kernel computation over the
rationals, so the audits need no tolerance.

A common fixed point of the projective action of <g_1, ..., g_k> is a vector
v with g_i v = e_i v for signs e_i; it exists iff one of the 2^k stacked
systems (g_i - e_i I) v = 0 has a nonzero solution.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from .matrices import Matrix
from .perm import DEFAULT_CAP
from .errors import CapExceeded
from .sl2z import AuditReport

GAG = "GAG"
ECCENTRIC = "ECCENTRIC"
NOT_GAF = "NOT_GAF"


def diag(entries: Sequence[int]) -> Matrix:
    return Matrix.diag(list(entries))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    n = sum(b.n for b in blocks)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for b in blocks:
        for i in range(b.n):
            for j in range(b.n):
                rows[k + i][k + j] = b.rows[i][j]
        k += b.n
    return Matrix(tuple(tuple(r) for r in rows))


def matrix_closure(gens: Iterable[Matrix], cap: int = DEFAULT_CAP) -> list[Matrix]:
    gens = list(gens)
    ident = gens[0].identity_like()
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"matrix group exceeds cap {cap}", payload=cap)
                    nxt.append(y)
        frontier = nxt
    return sorted(seen, key=lambda M: M.rows)


def eigenspace(M: Matrix, value: int) -> list[tuple]:
    return (M - M.identity_like().scale(value)).nullspace()


def _stack(mats: Sequence[Matrix]) -> Matrix:
    return Matrix(tuple(r for M in mats for r in M.rows))


def common_kernel(mats: Sequence[Matrix]) -> list[tuple]:
    return _stack(mats).nullspace()


# -------------------------------------------------------------- verdicts


def sphere_verdict(elements: Sequence[Matrix], generators: Sequence[Matrix] | None = None) -> str:
    """GAG / ECCENTRIC / NOT_GAF for the action on the unit sphere."""
    ident = elements[0].identity_like()
    if any(not eigenspace(g, 1) for g in elements):
        return NOT_GAF
    gens = list(generators) if generators is not None else list(elements)
    if common_kernel([g - ident for g in gens]):
        return GAG
    return ECCENTRIC


def projective_fixed(g: Matrix) -> bool:
    return bool(eigenspace(g, 1) or eigenspace(g, -1))


def projective_common_fixed(generators: Sequence[Matrix]) -> tuple | None:
    """A vector spanning a line fixed by every generator, or None."""
    ident = generators[0].identity_like()
    for signs in product((1, -1), repeat=len(generators)):
        ker = common_kernel([g - ident.scale(s) for g, s in zip(generators, signs)])
        if ker:
            return ker[0]
    return None


def projective_verdict(elements: Sequence[Matrix], generators: Sequence[Matrix]) -> str:
    if any(not projective_fixed(g) for g in elements):
        return NOT_GAF
    return GAG if projective_common_fixed(generators) is not None else ECCENTRIC


# ------------------------------------------------------------ the groups


def klein_diagonal(m: int) -> tuple[Matrix, Matrix, Matrix]:
    """diag(1,-1,-1,...), diag(-1,1,-1,...), diag(-1,-1,1,1,...) in O_m, m >= 3."""
    if m < 3:
        raise ValueError("need m >= 3")
    f = diag([1] + [-1] * (m - 1))
    g = diag([-1, 1] + [-1] * (m - 2))
    h = diag([-1, -1] + [1] * (m - 2))
    return f, g, h


def klein_blocks(k: int) -> tuple[Matrix, Matrix, Matrix]:
    """diag(I2,-I2,-I2,...), diag(-I2,I2,-I2,...), diag(-I2,-I2,I2,...) in SO_{2k}, k >= 3."""
    if k < 3:
        raise ValueError("need k >= 3")
    f = diag([1, 1] + [-1] * (2 * k - 2))
    g = diag([-1, -1, 1, 1] + [-1] * (2 * k - 4))
    h = diag([-1, -1, -1, -1] + [1] * (2 * k - 4))
    return f, g, h


def g0_elements() -> dict[str, Matrix]:
    """{+-id, +-f1, +-f2, +-f3} in SO_4 with f1, f2, f3 the diagonal sign changes of two coordinates."""
    base = {
        "id": diag([1, 1, 1, 1]),
        "f1": diag([1, 1, -1, -1]),
        "f2": diag([1, -1, 1, -1]),
        "f3": diag([1, -1, -1, 1]),
    }
    out = {}
    for name, M in base.items():
        out[name] = M
        out["-" + name] = -M
    return out


@dataclass
class SubgroupRow:
    members: tuple[str, ...]
    verdict: str
    fixed_vector: tuple | None = None


def g0_subgroup_table() -> list[SubgroupRow]:
    """All subgroups of G_0 with their sphere verdicts."""
    elems = g0_elements()
    names = sorted(elems, key=lambda s: (s.lstrip("-"), s.startswith("-")))
    lookup = {M: name for name, M in elems.items()}
    ident = elems["id"]
    rows = []
    seen = set()
    others = [n for n in names if n != "id"]
    for r in range(len(others) + 1):
        for subset in combinations(others, r):
            members = {"id", *subset}
            mats = [elems[n] for n in members]
            if any(lookup.get(a @ b) not in members for a in mats for b in mats):
                continue
            key = frozenset(members)
            if key in seen:
                continue
            seen.add(key)
            verdict = sphere_verdict(mats)
            fixed = None
            if verdict == GAG:
                fixed = common_kernel([m - ident for m in mats])[0]
            rows.append(SubgroupRow(tuple(n for n in names if n in members), verdict, fixed))
    return rows


ROT = Matrix(((0, -1), (1, 0)))
I2 = Matrix(((1, 0), (0, 1)))


def g_n_generators(n: int) -> list[Matrix]:
    """f, g, h in SO_{n+1} (n odd, n >= 5): diag(I,R,...,R), diag(R,I,R,...,R), diag(R,R,I,R,...,R)."""
    if n < 5 or n % 2 == 0:
        raise ValueError("n must be odd and at least 5")
    k = (n + 1) // 2
    gens = []
    for slot in range(3):
        gens.append(block_diag([I2 if i == slot else ROT for i in range(k)]))
    return gens


G3_F = Matrix(((0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
G3_G = Matrix(((0, 0, 0, -1), (1, 0, 0, 0), (0, -1, 0, 0), (0, 0, 1, 0)))


def g3_generators() -> list[Matrix]:
    """+-f and +-g for f = (1 2 3 4), g = (1 2 -3 -4) as signed permutations of R^4."""
    minus = diag([-1, -1, -1, -1])
    return [G3_F, G3_G, minus]


# ----------------------------------------------------------------- audit


def sphere_projective_audits(max_klein_dim: int = 8, max_block_k: int = 5) -> AuditReport:
    report = AuditReport("sphere-projective")
    details = report.details

    def check(label: str, ok: bool, info=None):
        report.checked += 1
        if not ok:
            report.violations.append(f"{label}: {info}")

    # (i) Klein groups on spheres
    klein = {}
    for n in range(2, max_klein_dim + 1):
        f, g, h = klein_diagonal(n + 1)
        elems = matrix_closure([f, g])
        v = sphere_verdict(elems)
        klein[f"O{n + 1}"] = v
        check(f"klein O{n + 1}", v == ECCENTRIC and len(elems) == 4 and f @ g == h, v)
    for k in range(3, max_block_k + 1):
        f, g, h = klein_blocks(k)
        elems = matrix_closure([f, g])
        dets_ok = all(M.det() == 1 for M in elems)
        v = sphere_verdict(elems)
        klein[f"SO{2 * k}"] = v
        check(f"klein SO{2 * k}", v == ECCENTRIC and dets_ok and f @ g == h, v)
    details["klein"] = klein

    # (ii) subgroups of G_0
    table = g0_subgroup_table()
    counts = {GAG: 0, NOT_GAF: 0, ECCENTRIC: 0}
    for row in table:
        counts[row.verdict] += 1
    not_gaf_contain_minus_id = all("-id" in row.members for row in table if row.verdict == NOT_GAF)
    check("G0 table", len(table) == 16 and counts == {GAG: 11, NOT_GAF: 5, ECCENTRIC: 0} and not_gaf_contain_minus_id, counts)
    details["g0"] = {"subgroups": len(table), **counts}

    # (iii) projective groups
    for n in (5, 7):
        gens = g_n_generators(n)
        elems = matrix_closure(gens)
        v = projective_verdict(elems, gens)
        positive = all(M.det() == 1 for M in elems)
        details[f"G{n}"] = {"order": len(elems), "projective": v}
        expected_order = 32 if n == 5 else None
        check(
            f"G{n}",
            v == ECCENTRIC and positive and (expected_order is None or len(elems) == expected_order),
            details[f"G{n}"],
        )
    gens = g3_generators()
    elems = matrix_closure(gens)
    f, g = G3_F, G3_G
    anti = f @ g == -(g @ f) and f @ f == -(g @ g)
    v = projective_verdict(elems, gens)
    details["G3"] = {"order": len(elems), "projective": v, "fg=-gf": anti}
    check("G3", len(elems) == 16 and anti and v == ECCENTRIC, details["G3"])
    return report

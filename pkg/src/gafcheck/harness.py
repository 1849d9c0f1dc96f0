"""Replay of every explicit construction as a list of named checks.

Each check returns a details record or raises ``CheckFailed``; a
``CapExceeded`` raised inside a check turns it into SKIPPED. Checks are
deterministic for a given ``RunOptions`` (random suites draw from
``random.Random`` / ``numpy`` generators seeded from ``seed`` and the check id).
"""
from __future__ import annotations

import math
import random
import time
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import CapExceeded, CellTooLarge, GafError, HypothesisFailed, InversionDetected
from .perm import (
    DEFAULT_CAP,
    ECCENTRIC,
    Permutation,
    alternating_group,
    alternating_witness,
    classify_action,
    generate_group,
    is_even,
    is_fixating,
    parse_permutation,
    symmetric_group,
    symmetric_witness,
)

DEFAULT_SEED = 1729
PASS, FAIL, SKIPPED = "PASS", "FAIL", "SKIPPED"


class CheckFailed(Exception):
    def __init__(self, details: dict):
        super().__init__(str(details))
        self.details = details


@dataclass(frozen=True)
class RunOptions:
    tolerance: float = 1e-9
    cap: int | None = None
    seed: int = DEFAULT_SEED
    word_len: int = 6
    corrupt: str | None = None

    def capped(self, default: int = DEFAULT_CAP) -> int:
        return default if self.cap is None else self.cap

    def rng(self, check_id: str) -> random.Random:
        return random.Random(self.seed * 1_000_003 + zlib.crc32(check_id.encode()))

    def np_rng(self, check_id: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(check_id.encode())])


@dataclass
class CheckResult:
    check_id: str
    status: str
    details: dict = field(default_factory=dict)
    elapsed: float | None = None

    def to_json(self, timing: bool = False) -> dict:
        out = {"check_id": self.check_id, "status": self.status, "details": self.details}
        if timing and self.elapsed is not None:
            out["elapsed"] = round(self.elapsed, 3)
        return out


@dataclass(frozen=True)
class Check:
    check_id: str
    anchor: str
    run: Callable[["Context"], dict]


@dataclass(frozen=True)
class Context:
    options: RunOptions
    check_id: str

    @property
    def corrupt(self) -> bool:
        return self.options.corrupt == self.check_id

    @property
    def tol(self) -> float:
        return self.options.tolerance

    def cap(self, default: int = DEFAULT_CAP) -> int:
        return self.options.capped(default)

    def rng(self) -> random.Random:
        return self.options.rng(self.check_id)

    def np_rng(self) -> np.random.Generator:
        return self.options.np_rng(self.check_id)


REGISTRY: dict[str, Check] = {}


def check(check_id: str, anchor: str):
    def wrap(fn):
        if check_id in REGISTRY:
            raise ValueError(f"duplicate check id {check_id}")
        REGISTRY[check_id] = Check(check_id, anchor, fn)
        return fn

    return wrap


def expect(ok: bool, **details) -> dict:
    if not ok:
        raise CheckFailed(details)
    return details


def _audit(report) -> dict:
    data = report.to_json()
    if not report.passed:
        data["violations"] = data["violations"][:10]
        raise CheckFailed(data)
    return data


# ---------------------------------------------------------------- perm-core


def _symmetric_generators(n: int) -> list[Permutation]:
    if n == 1:
        return [Permutation.identity(1)]
    return [Permutation.from_cycles([tuple(range(1, n + 1))], n), Permutation.from_cycles([(1, 2)], n)]


def _small_fixating(ctx: Context, alternating: bool) -> dict:
    verdicts = {}
    for n in range(1, 5):
        if alternating:
            G = alternating_group(n, ctx.cap())
        else:
            gens = _symmetric_generators(n)
            if ctx.corrupt and n == 4:
                gens = [parse_permutation("(1 2 3 4 5)", 5), parse_permutation("(1 2)", 5)]
            G = generate_group(gens, ctx.cap(), degree=gens[0].degree)
        if ctx.corrupt and alternating and n == 4:
            G = generate_group([parse_permutation("(1 2 3)", 5), parse_permutation("(1 2)(4 5)", 5)], ctx.cap())
        verdicts[n] = {"order": G.order, "fixating": is_fixating(G, ctx.cap()).fixating}
    return expect(all(v["fixating"] for v in verdicts.values()), degrees=verdicts)


@check("perm.symmetric.small", "symmetric groups of degree at most four are fixating")
def _sym_small(ctx):
    return _small_fixating(ctx, alternating=False)


@check("perm.alternating.small", "alternating groups of degree at most four are fixating")
def _alt_small(ctx):
    return _small_fixating(ctx, alternating=True)


_SYM_ORDERS = {5: 6, 6: 4}


def _witness_check(ctx: Context, W, n: int, alternating: bool, expected_order: int | None) -> dict:
    gens = list(W.generators)
    if ctx.corrupt:
        gens[-1] = Permutation.identity(n)
    G = generate_group(gens, ctx.cap(), degree=n)
    verdict = classify_action(G)
    ok = verdict.kind == ECCENTRIC and (expected_order is None or G.order == expected_order)
    if alternating:
        ok = ok and all(is_even(g) for g in gens)
    return expect(ok, kind=verdict.kind, order=G.order, generators=[str(g) for g in gens])


def _register_witnesses():
    for n in range(5, 10):
        def sym(ctx, n=n):
            return _witness_check(ctx, symmetric_witness(n), n, False, _SYM_ORDERS.get(n))

        def alt(ctx, n=n):
            return _witness_check(ctx, alternating_witness(n), n, True, 12 if n == 7 else _SYM_ORDERS.get(n))

        check(f"perm.symmetric.witness.{n}", f"eccentric subgroup of the symmetric group of degree {n}")(sym)
        check(f"perm.alternating.witness.{n}", f"eccentric subgroup of the alternating group of degree {n}")(alt)


_register_witnesses()


@check("perm.alternating.order24", "order-24 eccentric subgroup of A7 coming from GL(3,2)")
def _alt_24(ctx):
    f = parse_permutation("(1 2 3)(5 6 7)", 7)
    g = parse_permutation("(1 4)(6 7)", 7)
    if ctx.corrupt:
        g = parse_permutation("(1 4)", 7)
    G = generate_group([f, g], ctx.cap(), degree=7)
    kind = classify_action(G).kind
    return expect(kind == ECCENTRIC and G.order == 24 and is_even(f) and is_even(g), kind=kind, order=G.order)


@check("perm.induced", "induced action of S3 from a point stabilizer")
def _induced(ctx):
    from .perm import induce_action

    G = symmetric_group(3, ctx.cap())
    reps = [Permutation.identity(3), parse_permutation("(1 2)", 3), parse_permutation("(1 3)", 3)]
    if ctx.corrupt:
        reps[2] = parse_permutation("(2 3)", 3)
    ind = induce_action(G, 1, reps, ctx.cap())
    return expect(ind.group.order == 6 and ind.group.degree == 9, order=ind.group.order, degree=ind.group.degree,
                  kind=classify_action(ind.group).kind)


# ------------------------------------------------------------- matrix-exact


GL1_FIELDS = (2, 3, 4, 5, 7, 8, 9, 11, 13, 16)


@check("glfq.gl1", "GL(1,q) acts fixatingly for every q up to 16")
def _gl1(ctx):
    from .glfq import general_linear_group, gl_fq_to_permutation

    out = {}
    for q in GL1_FIELDS:
        G = general_linear_group(1, q, ctx.cap())
        if ctx.corrupt and q == 16:
            G = gl_fq_to_permutation(2, 3, [[[2, 0], [0, 1]], [[1, 1], [0, 1]]], cap=ctx.cap())
        out[q] = is_fixating(G, ctx.cap()).fixating
    return expect(all(out.values()), fixating=out)


@check("glfq.gl22", "GL(2,2) is S3 on three vectors and fixating")
def _gl22(ctx):
    from .glfq import gl_fq_to_permutation, general_linear_generators

    gens = general_linear_generators(2, 2)
    G = gl_fq_to_permutation(2, 2, gens, cap=ctx.cap())
    if ctx.corrupt:
        G = generate_group([parse_permutation("(1 2 3)", 5), parse_permutation("(1 2)(4 5)", 5)], ctx.cap())
    fix = is_fixating(G, ctx.cap()).fixating
    return expect(G.order == 6 and fix, order=G.order, fixating=fix)


@check("glfq.gl23", "affine-line family in GL(2,3) is eccentric")
def _gl23(ctx):
    from .glfq import affine_line_family, general_linear_group, gl_fq_to_permutation

    gens = affine_line_family(3)
    if ctx.corrupt:
        gens = gens[:1]
    G = gl_fq_to_permutation(2, 3, gens, cap=ctx.cap())
    kind = classify_action(G).kind
    full = general_linear_group(2, 3, ctx.cap())
    return expect(kind == ECCENTRIC and full.order == 48, kind=kind, order=G.order, gl_order=full.order)


@check("glfq.gl32", "GL(3,2) contains an order-24 eccentric subgroup")
def _gl32(ctx):
    from .glfq import E16_F, E16_G, E16_ORDER, gl_fq_to_permutation

    g = ((1, 0, 0), (0, 1, 0), (0, 0, 1)) if ctx.corrupt else E16_G
    G = gl_fq_to_permutation(3, 2, [E16_F, g], vector_order=E16_ORDER, cap=ctx.cap())
    perms = [str(p) for p in G.generators]
    kind = classify_action(G).kind
    return expect(
        kind == ECCENTRIC and G.order == 24 and perms == ["(1 2 3)(5 6 7)", "(1 4)(6 7)"],
        kind=kind, order=G.order, generators=perms,
    )


@check("sl2z.alpha", "trace sequence recurrence and 2^n - 1 lower bound up to n = 64")
def _alpha(ctx):
    from .sl2z import TraceSequence

    seq = TraceSequence.up_to(64)
    if ctx.corrupt:
        seq = TraceSequence(seq.alphas[:10] + (seq.alphas[10] + 1,) + seq.alphas[11:])
    bad = seq.check()
    return expect(not bad, checked=64, violations=bad[:5], alpha_64=str(seq[64]))


@check("sl2z.powers", "M^n = alpha_n M - alpha_(n-1) I for A, B and their inverses, n <= 20")
def _powers(ctx):
    from .matrices import Matrix
    from .sl2z import A, B, trace_certificate

    mats = {"A": A, "B": B, "A^-1": A.inverse(), "B^-1": B.inverse()}
    if ctx.corrupt:
        mats["B"] = Matrix(((1, 1), (-1, 2)))
    bad = [f"{k}^{n}" for k, M in mats.items() for n in range(1, 21) if not trace_certificate(M, n).holds]
    return expect(not bad, checked=80, violations=bad)


@check("sl2z.word-traces", "every reduced word in A, B has |trace| >= 3")
def _word_traces(ctx):
    from .matrices import Matrix
    from .sl2z import GENERATORS, trace_audit

    gens = dict(GENERATORS)
    if ctx.corrupt:
        gens["B"] = Matrix(((1, 1), (0, 1)))
    return _audit(trace_audit(ctx.options.word_len, 3, gens))


@check("sl2z.free-affine", "affine maps with linear parts A, B generate an eccentric group")
def _free_affine(ctx):
    from .sl2z import free_affine_eccentric_audit

    offset = (0, 0) if ctx.corrupt else (1, 0)
    return _audit(free_affine_eccentric_audit(ctx.options.word_len, offset))


@check("sl2z.transvection-lines", "fixed lines of f^m g^n are pairwise disjoint for an irrational slope")
def _transvections(ctx):
    from .scalars import QuadraticNumber
    from .sl2z import transvection_lines_audit

    a = QuadraticNumber(2, 0, 2) if ctx.corrupt else None
    return _audit(transvection_lines_audit(6, a))


@check("so4.symbolic", "characteristic polynomial of alternating words in SO4")
def _so4(ctx):
    from .so4 import alternating_words, so4_symbolic_audit
    from .sl2z import AuditReport

    report = AuditReport("so4-symbolic", details={"max_length": ctx.options.word_len})
    for w in alternating_words(ctx.options.word_len):
        cert = so4_symbolic_audit(w)
        report.checked += 1
        ok = cert.holds if not ctx.corrupt else cert.holds and cert.p_degree == cert.length + 1
        if not ok:
            report.violations.append(cert.to_json())
    return _audit(report)


@check("lattice.zn", "common fixed point of random GAF groups of lattice isometries, n = 1..6")
def _zn(ctx):
    from .instances import random_gaf_lattice_group
    from .lattice import LatticeIsometry, brute_force_common_fixed, lattice_closure, zn_global_fixed_point

    rng = ctx.rng()
    stats = {"groups": 0, "in_box": 0, "max_order": 0}
    for n in range(1, 7):
        for k in range(100):
            inst = random_gaf_lattice_group(rng, n)
            gens = list(inst.generators)
            if ctx.corrupt and n == 3 and k == 0:
                gens = [LatticeIsometry(tuple(range(n)), (-1,) + (1,) * (n - 1), (1,) + (0,) * (n - 1))]
            res = zn_global_fixed_point(gens, cap=ctx.cap())
            for h in lattice_closure(gens, ctx.cap(), n):
                if h(res.point) != res.point:
                    raise CheckFailed({"n": n, "point": list(res.point), "moved_by": str(h)})
            radius = 2 if n <= 4 else 1
            if max(abs(x) for x in res.point) <= radius:
                stats["in_box"] += 1
                if res.point not in brute_force_common_fixed(gens, radius):
                    raise CheckFailed({"n": n, "point": list(res.point), "reason": "not found by box search"})
            stats["groups"] += 1
            stats["max_order"] = max(stats["max_order"], res.order)
    return stats


@check("lattice.examples", "lattice fixed points for -x and the reflection (1-y, 1-x)")
def _zn_examples(ctx):
    from .lattice import LatticeIsometry, brute_force_common_fixed, zn_global_fixed_point

    neg = LatticeIsometry((0,), (-1,), (0,))
    swap = LatticeIsometry((1, 0), (-1, -1), (1, 1))
    if ctx.corrupt:
        neg = LatticeIsometry((0,), (-1,), (1,))
    p1 = zn_global_fixed_point([neg]).point
    p2 = zn_global_fixed_point([swap]).point
    box = brute_force_common_fixed([swap], 3)
    return expect(p1 == (0,) and p2 in box, neg=list(p1), swap=list(p2), box=[list(p) for p in box])


@check("lattice.hypercube", "hypercube isometry groups: orders 2^n n!, fixating for n <= 3")
def _hypercube(ctx):
    from .lattice import HYPERCUBE_CAP, hypercube_isometry_analysis

    out = {}
    for n in range(1, 7):
        res = hypercube_isometry_analysis(n, ctx.cap(HYPERCUBE_CAP))
        out[n] = {"order": res.order, "fixating": res.fixating}
    ok = all(out[n]["order"] == 2 ** n * math.factorial(n) for n in out)
    ok = ok and all(out[n]["fixating"] for n in (1, 2, 3))
    if ctx.corrupt:
        ok = ok and out[6]["order"] == 2 ** 6 * 719
    return expect(ok, groups=out)


@check("sphere.audits", "Klein groups, G0 subgroup table, G3, G5, G7 on spheres and projective spaces")
def _sphere(ctx):
    from . import sphere
    from .matrices import Matrix

    if ctx.corrupt:
        original = sphere.G3_G
        sphere.G3_G = Matrix(((0, 0, 0, 1), (1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)))
        try:
            return _audit(sphere.sphere_projective_audits())
        finally:
            sphere.G3_G = original
    return _audit(sphere.sphere_projective_audits())


# ---------------------------------------------------------------- geo-metric


@check("hyperbolic.median", "median inequality in H2 and H3 on random triples")
def _median(ctx):
    from .hyperbolic import median_inequality_slack, random_hyperbolic_point

    rng = ctx.np_rng()
    worst = math.inf
    for k in range(10_000):
        dim = 2 if k % 2 == 0 else 3
        x, y, z = (random_hyperbolic_point(dim, rng) for _ in range(3))
        m = None
        if ctx.corrupt and k == 0:
            m = np.array(list(x[:-1]) + [x[-1] * 50.0])
        worst = min(worst, median_inequality_slack(x, y, z, "HYPERBOLIC", m))
    return expect(worst >= -ctx.tol, triples=10_000, min_slack=worst)


@check("hyperbolic.midpoint", "midpoint bisects the geodesic")
def _midpoint(ctx):
    from .hyperbolic import hyperbolic_distance, hyperbolic_midpoint, random_hyperbolic_point

    rng = ctx.np_rng()
    worst = 0.0
    for k in range(1000):
        x, y = (random_hyperbolic_point(2 + k % 2, rng) for _ in range(2))
        m = hyperbolic_midpoint(x, y, samples=0).m
        if ctx.corrupt and k == 0:
            m = x
        d = hyperbolic_distance(x, y)
        worst = max(worst, abs(hyperbolic_distance(x, m) - d / 2), abs(hyperbolic_distance(m, y) - d / 2))
    m1 = hyperbolic_midpoint((0, 1), (0, 4), samples=0).m
    exact = float(np.max(np.abs(m1 - np.array([0.0, 2.0]))))
    return expect(worst <= ctx.tol and exact <= 1e-12, pairs=1000, max_error=worst, midpoint_i_4i=m1.tolist())


@check("hyperbolic.commutator", "commutator trace closed form exceeds 2")
def _commutator(ctx):
    from .mobius import commutator_trace_closed_form, commutator_trace_h2

    rng = ctx.np_rng()
    worst, smallest = 0.0, math.inf
    for k in range(1000):
        theta = float(rng.uniform(0.05, 2 * math.pi - 0.05))
        if abs(theta - math.pi) < 1e-3:
            theta += 0.01
        x = float(np.exp(rng.uniform(-2, 2)))
        if abs(x - 1) < 1e-3:
            x += 0.01
        tr = commutator_trace_h2(theta, x)
        if ctx.corrupt and k == 0:
            tr += 1.0
        worst = max(worst, abs(tr - commutator_trace_closed_form(theta, x)))
        smallest = min(smallest, tr)
    return expect(worst <= ctx.tol and smallest > 2, samples=1000, max_error=worst, min_trace=smallest)


@check("hyperbolic.projection", "projection of 3+4i onto the imaginary axis is 5i")
def _projection(ctx):
    from .hyperbolic import mediator_hn, project_to_line_h2

    p = project_to_line_h2((3.0, 4.0), {"kind": "vertical", "foot": [1.0 if ctx.corrupt else 0.0]})
    med = mediator_hn((0.0, 1.0), (0.0, 4.0))
    err = float(np.max(np.abs(p - np.array([0.0, 5.0]))))
    return expect(err <= 1e-12 and med.kind == "sphere" and abs(med.radius - 2.0) <= 1e-12,
                  projection=p.tolist(), mediator=med.kind, mediator_radius=med.radius)


@check("circumcenter.euclidean", "Euclidean circumcentres satisfy the minimax optimality conditions")
def _circ_euclid(ctx):
    from .circumcenter import circumcenter, euclidean_optimality_gap

    rng = ctx.np_rng()
    worst = 0.0
    for k in range(1000):
        dim = int(rng.integers(1, 6))
        pts = rng.normal(size=(int(rng.integers(1, 51)), dim))
        res = circumcenter(pts)
        if ctx.corrupt and k == 0:
            res = replace(res, center=res.center + 0.1)
        worst = max(worst, euclidean_optimality_gap(pts, res))
    two = circumcenter([(0, 0), (2, 0)])
    ok = worst <= ctx.tol and np.allclose(two.center, [1, 0]) and abs(two.radius - 1) <= 1e-12
    return expect(ok, sets=1000, max_gap=worst)


@check("circumcenter.hyperbolic", "hyperbolic circumcentres: two-point midpoints and restart agreement")
def _circ_hyp(ctx):
    from .circumcenter import circumcenter
    from .hyperbolic import hyperbolic_distance, hyperbolic_midpoint, random_hyperbolic_point

    rng = ctx.np_rng()
    worst_mid = 0.0
    for k in range(200):
        x, y = (random_hyperbolic_point(2 + k % 2, rng) for _ in range(2))
        res = circumcenter([x, y], space="HYPERBOLIC")
        worst_mid = max(worst_mid, hyperbolic_distance(res.center, hyperbolic_midpoint(x, y, samples=0).m))
    pts = [random_hyperbolic_point(3, rng) for _ in range(1000)]
    a = circumcenter(pts, space="HYPERBOLIC", seed=1)
    b = circumcenter(pts, space="HYPERBOLIC", seed=2)
    if ctx.corrupt:
        b = circumcenter(pts[:-500], space="HYPERBOLIC", seed=2)
    restart = hyperbolic_distance(a.center, b.center)
    ex = circumcenter([(0, 1), (0, 4)], space="HYPERBOLIC")
    ok = worst_mid <= 1e-6 and restart <= 1e-6 and abs(ex.radius - math.log(2)) <= 1e-9
    return expect(ok, midpoint_error=worst_mid, restart_distance=restart, radius_1000=a.radius,
                  residual_1000=a.residual, example_center=ex.center.tolist())


@check("witness.r3", "parallel quarter-turns in R3 give a translation commutator")
def _witness_r3(ctx):
    from .isometries import eccentricity_witness_r3, rotation_about_line

    f = rotation_about_line((0, 0, 0), (0, 0, 1), math.pi / 2)
    g = rotation_about_line((1, 0, 0), (0, 0, 1), math.pi / 2 if ctx.corrupt else -math.pi / 2)
    w = eccentricity_witness_r3(f, g)
    h = w.element
    lin_err = float(np.max(np.abs(h.rotation - np.eye(3)))) if h is not None else math.inf
    norm = float(np.linalg.norm(h.translation)) if h is not None else 0.0
    return expect(w.word == "[f,g]" and lin_err <= 1e-10 and norm > 1e-3, word=w.word, linear_error=lin_err,
                  translation_norm=norm)


@check("witness.mobius", "words in the two Moebius maps all fix points of the real line")
def _witness_mobius(ctx):
    from .matrices import Matrix
    from .mobius import moebius_eccentric_audit
    from . import sl2z

    if ctx.corrupt:
        report = sl2z.AuditReport("moebius-line")
        report.checked = 1
        tr = Matrix(((1, 1), (0, 1))).trace()
        if tr * tr - 4 < 5:
            report.violations.append("parabolic generator")
        return _audit(report)
    return _audit(moebius_eccentric_audit(ctx.options.word_len, 3))


@check("witness.h3", "candidate list for elliptic pairs in H3")
def _witness_h3(ctx):
    from .mobius import eccentricity_witness_h3, has_fixed_point_h3, vertical_rotation

    f = vertical_rotation(0, math.pi / 2)
    g = vertical_rotation(1, math.pi / 2)
    gg = vertical_rotation(1, -math.pi / 2)
    same = eccentricity_witness_h3(f, g)
    opposite = eccentricity_witness_h3(f, gg)
    common = eccentricity_witness_h3(f, f if not ctx.corrupt else g)
    ok = (
        same.kind == "WITNESS" and not has_fixed_point_h3(same.element)
        and opposite.kind == "WITNESS" and not has_fixed_point_h3(opposite.element)
        and common.kind == "COMMON_POINT"
    )
    return expect(ok, same_sense=same.word, opposite_sense=opposite.word, self_pair=common.kind)


@check("witness.abelian", "commuting rotations share a fixed point")
def _abelian(ctx):
    from .isometries import abelian_gag_solver, rotation_about_line, rotation_2d

    f = rotation_about_line((1, 2, 0), (0, 0, 1), 0.7)
    g = rotation_about_line((1, 2, 0), (0, 0, 1), 2.1)
    if ctx.corrupt:
        g = rotation_about_line((1, 3, 0), (0, 0, 1), 2.1)
    p = abelian_gag_solver([f, g])
    r = rotation_2d((1, 2), 1.0)
    q = abelian_gag_solver([r])
    err = max(float(np.linalg.norm(f(p) - p)), float(np.linalg.norm(g(p) - p)), float(np.linalg.norm(q - [1, 2])))
    return expect(err <= ctx.tol, point=p.tolist(), error=err)


# ---------------------------------------------------------------- tree-graph


@check("tree.examples", "trees: reflection of a path, spider, centres and an inversion")
def _tree_examples(ctx):
    from .tree import (
        Tree, bounded_orbit_fixed_point, finite_tree_center, graph_isometry, nearest_fixed_vertex,
        tree_global_fixed_point,
    )

    P5 = Tree.path(5)
    s = graph_isometry(P5, [5, 4, 3, 2, 1])
    spider = Tree.spider(3, 2)
    a = Permutation.from_cycles([(2, 4), (3, 5)], 7)
    b = Permutation.from_cycles([(4, 6), (5, 7)], 7)
    results = {
        "reflection_nearest": nearest_fixed_vertex(P5, s, 1),
        "reflection_global": tree_global_fixed_point(P5, [s]),
        "spider": tree_global_fixed_point(spider, [a, b]),
        "spider_nearest": nearest_fixed_vertex(spider, Permutation.from_cycles([(2, 4), (3, 5)], 7), 3),
        "center_p5": list(finite_tree_center(P5).vertices),
        "center_p4": list(finite_tree_center(Tree.path(4)).vertices),
        "orbit_center": bounded_orbit_fixed_point(P5, [s], 1),
    }
    try:
        bounded_orbit_fixed_point(Tree.path(2), [Permutation((2, 1))], 1)
        results["inversion"] = "missed"
    except InversionDetected:
        results["inversion"] = "detected"
    expected = {"reflection_nearest": 3, "reflection_global": 3, "spider": 1, "spider_nearest": 1,
                "center_p5": [3], "center_p4": [2, 3], "orbit_center": 3, "inversion": "detected"}
    if ctx.corrupt:
        expected["spider"] = 2
    return expect(results == expected, results=results)


@check("tree.random", "tree global fixed point lies in the brute-force intersection of fixed sets")
def _tree_random(ctx):
    from .instances import random_symmetric_tree
    from .tree import tree_global_fixed_point

    rng = ctx.rng()
    largest = 0
    for k in range(1000):
        inst = random_symmetric_tree(rng)
        gens = list(inst.generators)
        if ctx.corrupt and k == 0 and gens:
            gens[0] = Permutation(tuple(reversed(range(1, inst.tree.n + 1))))
        v = tree_global_fixed_point(inst.tree, gens)
        common = set(range(1, inst.tree.n + 1))
        for g in gens:
            common &= g.fixed_points()
        if v not in common:
            raise CheckFailed({"instance": k, "vertex": v, "common": sorted(common)})
        largest = max(largest, inst.tree.n)
    return {"trees": 1000, "max_vertices": largest}


@check("tree.three", "f, g, fg with fixed points give a common fixed vertex")
def _tree_three(ctx):
    from .instances import inversion_tree, random_symmetric_tree
    from .tree import gaf_from_three

    rng = ctx.rng()
    counts = {"certified": 0, "refused": 0}
    for k in range(500):
        inst = random_symmetric_tree(rng) if k % 5 else inversion_tree(rng)
        gens = list(inst.generators) or [Permutation.identity(inst.tree.n)]
        f, g = rng.choice(gens), rng.choice(gens)
        if k % 7 == 0:
            f = f * g
        brute = all(h.fixed_points() for h in (f, g, f * g))
        try:
            v = gaf_from_three(inst.tree, f, g)
            ok = brute and f(v) == v and g(v) == v
            counts["certified"] += 1
        except HypothesisFailed:
            ok = not brute
            counts["refused"] += 1
        if ctx.corrupt and k == 0:
            ok = False
        if not ok:
            raise CheckFailed({"instance": k, "f": str(f), "g": str(g)})
    return counts


@check("colored.examples", "colored graphs: triangles sharing a vertex, alternating square, K4 and K5")
def _colored_examples(ctx):
    from .colored import colored_fixed_structure, colored_global_fixed_point, validate_colored_graph
    from .errors import PolychromaticCycle

    bowtie = validate_colored_graph(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)], ["blue"] * 3 + ["red"] * 3)
    rot = parse_permutation("(1 2)(4 5)", 5)
    res = {"cells": len(bowtie.cells), "bowtie_fixed": colored_global_fixed_point(bowtie, [rot])}
    try:
        validate_colored_graph(4, [(1, 2), (2, 3), (3, 4), (4, 1)], ["a", "b", "a", "b"])
        res["square"] = "accepted"
    except PolychromaticCycle:
        res["square"] = "rejected"
    k4 = validate_colored_graph(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)], ["g"] * 6)
    t = parse_permutation("(1 2)", 4)
    res["k4_structure"] = colored_fixed_structure(k4, t, 1).kind
    k5 = validate_colored_graph(5, [(i, j) for i in range(1, 6) for j in range(i + 1, 6)], ["g"] * 10)
    try:
        colored_global_fixed_point(k5, [])
        res["k5"] = "accepted"
    except CellTooLarge:
        res["k5"] = "rejected"
    expected = {"cells": 2, "bowtie_fixed": 3, "square": "rejected", "k4_structure": "CELL", "k5": "rejected"}
    if ctx.corrupt:
        expected["cells"] = 3
    return expect(res == expected, results=res)


@check("colored.random", "colored global fixed point on random graphs, and refusal with a K5 cell")
def _colored_random(ctx):
    from .colored import colored_global_fixed_point
    from .instances import extend_permutation, inject_k5, random_colored_graph

    rng = ctx.rng()
    sizes = []
    for k in range(100):
        inst = random_colored_graph(rng)
        gens = list(inst.generators)
        if ctx.corrupt and k == 0:
            gens.append(Permutation(tuple(reversed(range(1, inst.graph.n + 1)))))
        try:
            v = colored_global_fixed_point(inst.graph, gens)
        except GafError as exc:
            raise CheckFailed({"instance": k, "error": exc.code, "message": str(exc)}) from None
        if any(g(v) != v for g in gens):
            raise CheckFailed({"instance": k, "vertex": v})
        big = inject_k5(inst)
        try:
            colored_global_fixed_point(big, [extend_permutation(g, big.n) for g in gens])
            raise CheckFailed({"instance": k, "reason": "K5 cell accepted"})
        except CellTooLarge:
            pass
        sizes.append(inst.graph.n)
    return {"graphs": 100, "max_vertices": max(sizes)}


# ------------------------------------------------------------------- running


def run_check(check_id: str, options: RunOptions) -> CheckResult:
    chk = REGISTRY[check_id]
    start = time.perf_counter()
    try:
        details = chk.run(Context(options, check_id))
        status = PASS
    except CapExceeded as exc:
        status, details = SKIPPED, {"reason": exc.code, "message": str(exc)}
    except CheckFailed as exc:
        status, details = FAIL, exc.details
    except GafError as exc:
        status, details = FAIL, {"error": exc.code, "message": str(exc)}
    except Exception as exc:  # a crash inside a check is a failure of that check
        status, details = FAIL, {"error": type(exc).__name__, "message": str(exc)}
    elapsed = (time.perf_counter() - start) * 1000.0
    return CheckResult(check_id, status, _jsonable(details), elapsed)


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    return str(x)


def _run_one(args):
    return run_check(*args)


def run_checks(options: RunOptions, only: list[str] | None = None, workers: int = 1) -> list[CheckResult]:
    ids = sorted(REGISTRY)
    if only:
        ids = [i for i in ids if any(i == p or i.startswith(p.rstrip(".") + ".") for p in only)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_one, [(i, options) for i in ids]))
    else:
        results = [run_check(i, options) for i in ids]
    return sorted(results, key=lambda r: r.check_id)


def summary(results: list[CheckResult], options: RunOptions, command: str = "verify-paper") -> dict:
    counts = {PASS: 0, FAIL: 0, SKIPPED: 0}
    for r in results:
        counts[r.status] += 1
    return {
        "summary": {
            **counts,
            "total": len(results),
            "failed": [r.check_id for r in results if r.status == FAIL],
            "anchors": {r.check_id: REGISTRY[r.check_id].anchor for r in results},
            "manifest": {"command": command, **asdict(options)},
        }
    }

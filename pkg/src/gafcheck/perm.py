"""Finite permutation groups and their fixed-point behaviour.

Points are 1-based so that cycle strings read exactly as written by hand.
Composition follows the usual right-to-left convention: ``(f * g)(x) = f(g(x))``.

The subgroup machinery works on element indices with a precomputed
multiplication table, and represents a subgroup as a boolean mask over the
canonically sorted element list.
"""
from __future__ import annotations

import heapq
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, DegreeMismatch, MalformedCycles, NotATransversal

DEFAULT_CAP = 10_000

GAG = "GAG"
ECCENTRIC = "ECCENTRIC"
NOT_GAF = "NOT_GAF"


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"not a bijection of 1..{len(images)}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(1, degree + 1)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(1, degree + 1))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatch(f"degrees {self.degree} and {other.degree}")
        mine = self.images
        return Permutation(tuple(mine[j - 1] for j in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images, start=1):
            inv[v - 1] = i
        return Permutation(tuple(inv))

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(k)):
            result = result * base
        return result

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.images, start=1) if v == i)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        from math import lcm

        return lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Read disjoint-cycle notation such as ``"(1 2 3)(4 5)"`` or ``"(123)(45)"``.

    Cycles without any separator are read one digit per point, which covers
    the compact notation for degrees below ten.
    """
    if degree < 1:
        raise MalformedCycles(f"degree must be positive, got {degree}")
    leftover = _CYCLE.sub("", text)
    if leftover.strip():
        raise MalformedCycles(f"unbalanced or stray characters in {text!r}")
    cycles, used = [], set()
    for body in _CYCLE.findall(text):
        body = body.strip()
        if not body:
            continue
        if re.search(r"[\s,]", body):
            tokens = [t for t in re.split(r"[\s,]+", body) if t]
        else:
            tokens = list(body)
        try:
            points = [int(t) for t in tokens]
        except ValueError:
            raise MalformedCycles(f"non-integer point in {body!r}") from None
        for p in points:
            if p < 1 or p > degree:
                raise MalformedCycles(f"point {p} outside 1..{degree}")
            if p in used:
                raise MalformedCycles(f"point {p} repeated in {text!r}")
            used.add(p)
        cycles.append(points)
    return Permutation.from_cycles(cycles, degree)


@dataclass(frozen=True)
class FiniteGroup:
    degree: int
    elements: tuple[Permutation, ...]
    generators: tuple[Permutation, ...] = ()
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {p.images: i for i, p in enumerate(self.elements)})

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, p: Permutation) -> bool:
        return p.images in self._index

    def index(self, p: Permutation) -> int:
        return self._index[p.images]

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def is_subgroup_of(self, other: "FiniteGroup") -> bool:
        return all(p in other for p in self.elements)

    def __str__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"<{gens}> of order {self.order} on 1..{self.degree}"


def generate_group(gens: Iterable[Permutation], cap: int = DEFAULT_CAP, degree: int | None = None) -> FiniteGroup:
    """Closure of ``gens`` under composition; rejects closures larger than ``cap``."""
    gens = list(gens)
    degrees = {g.degree for g in gens}
    if degree is not None:
        degrees.add(degree)
    if len(degrees) > 1:
        raise DegreeMismatch(f"generators of mixed degrees {sorted(degrees)}")
    if not degrees:
        raise DegreeMismatch("degree required for an empty generating set")
    n = degrees.pop()
    ident = Permutation.identity(n)
    gen_images = [g.images for g in gens if not g.is_identity()]
    seen = {ident.images}
    frontier = [ident.images]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gen_images:
                y = tuple(x[j - 1] for j in s)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > cap:
                        raise CapExceeded(f"closure exceeds cap {cap}", payload=cap)
                    nxt.append(y)
        frontier = nxt
    elements = tuple(Permutation(im) for im in sorted(seen))
    return FiniteGroup(n, elements, tuple(gens))


def fixed_points(p: Permutation) -> frozenset[int]:
    return p.fixed_points()


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n == 1:
        return generate_group([], cap, degree=1)
    gens = [Permutation.from_cycles([(1, 2)], n), Permutation.from_cycles([tuple(range(1, n + 1))], n)]
    return generate_group(gens, cap)


def alternating_group(n: int, cap: int = DEFAULT_CAP) -> FiniteGroup:
    if n < 3:
        return generate_group([], cap, degree=n)
    gens = [Permutation.from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return generate_group(gens, cap)


@dataclass(frozen=True)
class ActionVerdict:
    kind: str
    fix_table: dict
    gag_witness: int | None = None
    gaf_violator: Permutation | None = None
    order: int = 0

    def to_json(self) -> dict:
        witness = self.gag_witness if self.kind == GAG else None
        if self.kind == NOT_GAF:
            witness = str(self.gaf_violator)
        return {
            "kind": self.kind,
            "order": self.order,
            "fix_table": {str(p): sorted(s) for p, s in self.fix_table.items()},
            "witness": witness,
        }


def classify_action(G: FiniteGroup) -> ActionVerdict:
    """GAG, ECCENTRIC or NOT_GAF for the natural action on 1..degree."""
    fix_table = {p: p.fixed_points() for p in G.elements}
    for p in G.elements:
        if not fix_table[p]:
            return ActionVerdict(NOT_GAF, fix_table, gaf_violator=p, order=G.order)
    common = set(range(1, G.degree + 1))
    for s in fix_table.values():
        common &= s
    if common:
        return ActionVerdict(GAG, fix_table, gag_witness=min(common), order=G.order)
    return ActionVerdict(ECCENTRIC, fix_table, order=G.order)


class _Table:
    """Multiplication table and fixed-point masks for the elements of ``G``."""

    def __init__(self, G: FiniteGroup):
        self.G = G
        n = G.degree
        arr = np.array([p.images for p in G.elements], dtype=np.int64).reshape(len(G), n) - 1
        self.size = len(G)
        self.ident = G.index(G.identity())
        if n ** n < 2 ** 62:
            weights = n ** np.arange(n, dtype=np.int64)
            keys = arr @ weights
            order = np.argsort(keys)
            sorted_keys = keys[order]
            table = np.empty((self.size, self.size), dtype=np.int32)
            for i in range(self.size):
                comp = arr[i][arr]
                table[i] = order[np.searchsorted(sorted_keys, comp @ weights)]
        else:
            table = np.array(
                [[G.index(a * b) for b in G.elements] for a in G.elements], dtype=np.int32
            ).reshape(self.size, self.size)
        self.table = table
        self.inv = np.argmax(table == self.ident, axis=1)
        self.has_fix = np.array([bool(p.fixed_points()) for p in G.elements])
        self.fix_sets = [p.fixed_points() for p in G.elements]

    def cyclic_reps(self, only_with_fix: bool = False) -> list[int]:
        """One generator for every cyclic subgroup, the smallest index in it."""
        seen, reps = set(), []
        for i in range(self.size):
            if only_with_fix and not self.has_fix[i]:
                continue
            members, x = [], self.ident
            while True:
                x = self.table[x, i]
                members.append(int(x))
                if x == self.ident:
                    break
            key = frozenset(members)
            if key in seen:
                continue
            seen.add(key)
            reps.append(i)
        return reps

    def extend(self, mask: np.ndarray, gens: list[int], new: int, gaf_only: bool):
        """Closure of the subgroup ``mask`` (generated by ``gens``) with ``new`` added.

        Walks right cosets ``Hx``; returns None when ``gaf_only`` and an element
        without fixed points shows up.
        """
        h_idx = np.flatnonzero(mask)
        all_gens = gens + [new]
        K = mask.copy()
        queue = [self.ident]
        while queue:
            x = queue.pop()
            for s in all_gens:
                y = self.table[x, s]
                if K[y]:
                    continue
                coset = self.table[h_idx, y]
                if gaf_only and not self.has_fix[coset].all():
                    return None
                K[coset] = True
                queue.append(int(y))
        return K

    def canonical(self, mask: np.ndarray, gens: list[int]):
        """Conjugate of a subgroup whose sorted element list is smallest."""
        idx = np.flatnonzero(mask)
        conj = self.table[self.table[:, idx], self.inv[:, None]]
        conj.sort(axis=1)
        best = np.lexsort(conj.T[::-1])[0]
        K = np.zeros(self.size, dtype=bool)
        K[conj[best]] = True
        moved = [int(self.table[self.table[best, s], self.inv[best]]) for s in gens]
        return K, moved

    def common_fixed(self, mask: np.ndarray) -> set[int]:
        common = set(range(1, self.G.degree + 1))
        for i in np.flatnonzero(mask):
            common &= self.fix_sets[i]
            if not common:
                break
        return common

    def to_group(self, mask: np.ndarray, gens: list[int]) -> FiniteGroup:
        elems = tuple(self.G.elements[i] for i in np.flatnonzero(mask))
        return FiniteGroup(self.G.degree, elems, tuple(self.G.elements[g] for g in gens))


def _search(G: FiniteGroup, cap: int, gaf_only: bool, stop_at_first_eccentric: bool, up_to_conjugacy: bool = False):
    if G.order > cap:
        raise CapExceeded(f"group order {G.order} exceeds cap {cap}", payload=cap)
    tab = _Table(G)
    reps = tab.cyclic_reps(only_with_fix=gaf_only)
    trivial = np.zeros(tab.size, dtype=bool)
    trivial[tab.ident] = True
    # ``pending`` holds raw closures; they are put in canonical form only when
    # popped, so classes above the first eccentric order are never canonicalised.
    pending = {trivial.tobytes(): (trivial, [])}
    found = {}
    heap = [(1, (tab.ident,), trivial.tobytes())]
    eccentric = []
    ecc_order = None
    while heap:
        order, _, raw = heapq.heappop(heap)
        if stop_at_first_eccentric and ecc_order is not None and order > ecc_order:
            break
        mask, gens = pending.pop(raw)
        if up_to_conjugacy:
            mask, gens = tab.canonical(mask, gens)
        key = mask.tobytes()
        if key in found:
            continue
        found[key] = (mask, gens)
        if gaf_only and not tab.common_fixed(mask):
            eccentric.append((order, tuple(np.flatnonzero(mask)), key))
            if ecc_order is None:
                ecc_order = order
        for c in reps:
            if mask[c]:
                continue
            K = tab.extend(mask, gens, c, gaf_only)
            if K is None:
                continue
            kkey = K.tobytes()
            if kkey in found or kkey in pending:
                continue
            pending[kkey] = (K, gens + [c])
            heapq.heappush(heap, (int(K.sum()), tuple(np.flatnonzero(K)), kkey))
    return tab, found, sorted(eccentric)


def enumerate_subgroups(G: FiniteGroup, cap: int = DEFAULT_CAP) -> list[FiniteGroup]:
    """Every subgroup exactly once, ordered by (order, sorted element list)."""
    tab, found, _ = _search(G, cap, gaf_only=False, stop_at_first_eccentric=False)
    items = sorted(found.values(), key=lambda mg: (int(mg[0].sum()), tuple(np.flatnonzero(mg[0]))))
    return [tab.to_group(m, g) for m, g in items]


@dataclass(frozen=True)
class FixatingResult:
    fixating: bool
    witness: FiniteGroup | None = None
    witnesses: tuple[FiniteGroup, ...] = ()

    def __bool__(self) -> bool:
        return self.fixating


def is_fixating(G: FiniteGroup, cap: int = DEFAULT_CAP, all_witnesses: bool = False) -> FixatingResult:
    """Decide whether ``G`` has no eccentric subgroup.

    Only subgroups in which every element fixes a point are explored: any
    subgroup of such a group has the same property, so growing them one cyclic
    subgroup at a time still reaches every one. Eccentricity is invariant under
    conjugation, so each conjugacy class is kept once, through its member with
    the smallest sorted element list. Classes are expanded in increasing order,
    which makes the first eccentric order found the smallest. The witness is
    the eccentric subgroup of smallest order whose sorted element list comes
    first; ``all_witnesses`` lists one member per eccentric conjugacy class.
    """
    tab, found, eccentric = _search(
        G, cap, gaf_only=True, stop_at_first_eccentric=not all_witnesses, up_to_conjugacy=True
    )
    if not eccentric:
        return FixatingResult(True)
    groups = tuple(tab.to_group(*found[key]) for _, _, key in eccentric)
    return FixatingResult(False, groups[0], groups if all_witnesses else groups[:1])


@dataclass(frozen=True)
class InducedAction:
    """Action of G on R x Y from a transversal R of the stabilizer H of a point.

    Y is the full domain 1..n on which H acts; the pair (r_i, y) is encoded as
    ``(i - 1) * n + y`` with i the 1-based position of r_i in ``representatives``.
    """

    base_group: FiniteGroup
    stabilized_point: int
    representatives: tuple[Permutation, ...]
    group: FiniteGroup

    @property
    def product_domain(self) -> list[tuple[int, int]]:
        n = self.base_group.degree
        return [(i, y) for i in range(1, len(self.representatives) + 1) for y in range(1, n + 1)]

    def encode(self, rep_index: int, y: int) -> int:
        return (rep_index - 1) * self.base_group.degree + y

    def decode(self, point: int) -> tuple[int, int]:
        n = self.base_group.degree
        return (point - 1) // n + 1, (point - 1) % n + 1

    def induce(self, g: Permutation) -> Permutation:
        return _induce(g, self.stabilized_point, self.representatives)

    def fixed_pairs(self, g: Permutation) -> set[tuple[int, int]]:
        return {self.decode(p) for p in self.induce(g).fixed_points()}


def _induce(g: Permutation, point: int, reps: Sequence[Permutation]) -> Permutation:
    n = g.degree
    by_image = {r(point): i for i, r in enumerate(reps)}
    images = []
    for r in reps:
        j = by_image[g(r(point))]
        h = reps[j].inverse() * g * r
        images.extend(j * n + h(y) for y in range(1, n + 1))
    return Permutation(tuple(images))


def induce_action(G: FiniteGroup, stabilized_point: int, reps: Sequence[Permutation], cap: int = DEFAULT_CAP) -> InducedAction:
    """g(r, y) = (r', h(y)) where g r = r' h with h fixing ``stabilized_point``."""
    reps = tuple(reps)
    orbit = {g(stabilized_point) for g in G.elements}
    images = [r(stabilized_point) for r in reps]
    if any(r not in G for r in reps) or len(set(images)) != len(images) or set(images) != orbit:
        raise NotATransversal("representatives must hit each coset of the stabilizer exactly once")
    gens = [_induce(g, stabilized_point, reps) for g in (G.generators or G.elements)]
    group = generate_group(gens, cap, degree=len(reps) * G.degree)
    return InducedAction(G, stabilized_point, reps, group)


# ------------------------------------------- explicit eccentric subgroups


def _tail_cycle(start: int, n: int) -> tuple[int, ...]:
    return tuple(range(start, n + 1))


def symmetric_witness(n: int) -> FiniteGroup:
    """An eccentric subgroup of S_n for n >= 5.

    n = 5: <(123), (12)(45)>, order 6.
    n = 6: <(12)(34), (12)(56)>, order 4.
    n >= 7: <(123)(6..n), (12)(45)(6..n)>.
    """
    if n < 5:
        raise ValueError("S_n is fixating for n <= 4")
    if n == 5:
        cycles_f, cycles_g = [(1, 2, 3)], [(1, 2), (4, 5)]
    elif n == 6:
        cycles_f, cycles_g = [(1, 2), (3, 4)], [(1, 2), (5, 6)]
    else:
        tail = _tail_cycle(6, n)
        cycles_f, cycles_g = [(1, 2, 3), tail], [(1, 2), (4, 5), tail]
    f = Permutation.from_cycles(cycles_f, n)
    g = Permutation.from_cycles(cycles_g, n)
    return generate_group([f, g], degree=n)


def alternating_witness(n: int) -> FiniteGroup:
    """An eccentric subgroup of A_n for n >= 5.

    n = 5, 6 and even n >= 8 reuse ``symmetric_witness``; n = 7 uses the
    order-12 group <(123)(567), (12)(34)>; odd n >= 9 uses
    <(12)(34)(7..n), (12)(56)(7..n)>.
    """
    if n < 5:
        raise ValueError("A_n is fixating for n <= 4")
    if n == 7:
        f = Permutation.from_cycles([(1, 2, 3), (5, 6, 7)], 7)
        g = Permutation.from_cycles([(1, 2), (3, 4)], 7)
        return generate_group([f, g], degree=7)
    if n in (5, 6) or n % 2 == 0:
        return symmetric_witness(n)
    tail = _tail_cycle(7, n)
    f = Permutation.from_cycles([(1, 2), (3, 4), tail], n)
    g = Permutation.from_cycles([(1, 2), (5, 6), tail], n)
    return generate_group([f, g], degree=n)


def is_even(p: Permutation) -> bool:
    return sum(len(c) - 1 for c in p.cycles()) % 2 == 0

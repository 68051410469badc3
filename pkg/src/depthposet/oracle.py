"""Brute-force ground truth: every shallow order, their intersection, random instances."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

from .cancellation import cancel, shallow_pairs
from .complex import Cell, Filter, LefschetzComplex, check_filter, validate_complex
from .depth import DepthPoset, build_depth_poset, make_poset
from .matrix import Pairing, build_matrix, standard_reduction

DEFAULT_CAP = 100_000

Order = tuple[tuple[int, int], ...]


class CapExceeded(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} shallow orders exceed the cap of {cap}")
        self.count = count
        self.cap = cap


def pairing_of(complex: LefschetzComplex, filter: Filter) -> Pairing:
    return standard_reduction(build_matrix(complex, filter))


def enumerate_shallow_orders(
    complex: LefschetzComplex, filter: Filter, cap: int = DEFAULT_CAP
) -> list[Order]:
    """All shallow orders, as sequences of (birth, death) cell ids of ``complex``.

    Quotients are memoized on the set of canceled pairs, which determines
    them. Raises CapExceeded instead of truncating.
    """
    states: dict[frozenset, tuple[LefschetzComplex, Filter, list[tuple[int, int]]]] = {}
    counts: dict[frozenset, int] = {}

    def expand(key: frozenset, cx: LefschetzComplex, f: Filter) -> None:
        children = sorted((cx.origin[s], cx.origin[t]) for s, t in shallow_pairs(cx, f))
        states[key] = (cx, f, children)

    def count(key: frozenset) -> int:
        if key in counts:
            return counts[key]
        cx, f, children = states[key]
        if not children:
            counts[key] = 1
            return 1
        total = 0
        for s, t in children:
            child = key | {(s, t)}
            if child not in states:
                expand(child, *cancel(cx, f, cx.local_id(s), cx.local_id(t)))
            total += count(child)
            if total > cap:
                break
        counts[key] = total
        return total

    root = frozenset()
    expand(root, complex, filter)
    total = count(root)
    if total > cap:
        raise CapExceeded(total, cap)

    local = complex.local_id
    out: list[Order] = []
    path: list[tuple[int, int]] = []

    def walk(key: frozenset) -> None:
        children = states[key][2]
        if not children:
            out.append(tuple((local(s), local(t)) for s, t in path))
            return
        for pair in children:
            path.append(pair)
            walk(key | {pair})
            path.pop()

    walk(root)
    return out


def brute_depth_poset(
    complex: LefschetzComplex, filter: Filter, cap: int = DEFAULT_CAP
) -> DepthPoset:
    """Pairs related iff one precedes the other in every shallow order."""
    pairing = pairing_of(complex, filter)
    orders = enumerate_shallow_orders(complex, filter, cap)
    keys = [p.cells for p in pairing.pairs]
    relations = set()
    for a in keys:
        for b in keys:
            if a != b and all(o.index(a) < o.index(b) for o in orders):
                relations.add((a, b))
    return make_poset(pairing.pairs, relations, filter)


def random_filtered_complex(
    seed: int, n_vertices: int, dim: int, density: float
) -> tuple[LefschetzComplex, Filter]:
    """Random flag complex truncated at ``dim`` with a random injective monotone filter.

    Edges appear independently with probability ``density``. Values are sorted
    uniform draws assigned along a random linear extension of
    the face relation, so faces always precede cofaces.
    """
    if n_vertices < 1:
        raise ValueError("n_vertices must be positive")
    if dim < 0:
        raise ValueError("dim must be non-negative")
    if not 0.0 < density <= 1.0:
        raise ValueError("density must lie in (0, 1]")
    rng = random.Random(seed)
    edges = {e for e in combinations(range(n_vertices), 2) if rng.random() < density}
    simplices: list[tuple[int, ...]] = [(v,) for v in range(n_vertices)]
    layer = simplices
    for k in range(1, dim + 1):
        nxt = []
        for s in layer:
            for v in range(s[-1] + 1, n_vertices):
                if all((u, v) in edges for u in s):
                    nxt.append(s + (v,))
        simplices.extend(nxt)
        layer = nxt

    index = {s: i for i, s in enumerate(simplices)}
    cells = tuple(Cell(i, len(s) - 1, ",".join(map(str, s))) for i, s in enumerate(simplices))
    incidence = frozenset(
        (index[s[:j] + s[j + 1:]], index[s])
        for s in simplices if len(s) > 1
        for j in range(len(s))
    )
    complex = LefschetzComplex(cells, incidence)

    values = sorted(rng.random() for _ in simplices)
    missing = [len(complex.facets(i)) for i in range(len(simplices))]
    ready = [i for i, m in enumerate(missing) if m == 0]
    assigned = [0.0] * len(simplices)
    for v in values:
        i = ready.pop(rng.randrange(len(ready)))
        assigned[i] = v
        for y in complex.cofacets(i):
            missing[y] -= 1
            if missing[y] == 0:
                ready.append(y)
    return complex, Filter(tuple(assigned))


@dataclass(frozen=True)
class Instance:
    seed: int
    complex: LefschetzComplex
    filter: Filter
    n_pairs: int


def random_instance(
    seed: int,
    max_bd: int = 6,
    max_dim: int = 2,
    min_dim: int = 1,
    lefschetz: float = 0.3,
    min_bd: int = 2,
) -> Instance:
    """Seeded instance with between ``min_bd`` and ``max_bd`` birth-death pairs.

    With probability ``lefschetz`` one random incident pair is canceled first,
    giving a non-simplicial Lefschetz complex, provided the restricted filter
    stays monotone.
    """
    rng = random.Random(seed)
    while True:
        n = rng.randint(3, 7)
        d = rng.randint(min_dim, max_dim)
        density = rng.uniform(0.3, 1.0)
        cx, f = random_filtered_complex(rng.getrandbits(32), n, d, density)
        if cx.incidence and rng.random() < lefschetz:
            s, t = rng.choice(sorted(cx.incidence))
            qcx, qf = cancel(cx, f, s, t)
            if not check_filter(qcx, qf):
                cx, f = LefschetzComplex(qcx.cells, qcx.incidence), qf
        n_pairs = len(pairing_of(cx, f).pairs)
        if min(min_bd, max_bd) <= n_pairs <= max_bd:
            return Instance(seed, cx, f, n_pairs)


@dataclass(frozen=True)
class SweepResult:
    seed: int
    n_pairs: int
    ok: bool
    detail: str = ""


def check_instance(seed: int, max_bd: int = 6, cap: int = DEFAULT_CAP) -> SweepResult:
    inst = random_instance(seed, max_bd)
    problems = validate_complex(inst.complex) + check_filter(inst.complex, inst.filter)
    if problems:
        return SweepResult(seed, inst.n_pairs, False, "; ".join(problems))
    fast = build_depth_poset(inst.complex, inst.filter)
    slow = brute_depth_poset(inst.complex, inst.filter, cap)
    if fast.relations() != slow.relations():
        extra = sorted(fast.relations() - slow.relations())
        lost = sorted(slow.relations() - fast.relations())
        return SweepResult(seed, inst.n_pairs, False, f"extra={extra} missing={lost}")
    return SweepResult(seed, inst.n_pairs, True)


def verify_sweep(
    n_seeds: int, max_bd: int = 6, cap: int = DEFAULT_CAP, start: int = 0, workers: Optional[int] = None
) -> list[SweepResult]:
    """Compare the book-keeping poset with the brute-force poset on seeded instances."""
    seeds = range(start, start + n_seeds)
    if workers and workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(check_instance, seeds, [max_bd] * n_seeds, [cap] * n_seeds))
    return [check_instance(s, max_bd, cap) for s in seeds]

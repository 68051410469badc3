"""Depth poset of birth-death pairs via two book-keeping matrix reductions.

The column pass cancels pivots bottom row first (latest birth first) and
records which death columns received additions; the row pass cancels pivots
leftmost column first (earliest death first) and records which birth rows
received additions. The transitive closure of both books is the depth poset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import networkx as nx

from . import _bits
from .complex import Filter, LefschetzComplex
from .matrix import BirthDeathPair, OrderedBoundaryMatrix, Pairing, build_matrix

StepHook = Callable[[int, BirthDeathPair, OrderedBoundaryMatrix], None]


@dataclass(frozen=True)
class BookKeeping:
    b_prime: frozenset[tuple[int, int]]
    b_double_prime: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class DepthPoset:
    """Strict partial order on birth-death pairs.

    ``closure`` holds index pairs ``(i, j)`` meaning ``elements[i]`` must be
    canceled before ``elements[j]``.
    """

    elements: tuple[BirthDeathPair, ...]
    closure: frozenset[tuple[int, int]]
    hasse: frozenset[tuple[int, int]] = field(init=False, compare=False)

    def __post_init__(self) -> None:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from(self.closure)
        object.__setattr__(self, "hasse", frozenset(nx.transitive_reduction(g).edges()))

    def __len__(self) -> int:
        return len(self.elements)

    def index(self) -> dict[tuple[int, int], int]:
        return {p.cells: i for i, p in enumerate(self.elements)}

    def relations(self) -> set[tuple[tuple[int, int], tuple[int, int]]]:
        """Closure as pairs of (birth, death) cell-id tuples."""
        return {(self.elements[i].cells, self.elements[j].cells) for i, j in self.closure}

    def hasse_relations(self) -> set[tuple[tuple[int, int], tuple[int, int]]]:
        return {(self.elements[i].cells, self.elements[j].cells) for i, j in self.hasse}

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.elements)))
        g.add_edges_from(self.closure)
        return g


def make_poset(
    elements: Iterable[BirthDeathPair],
    relations: Iterable[tuple[tuple[int, int], tuple[int, int]]],
    filter: Filter,
) -> DepthPoset:
    """Close ``relations`` (given on (birth, death) tuples) transitively.

    Elements are stored by increasing birth value.
    """
    elems = tuple(sorted(elements, key=lambda p: (filter[p.birth], p.birth)))
    index = {p.cells: i for i, p in enumerate(elems)}
    g = nx.DiGraph()
    g.add_nodes_from(range(len(elems)))
    g.add_edges_from((index[a], index[b]) for a, b in relations)
    if not nx.is_directed_acyclic_graph(g):
        raise RuntimeError("book-keeping relations contain a cycle")
    closure = nx.transitive_closure_dag(g)
    return DepthPoset(elems, frozenset(closure.edges()))


def reduce_alpha(
    matrix: OrderedBoundaryMatrix, on_step: Optional[StepHook] = None
) -> tuple[list[BirthDeathPair], frozenset[tuple[int, int]]]:
    """Bottom-to-top column reduction with clearing.

    Returns the pivots in the order they were canceled (strictly decreasing
    birth value) and the book of (pivot death cell, receiving column cell).
    """
    m = matrix.copy()
    order, book = [], set()
    s = m.size - 1
    while True:
        while s >= 0 and not m.rows[s]:
            s -= 1
        if s < 0:
            break
        t = _bits.lowest_bit(m.rows[s])
        pair = BirthDeathPair(m.order[s], m.order[t], m.dims[s], m.values[t] - m.values[s])
        order.append(pair)
        for y in _bits.iter_bits(m.rows[s] & ~(1 << t)):
            m.add_column(t, y)
            book.add((m.order[t], m.order[y]))
        m.delete(s)
        m.delete(t)
        if on_step is not None:
            on_step(len(order), pair, m)
    return order, frozenset(book)


def reduce_omega(
    matrix: OrderedBoundaryMatrix, on_step: Optional[StepHook] = None
) -> tuple[list[BirthDeathPair], frozenset[tuple[int, int]]]:
    """Left-to-right row reduction with clearing.

    Returns the pivots by strictly increasing death value and the book of
    (pivot birth cell, receiving row cell).
    """
    m = matrix.copy()
    order, book = [], set()
    t = 0
    while True:
        while t < m.size and not m.cols[t]:
            t += 1
        if t >= m.size:
            break
        s = _bits.highest_bit(m.cols[t])
        pair = BirthDeathPair(m.order[s], m.order[t], m.dims[s], m.values[t] - m.values[s])
        order.append(pair)
        for x in _bits.iter_bits(m.cols[t] & ~(1 << s)):
            m.add_row(s, x)
            book.add((m.order[s], m.order[x]))
        m.delete(s)
        m.delete(t)
        if on_step is not None:
            on_step(len(order), pair, m)
    return order, frozenset(book)


def book_relations(
    pairs: Iterable[BirthDeathPair], books: BookKeeping
) -> set[tuple[tuple[int, int], tuple[int, int]]]:
    """Translate book entries into relations between birth-death pairs.

    Entries whose receiving cell is not a death (resp. birth) cell of some
    pair carry no relation and are dropped.
    """
    pairs = list(pairs)
    by_death = {p.death: p for p in pairs}
    by_birth = {p.birth: p for p in pairs}
    rel = set()
    for t, y in books.b_prime:
        if t not in by_death:
            raise RuntimeError(f"column book entry starts at non-death cell {t}")
        if y in by_death:
            rel.add((by_death[t].cells, by_death[y].cells))
    for s, x in books.b_double_prime:
        if s not in by_birth:
            raise RuntimeError(f"row book entry starts at non-birth cell {s}")
        if x in by_birth:
            rel.add((by_birth[s].cells, by_birth[x].cells))
    return rel


def build_depth_poset(complex: LefschetzComplex, filter: Filter) -> DepthPoset:
    matrix = build_matrix(complex, filter)
    alpha, b_prime = reduce_alpha(matrix)
    omega, b_double_prime = reduce_omega(matrix)
    if {p.cells for p in alpha} != {p.cells for p in omega}:
        raise RuntimeError("column and row passes disagree on the pairing")
    books = BookKeeping(b_prime, b_double_prime)
    return make_poset(alpha, book_relations(alpha, books), filter)


def order_pi(pairing: Pairing | Iterable[BirthDeathPair], filter: Filter) -> list[BirthDeathPair]:
    """Pairs by persistence; ties by birth value, then birth id."""
    pairs = pairing.pairs if isinstance(pairing, Pairing) else pairing
    return sorted(pairs, key=lambda p: (filter[p.death] - filter[p.birth], filter[p.birth], p.birth))


def _key(p) -> tuple[int, int]:
    if isinstance(p, BirthDeathPair):
        return p.cells
    s, t = p
    return (int(s), int(t))


def is_linear_extension(poset: DepthPoset, order: Sequence) -> bool:
    index = poset.index()
    keys = [_key(p) for p in order]
    if sorted(keys) != sorted(index):
        raise ValueError("order is not a permutation of the poset elements")
    rank = {index[k]: r for r, k in enumerate(keys)}
    return all(rank[i] < rank[j] for i, j in poset.closure)


def split_by_dimension(poset: DepthPoset) -> list[DepthPoset]:
    """One sub-poset per birth dimension p = 0..max."""
    if not poset.elements:
        return []
    top = max(p.dim for p in poset.elements)
    out = []
    for d in range(top + 1):
        idx = [i for i, p in enumerate(poset.elements) if p.dim == d]
        local = {old: new for new, old in enumerate(idx)}
        closure = frozenset(
            (local[i], local[j]) for i, j in poset.closure if i in local and j in local
        )
        out.append(DepthPoset(tuple(poset.elements[i] for i in idx), closure))
    return out


def poset_violations(poset: DepthPoset, filter: Filter) -> list[str]:
    """Strict-order, nesting and same-dimension checks on every relation."""
    out = []
    closure = poset.closure
    for i, j in closure:
        a, b = poset.elements[i], poset.elements[j]
        if i == j:
            out.append(f"reflexive at {a.cells}")
        if (j, i) in closure:
            out.append(f"symmetric pair {a.cells}, {b.cells}")
        if not filter[b.birth] < filter[a.birth] < filter[a.death] < filter[b.death]:
            out.append(f"not nested: {a.cells} before {b.cells}")
        if a.dim != b.dim:
            out.append(f"crosses dimensions: {a.cells} before {b.cells}")
        for k in range(len(poset.elements)):
            if (j, k) in closure and (i, k) not in closure:
                out.append(f"not transitive at {a.cells}, {b.cells}")
                break
    return out

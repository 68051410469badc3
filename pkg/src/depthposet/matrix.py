"""Ordered GF(2) boundary matrix, minor ranks and the classic persistence reduction.

Positions index rows and columns in increasing filter order. A column is an
int whose bit ``i`` is the entry in row ``i``; rows mirror columns so that
both facet and cofacet queries cost one word-parallel operation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import _bits
from .complex import Filter, LefschetzComplex


@dataclass(frozen=True)
class BirthDeathPair:
    birth: int
    death: int
    dim: int
    persistence: float

    @property
    def cells(self) -> tuple[int, int]:
        return (self.birth, self.death)


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[BirthDeathPair, ...]
    essential: frozenset[int]

    def cell_pairs(self) -> set[tuple[int, int]]:
        return {p.cells for p in self.pairs}

    @property
    def births(self) -> set[int]:
        return {p.birth for p in self.pairs} | set(self.essential)

    @property
    def deaths(self) -> set[int]:
        return {p.death for p in self.pairs}

    def by_death(self) -> dict[int, BirthDeathPair]:
        return {p.death: p for p in self.pairs}

    def by_birth(self) -> dict[int, BirthDeathPair]:
        return {p.birth: p for p in self.pairs}


@dataclass
class OrderedBoundaryMatrix:
    """Boundary matrix with rows and columns sorted by filter value.

    Deleted positions are tombstoned: their row and column are zeroed and
    their bit cleared from ``alive``, but positions of other cells never move.
    """

    order: tuple[int, ...]
    dims: tuple[int, ...]
    values: tuple[float, ...]
    names: tuple[str, ...]
    cols: list[int]
    rows: list[int]
    alive: int = field(default=0)

    @property
    def size(self) -> int:
        return len(self.order)

    def __len__(self) -> int:
        return len(self.order)

    def position_of(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.order)}

    def copy(self) -> "OrderedBoundaryMatrix":
        return OrderedBoundaryMatrix(
            self.order, self.dims, self.values, self.names, list(self.cols), list(self.rows), self.alive
        )

    def entry(self, i: int, j: int) -> int:
        return (self.cols[j] >> i) & 1

    def is_zero(self) -> bool:
        return not any(self.cols)

    def _check(self, *positions: int) -> None:
        for p in positions:
            if not 0 <= p < self.size:
                raise IndexError(f"position {p} out of range for a {self.size}x{self.size} matrix")

    def add_column(self, src: int, dst: int) -> None:
        """Column ``dst`` += column ``src`` over GF(2)."""
        self._check(src, dst)
        if src == dst:
            raise ValueError("cannot add a column to itself")
        col = self.cols[src]
        self.cols[dst] ^= col
        bit = 1 << dst
        for i in _bits.iter_bits(col):
            self.rows[i] ^= bit

    def add_row(self, src: int, dst: int) -> None:
        """Row ``dst`` += row ``src`` over GF(2)."""
        self._check(src, dst)
        if src == dst:
            raise ValueError("cannot add a row to itself")
        row = self.rows[src]
        self.rows[dst] ^= row
        bit = 1 << dst
        for j in _bits.iter_bits(row):
            self.cols[j] ^= bit

    def delete(self, p: int) -> None:
        """Tombstone position ``p``: clear its row and column."""
        self._check(p)
        mask = ~(1 << p)
        for i in _bits.iter_bits(self.cols[p]):
            self.rows[i] &= mask
        for j in _bits.iter_bits(self.rows[p]):
            self.cols[j] &= mask
        self.cols[p] = 0
        self.rows[p] = 0
        self.alive &= mask

    def boundary(self, chain: int) -> int:
        """Boundary of a chain given as a bit set over positions."""
        out = 0
        for j in _bits.iter_bits(chain):
            out ^= self.cols[j]
        return out

    def cells_of(self, bits: int) -> list[int]:
        return [self.order[i] for i in _bits.iter_bits(bits)]

    def entries(self) -> set[tuple[int, int]]:
        """Non-zero entries as (facet cell id, cofacet cell id)."""
        return {
            (self.order[i], self.order[j])
            for j, col in enumerate(self.cols)
            for i in _bits.iter_bits(col)
        }

    def mirror_consistent(self) -> bool:
        n = self.size
        rebuilt = [0] * n
        for j, col in enumerate(self.cols):
            for i in _bits.iter_bits(col):
                rebuilt[i] |= 1 << j
        return rebuilt == self.rows

    def dump_ascii(self) -> str:
        lines = []
        for i in range(self.size):
            row = " ".join("1" if self.entry(i, j) else "." for j in range(self.size))
            lines.append(f"{i:>4} {self.names[i]:>8} {self.values[i]!r:>12} | {row}")
        return "\n".join(lines)

    def dump_coo(self) -> str:
        lines = ["row,col,row_cell,col_cell,row_value,col_value"]
        for j, col in enumerate(self.cols):
            for i in _bits.iter_bits(col):
                lines.append(
                    f"{i},{j},{self.names[i]},{self.names[j]},{self.values[i]!r},{self.values[j]!r}"
                )
        return "\n".join(lines)


def build_matrix(complex: LefschetzComplex, filter: Filter) -> OrderedBoundaryMatrix:
    order = tuple(filter.order())
    pos = {c: i for i, c in enumerate(order)}
    n = len(order)
    cols = [0] * n
    rows = [0] * n
    for x, y in complex.incidence:
        i, j = pos[x], pos[y]
        cols[j] |= 1 << i
        rows[i] |= 1 << j
    return OrderedBoundaryMatrix(
        order=order,
        dims=tuple(complex.cells[c].dim for c in order),
        values=tuple(filter[c] for c in order),
        names=tuple(complex.name(c) for c in order),
        cols=cols,
        rows=rows,
        alive=(1 << n) - 1,
    )


def minor_rank(matrix: OrderedBoundaryMatrix, s: int, t: int) -> int:
    """Rank of the lower-left minor: rows at positions >= s, columns <= t.

    Out-of-range arguments denote empty minors (rank 0).
    """
    if s >= matrix.size or t < 0:
        return 0
    s = max(s, 0)
    t = min(t, matrix.size - 1)
    return _bits.rank(matrix.cols[j] >> s for j in range(t + 1))


def rank_sum(matrix: OrderedBoundaryMatrix, s: int, t: int) -> int:
    """r(s,t) - r(s,t-1) - r(s+1,t) + r(s+1,t-1)."""
    return (
        minor_rank(matrix, s, t)
        - minor_rank(matrix, s, t - 1)
        - minor_rank(matrix, s + 1, t)
        + minor_rank(matrix, s + 1, t - 1)
    )


def is_birth_death_by_ranks(matrix: OrderedBoundaryMatrix, s: int, t: int) -> bool:
    return rank_sum(matrix, s, t) > 0


def _pair(matrix: OrderedBoundaryMatrix, i: int, j: int) -> BirthDeathPair:
    return BirthDeathPair(
        matrix.order[i], matrix.order[j], matrix.dims[i], matrix.values[j] - matrix.values[i]
    )


def standard_reduction(matrix: OrderedBoundaryMatrix) -> Pairing:
    """Left-to-right column reduction resolving lowest-one collisions."""
    cols = list(matrix.cols)
    low_owner: dict[int, int] = {}
    pairs = []
    for j in range(matrix.size):
        col = cols[j]
        while col:
            low = col.bit_length() - 1
            k = low_owner.get(low)
            if k is None:
                break
            col ^= cols[k]
        cols[j] = col
        if col:
            low = col.bit_length() - 1
            low_owner[low] = j
            pairs.append(_pair(matrix, low, j))
    essential = frozenset(
        matrix.order[i]
        for i in _bits.iter_bits(matrix.alive)
        if not cols[i] and i not in low_owner
    )
    return Pairing(tuple(pairs), essential)


def canonical_cycle(matrix: OrderedBoundaryMatrix, pairing: Pairing, y: int) -> int:
    """Canonical cycle of birth cell ``y`` as a bit set over positions.

    It is ``y`` plus the unique chain of earlier death cells of the same
    dimension whose boundary equals the boundary of ``y``.
    """
    pos = matrix.position_of()
    if y in pairing.deaths:
        raise ValueError(f"cell {y} gives death, not birth")
    py = pos[y]
    deaths = pairing.deaths
    support = [
        j for j in range(py)
        if matrix.order[j] in deaths and matrix.dims[j] == matrix.dims[py]
    ]
    combo: Optional[int] = _bits.solve([matrix.cols[j] for j in support], matrix.cols[py])
    if combo is None:
        raise ValueError(f"boundary of cell {y} is not a boundary of earlier death cells")
    chain = 1 << py
    for k in _bits.iter_bits(combo):
        chain |= 1 << support[k]
    return chain

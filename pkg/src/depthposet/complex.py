"""Lefschetz complexes over Z/2, filters on them, and their Betti numbers."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from . import _bits


@dataclass(frozen=True)
class Cell:
    id: int
    dim: int
    label: Optional[str] = None


@dataclass(frozen=True)
class LefschetzComplex:
    """Finite set of cells with dimensions and a Z/2 incidence relation.

    ``incidence`` holds ``(facet, cofacet)`` id pairs. ``origin`` maps each
    cell id to the id the cell had in the complex it descends from, so cells
    stay identifiable across quotients and sublevel sets.
    """

    cells: tuple[Cell, ...] = ()
    incidence: frozenset[tuple[int, int]] = frozenset()
    origin: tuple[int, ...] = None  # type: ignore[assignment]
    _facets: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _cofacets: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _local: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        cells = tuple(self.cells)
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "incidence", frozenset((int(x), int(y)) for x, y in self.incidence))
        n = len(cells)
        for i, c in enumerate(cells):
            if c.id != i:
                raise ValueError(f"cell ids must be contiguous from 0; position {i} holds id {c.id}")
            if c.dim < 0:
                raise ValueError(f"cell {self._name_of(c)} has negative dimension {c.dim}")
        origin = tuple(range(n)) if self.origin is None else tuple(self.origin)
        if len(origin) != n or len(set(origin)) != n:
            raise ValueError("origin must assign a distinct id to every cell")
        object.__setattr__(self, "origin", origin)

        facets: list[list[int]] = [[] for _ in range(n)]
        cofacets: list[list[int]] = [[] for _ in range(n)]
        for x, y in self.incidence:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"incidence ({x}, {y}) references an unknown cell")
            facets[y].append(x)
            cofacets[x].append(y)
        object.__setattr__(self, "_facets", tuple(tuple(sorted(f)) for f in facets))
        object.__setattr__(self, "_cofacets", tuple(tuple(sorted(c)) for c in cofacets))
        object.__setattr__(self, "_local", {o: i for i, o in enumerate(origin)})

    @staticmethod
    def _name_of(c: Cell) -> str:
        return c.label if c.label is not None else str(c.id)

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def dim(self) -> int:
        """Top dimension; -1 for the empty complex."""
        return max((c.dim for c in self.cells), default=-1)

    def dims(self) -> list[int]:
        return [c.dim for c in self.cells]

    def facets(self, y: int) -> tuple[int, ...]:
        return self._facets[y]

    def cofacets(self, x: int) -> tuple[int, ...]:
        return self._cofacets[x]

    def name(self, i: int) -> str:
        return self._name_of(self.cells[i])

    def local_id(self, origin_id: int) -> int:
        """Id in this complex of the cell that descends from ``origin_id``."""
        return self._local[origin_id]

    def by_label(self, label: str) -> int:
        for c in self.cells:
            if c.label == label:
                return c.id
        raise KeyError(label)

    def labels(self, ids: Iterable[int]) -> list[str]:
        return [self.name(i) for i in ids]


@dataclass(frozen=True)
class Filter:
    """Real value per cell, indexed by cell id."""

    values: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> float:
        return self.values[i]

    def order(self) -> list[int]:
        """Cell ids sorted by value."""
        return sorted(range(len(self.values)), key=self.values.__getitem__)

    def restrict(self, ids: Sequence[int]) -> "Filter":
        return Filter(tuple(self.values[i] for i in ids))


@dataclass(frozen=True, eq=False)
class BettiVector:
    """Z/2 Betti numbers for dimensions 0..dim X.

    Equality ignores trailing zeros: canceling top cells lowers dim X without
    changing homology.
    """

    ranks: tuple[int, ...]

    def _trimmed(self) -> tuple[int, ...]:
        r = list(self.ranks)
        while r and r[-1] == 0:
            r.pop()
        return tuple(r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BettiVector):
            return NotImplemented
        return self._trimmed() == other._trimmed()

    def __hash__(self) -> int:
        return hash(self._trimmed())

    def __getitem__(self, p: int) -> int:
        return self.ranks[p]

    def __len__(self) -> int:
        return len(self.ranks)


def validate_complex(complex: LefschetzComplex) -> list[str]:
    """Violations of the dimension condition and of the boundary-squared-zero condition."""
    violations = []
    for x, y in sorted(complex.incidence):
        if complex.cells[y].dim != complex.cells[x].dim + 1:
            violations.append(
                f"dimension: {complex.name(x)} (dim {complex.cells[x].dim}) < "
                f"{complex.name(y)} (dim {complex.cells[y].dim})"
            )
    for z in range(len(complex)):
        odd: dict[int, int] = {}
        for y in complex.facets(z):
            for x in complex.facets(y):
                odd[x] = odd.get(x, 0) ^ 1
        for x in sorted(x for x, v in odd.items() if v):
            violations.append(
                f"boundary: {complex.name(x)} appears an odd number of times in the boundary of the boundary of {complex.name(z)}"
            )
    return violations


def check_filter(complex: LefschetzComplex, filter: Filter) -> list[str]:
    """Violations of finiteness, injectivity and facet-monotonicity."""
    violations = []
    if len(filter) != len(complex):
        return [f"filter has {len(filter)} values for {len(complex)} cells"]
    seen: dict[float, int] = {}
    for i, v in enumerate(filter.values):
        if not math.isfinite(v):
            violations.append(f"value of {complex.name(i)} is not finite")
        elif v in seen:
            violations.append(f"tie: {complex.name(seen[v])} and {complex.name(i)} share value {v!r}")
        else:
            seen[v] = i
    for x, y in sorted(complex.incidence):
        if not filter[x] < filter[y]:
            violations.append(
                f"monotonicity: facet {complex.name(x)} ({filter[x]!r}) not below {complex.name(y)} ({filter[y]!r})"
            )
    return violations


def perturb_ties(complex: LefschetzComplex, values: Sequence[float]) -> Filter:
    """Break ties by adding k*eps within each tied group.

    eps is 2**-30 times the smallest nonzero gap between values; members of a
    group are ordered by dimension, then input order, so faces stay below cofaces.
    """
    distinct = sorted(set(values))
    gaps = [b - a for a, b in zip(distinct, distinct[1:]) if b > a]
    eps = (min(gaps) if gaps else 1.0) * 2.0**-30
    groups: dict[float, list[int]] = {}
    for i, v in enumerate(values):
        groups.setdefault(v, []).append(i)
    out = list(values)
    for v, ids in groups.items():
        ids.sort(key=lambda i: (complex.cells[i].dim, i))
        for k, i in enumerate(ids):
            out[i] = v + k * eps
    return Filter(tuple(out))


def from_simplicial(
    simplices: Iterable[Iterable[Hashable]],
    labels: Optional[Mapping[frozenset, str]] = None,
) -> LefschetzComplex:
    """Build the Lefschetz complex of a simplicial complex.

    Missing faces are added. Cells are ordered by dimension, then by sorted
    vertex tuple; a duplicate input simplex raises ValueError naming its index.
    """
    given: dict[frozenset, int] = {}
    for idx, s in enumerate(simplices):
        key = frozenset(s)
        if not key:
            raise ValueError(f"simplex {idx} is empty")
        if key in given:
            raise ValueError(f"duplicate simplex at index {idx} (first seen at {given[key]})")
        given[key] = idx
    closed: set[frozenset] = set()
    for s in given:
        verts = sorted(s, key=_sort_key)
        for k in range(1, len(verts) + 1):
            closed.update(frozenset(c) for c in combinations(verts, k))

    def key(s: frozenset):
        return (len(s), tuple(sorted((_sort_key(v) for v in s))))

    ordered = sorted(closed, key=key)
    index = {s: i for i, s in enumerate(ordered)}
    cells = []
    for i, s in enumerate(ordered):
        if labels is not None and s in labels:
            label = labels[s]
        else:
            label = ",".join(str(v) for v in sorted(s, key=_sort_key))
        cells.append(Cell(i, len(s) - 1, label))
    incidence = set()
    for s in ordered:
        if len(s) > 1:
            for v in s:
                incidence.add((index[s - {v}], index[s]))
    return LefschetzComplex(tuple(cells), frozenset(incidence))


def _sort_key(v):
    return (type(v).__name__, v)


def subcomplex(complex: LefschetzComplex, keep: Iterable[int]) -> LefschetzComplex:
    """Restriction to the cells in ``keep``, re-indexed densely in id order."""
    ids = sorted(set(keep))
    new_id = {old: new for new, old in enumerate(ids)}
    cells = tuple(Cell(new_id[i], complex.cells[i].dim, complex.cells[i].label) for i in ids)
    incidence = frozenset(
        (new_id[x], new_id[y]) for x, y in complex.incidence if x in new_id and y in new_id
    )
    return LefschetzComplex(cells, incidence, tuple(complex.origin[i] for i in ids))


def sublevel(complex: LefschetzComplex, filter: Filter, b: float) -> LefschetzComplex:
    return subcomplex(complex, (i for i in range(len(complex)) if filter[i] <= b))


def boundary_rank(complex: LefschetzComplex, p: int) -> int:
    """GF(2) rank of the boundary map from dimension p to p-1."""
    cols = []
    for y, c in enumerate(complex.cells):
        if c.dim == p:
            cols.append(_bits.from_positions(complex.facets(y)))
    return _bits.rank(cols)


def betti(complex: LefschetzComplex) -> BettiVector:
    top = complex.dim
    counts = [0] * (top + 1)
    for c in complex.cells:
        counts[c.dim] += 1
    ranks = [boundary_rank(complex, p) for p in range(top + 2)]
    return BettiVector(tuple(counts[p] - ranks[p] - ranks[p + 1] for p in range(top + 1)))

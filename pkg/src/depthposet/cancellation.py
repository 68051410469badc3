"""Shallow pairs and cancellations of facet-cofacet pairs."""
from __future__ import annotations

from typing import Iterable, NamedTuple, Union

from . import _bits
from .complex import Cell, Filter, LefschetzComplex
from .matrix import BirthDeathPair, build_matrix, standard_reduction


class ShallowPair(NamedTuple):
    birth: int
    death: int


PairLike = Union[tuple[int, int], ShallowPair, BirthDeathPair]


class NotShallowError(ValueError):
    """Raised by cancel_sequence; ``step`` counts cancellations from 1."""

    def __init__(self, step: int, pair: tuple[int, int]):
        super().__init__(f"pair {pair} is not shallow at step {step}")
        self.step = step
        self.pair = pair


def _cells(pair: PairLike) -> tuple[int, int]:
    if isinstance(pair, BirthDeathPair):
        return pair.cells
    s, t = pair
    return int(s), int(t)


def last_facet(complex: LefschetzComplex, filter: Filter, t: int) -> int | None:
    facets = complex.facets(t)
    return max(facets, key=filter.values.__getitem__) if facets else None


def first_cofacet(complex: LefschetzComplex, filter: Filter, s: int) -> int | None:
    cofacets = complex.cofacets(s)
    return min(cofacets, key=filter.values.__getitem__) if cofacets else None


def is_shallow(complex: LefschetzComplex, filter: Filter, s: int, t: int) -> bool:
    return (
        0 <= s < len(complex)
        and 0 <= t < len(complex)
        and last_facet(complex, filter, t) == s
        and first_cofacet(complex, filter, s) == t
    )


def shallow_pairs(complex: LefschetzComplex, filter: Filter) -> set[ShallowPair]:
    out = set()
    for t in range(len(complex)):
        s = last_facet(complex, filter, t)
        if s is not None and first_cofacet(complex, filter, s) == t:
            out.add(ShallowPair(s, t))
    return out


def cancel(
    complex: LefschetzComplex, filter: Filter, s: int, t: int
) -> tuple[LefschetzComplex, Filter]:
    """Remove the incident pair ``s < t`` and update incidences.

    Column ``t`` is added to every other column in row ``s`` of the ordered
    matrix, then rows and columns of ``s`` and ``t`` are dropped. The filter is
    restricted; it stays monotone when the pair is shallow but need not be in
    general.
    """
    m = build_matrix(complex, filter)
    pos = m.position_of()
    ps, pt = pos[s], pos[t]
    if not m.entry(ps, pt):
        raise ValueError(f"{complex.name(s)} is not a facet of {complex.name(t)}")
    for y in _bits.iter_bits(m.rows[ps] & ~(1 << pt)):
        m.add_column(pt, y)
    m.delete(ps)
    m.delete(pt)

    keep = [i for i in range(len(complex)) if i != s and i != t]
    new_id = {old: new for new, old in enumerate(keep)}
    cells = tuple(Cell(new_id[i], complex.cells[i].dim, complex.cells[i].label) for i in keep)
    incidence = frozenset((new_id[x], new_id[y]) for x, y in m.entries())
    quotient = LefschetzComplex(cells, incidence, tuple(complex.origin[i] for i in keep))
    return quotient, filter.restrict(keep)


def cancel_shallow(
    complex: LefschetzComplex, filter: Filter, pair: PairLike, debug: bool = False
) -> tuple[LefschetzComplex, Filter]:
    s, t = _cells(pair)
    if not is_shallow(complex, filter, s, t):
        raise ValueError(f"({complex.name(s)}, {complex.name(t)}) is not a shallow pair")
    quotient, qfilter = cancel(complex, filter, s, t)
    if debug:
        _check_shallow_cancellation(complex, filter, quotient, qfilter, (s, t))
    return quotient, qfilter


def _origin_pairs(complex: LefschetzComplex, pairs: Iterable[tuple[int, int]]) -> set[tuple[int, int]]:
    return {(complex.origin[s], complex.origin[t]) for s, t in pairs}


def _check_shallow_cancellation(complex, filter, quotient, qfilter, pair) -> None:
    before_bd = _origin_pairs(complex, standard_reduction(build_matrix(complex, filter)).cell_pairs())
    after_bd = _origin_pairs(quotient, standard_reduction(build_matrix(quotient, qfilter)).cell_pairs())
    gone = (complex.origin[pair[0]], complex.origin[pair[1]])
    if after_bd != before_bd - {gone}:
        raise RuntimeError(f"birth-death pairs changed beyond {gone}")
    before_sh = _origin_pairs(complex, shallow_pairs(complex, filter))
    after_sh = _origin_pairs(quotient, shallow_pairs(quotient, qfilter))
    if not after_sh >= before_sh - {gone}:
        raise RuntimeError(f"shallow pairs lost beyond {gone}")


def cancel_sequence(
    complex: LefschetzComplex, filter: Filter, pairs: Iterable[PairLike]
) -> tuple[LefschetzComplex, Filter]:
    """Cancel ``pairs`` in order, each of which must be shallow at its turn.

    Pairs are given by cell ids of ``complex``. Raises NotShallowError naming
    the first failing step.
    """
    current, cfilter = complex, filter
    for step, pair in enumerate(pairs, start=1):
        s, t = _cells(pair)
        try:
            ls = current.local_id(complex.origin[s])
            lt = current.local_id(complex.origin[t])
        except (KeyError, IndexError):
            raise NotShallowError(step, (s, t)) from None
        if not is_shallow(current, cfilter, ls, lt):
            raise NotShallowError(step, (s, t))
        current, cfilter = cancel(current, cfilter, ls, lt)
    return current, cfilter


def is_shallow_order(complex: LefschetzComplex, filter: Filter, pairs: Iterable[PairLike]) -> bool:
    """True iff ``pairs`` cancels every birth-death pair, each shallow at its turn."""
    try:
        final, ffinal = cancel_sequence(complex, filter, pairs)
    except NotShallowError:
        return False
    return not standard_reduction(build_matrix(final, ffinal)).pairs

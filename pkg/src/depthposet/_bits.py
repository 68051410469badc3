"""GF(2) vectors stored as Python ints (bit ``i`` set means coordinate ``i`` is 1)."""
from __future__ import annotations

from typing import Iterable, Iterator, Optional, Sequence


def iter_bits(x: int) -> Iterator[int]:
    """Yield the set bit positions of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def iter_bits_desc(x: int) -> Iterator[int]:
    while x:
        hi = x.bit_length() - 1
        yield hi
        x ^= 1 << hi


def lowest_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def highest_bit(x: int) -> int:
    return x.bit_length() - 1


def from_positions(positions: Iterable[int]) -> int:
    x = 0
    for p in positions:
        x ^= 1 << p
    return x


def rank(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a family of bit vectors."""
    basis: dict[int, int] = {}
    r = 0
    for v in vectors:
        while v:
            hi = v.bit_length() - 1
            b = basis.get(hi)
            if b is None:
                basis[hi] = v
                r += 1
                break
            v ^= b
    return r


def solve(columns: Sequence[int], target: int) -> Optional[int]:
    """Find a subset of ``columns`` summing to ``target``.

    Returns the subset as a bit mask over column indices, or None when
    ``target`` is not in the span. The subset is unique when the columns are
    linearly independent.
    """
    basis: dict[int, tuple[int, int]] = {}
    for j, col in enumerate(columns):
        v, combo = col, 1 << j
        while v:
            hi = v.bit_length() - 1
            entry = basis.get(hi)
            if entry is None:
                basis[hi] = (v, combo)
                break
            v ^= entry[0]
            combo ^= entry[1]
    v, combo = target, 0
    while v:
        entry = basis.get(v.bit_length() - 1)
        if entry is None:
            return None
        v ^= entry[0]
        combo ^= entry[1]
    return combo
